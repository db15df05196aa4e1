#!/usr/bin/env python3
# Copyright 2026 The cmxkit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the bundled 200-line Hindi/English fixture corpus.

Sentences come from a small template grammar (Hindi SOV, English SVO) so
that word alignment has something to learn. Part of the wmt lines carry a
hand-style code-mixed rendering in informal romanization.

usage: gen_fixture_corpus.py OUT.jsonl [--seed N]
"""

import argparse
import json
import random

NUKTA = "़"

# (devanagari, informal roman, english)
SUBJECTS = [
    ("मैं", "main", "I"),
    ("हम", "hum", "we"),
    ("वह", "woh", "he"),
    ("तुम", "tum", "you"),
    ("भाई", "bhai", "brother"),
    ("दोस्त", "dost", "friend"),
    ("माँ", "maa", "mother"),
    ("पापा", "papa", "dad"),
    ("बच्चे", "bachche", "children"),
    ("लोग", "log", "people"),
]
OBJECTS = [
    ("किताब", "kitaab", "book"),
    ("खाना", "khana", "food"),
    ("पानी", "paani", "water"),
    ("फ" + NUKTA + "िल्म", "film", "movie"),
    ("गाना", "gaana", "song"),
    ("चाय", "chai", "tea"),
    ("खबर", "khabar", "news"),
    ("काम", "kaam", "work"),
    ("घर", "ghar", "home"),
    ("स्कूल", "school", "school"),
    ("मैच", "match", "match"),
    ("फ" + NUKTA + "ोन", "phone", "phone"),
]
VERBS = [
    ("पढ" + NUKTA + "ता", "padhta", "reads"),
    ("देखता", "dekhta", "watches"),
    ("पीता", "peeta", "drinks"),
    ("खाता", "khaata", "eats"),
    ("सुनता", "sunta", "hears"),
    ("चाहता", "chahta", "wants"),
    ("करता", "karta", "does"),
    ("जानता", "jaanta", "knows"),
]
ADJECTIVES = [
    ("अच्छा", "achha", "good"),
    ("नया", "naya", "new"),
    ("बड" + NUKTA + "ा", "bada", "big"),
    ("छोटा", "chhota", "small"),
    ("पुराना", "purana", "old"),
]
ADVERBS = [
    ("आज", "aaj", "today"),
    ("कल", "kal", "tomorrow"),
    ("अभी", "abhi", "now"),
    ("हमेशा", "hamesha", "always"),
]
HAI = ("है", "hai", None)
AUR = ("और", "aur", "and")
BAHUT = ("बहुत", "bahut", "very")
HANDLES = ["@rahul_07", "@priya", "@dh*v*l2410*6", "#cricket", "#GuessTheSong"]
SMILEYS = [":)", ":(", ":D", "<3"]


def clause(rng, with_adj):
    s, o, v = rng.choice(SUBJECTS), rng.choice(OBJECTS), rng.choice(VERBS)
    a = rng.choice(ADJECTIVES) if with_adj else None
    hi = [s] + ([a] if a else []) + [o, v, HAI]
    en = [s, v] + ([a] if a else []) + [o]
    return hi, en


def sentence(rng, kind):
    """Returns (hindi words, english words, social prefix, social suffix)."""
    if kind == "short":
        hi, en = clause(rng, rng.random() < 0.5)
        return hi, en, [], []
    if kind == "social":
        hi, en = clause(rng, False)
        return hi, en, [rng.choice(HANDLES)], [rng.choice(SMILEYS)]
    if kind == "medium":
        adv = rng.choice(ADVERBS)
        hi, en = clause(rng, True)
        hi = [adv, hi[0], BAHUT] + hi[1:]
        en = [adv, en[0], en[1], BAHUT] + en[2:]
        return hi, en, [], []
    adv = rng.choice(ADVERBS)
    hi1, en1 = clause(rng, True)
    hi2, en2 = clause(rng, False)
    return [adv] + hi1 + [AUR] + hi2, [adv] + en1 + [AUR] + en2, [], []


def render(words, column):
    return [w[column] for w in words if w[column] is not None]


def code_mixed(rng, hi_words):
    """Informal romanization with one object noun switched to English."""
    nouns = [i for i, w in enumerate(hi_words) if w in OBJECTS]
    pick = rng.choice(nouns) if nouns else None
    out = []
    for i, w in enumerate(hi_words):
        out.append(w[2] if i == pick else w[1])
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    ap.add_argument("--seed", type=int, default=2410)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    records = [{
        "id": "wmt-0000",
        "hi_deva": "@dh*v*l2410*6 ज" + NUKTA + "रूर भाई :)",
        "en": "@dh*v*l2410*6 sure brother :)",
        "cmx": "@dh*v*l2410*6 sure bhai :)",
        "domain": "wmt",
    }]
    kinds = ["short", "social", "medium", "long"]
    for i in range(1, 200):
        domain = "wmt" if i < 60 else "iitb"
        kind = rng.choices(kinds, weights=[3, 2, 3, 3])[0]
        hi, en, pre, post = sentence(rng, kind)
        rec = {
            "id": "%s-%04d" % (domain, i),
            "hi_deva": " ".join(pre + render(hi, 0) + post),
            "en": " ".join(pre + render(en, 2) + post),
            "domain": domain,
        }
        if domain == "wmt" and i % 2 == 0:
            rec["cmx"] = " ".join(pre + code_mixed(rng, hi) + post)
        records.append(rec)

    with open(args.out, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
