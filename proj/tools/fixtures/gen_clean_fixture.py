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
"""Writes a 1,000-pair cleaning fixture with planted filter violations.

Every pair gets a plan: a clean length pair, a boundary pair that must be
kept, or a violation of exactly one kind. The expected verdicts go to a
TSV next to the pairs (origin_id, reason), one line per dropped pair.

usage: gen_clean_fixture.py OUT.jsonl EXPECTED.tsv [--seed N]
"""

import argparse
import json
import random

WORDS = ["woh", "book", "padhta", "hai", "sure", "bhai", "tea", "main",
         "peeta", "hoon", "school", "kal", "log", "dekhta", "paani", ":)"]

# (src_len, tgt_len) cases; the first rule violated wins.
KEEP_BOUNDARY = [(2, 2), (2, 3), (10, 15), (250, 250), (200, 250), (4, 6),
                 (166, 249), (3, 2), (250, 2)]
TOO_SHORT = [(1, 1), (1, 5), (5, 1), (0, 3), (1, 300), (3, 0)]
TOO_LONG = [(251, 251), (251, 10), (100, 251), (300, 300), (200, 260)]
RATIO = [(10, 16), (2, 4), (4, 7), (100, 151), (166, 250), (20, 31)]


def sentence(rng, n):
    return " ".join(rng.choice(WORDS) for _ in range(n))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    ap.add_argument("expected")
    ap.add_argument("--seed", type=int, default=1000)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    plans = []
    for cases, reason in ((TOO_SHORT, "too_short"), (TOO_LONG, "too_long"),
                          (RATIO, "ratio")):
        for _ in range(20):
            plans.append((rng.choice(cases), reason))
    for case in KEEP_BOUNDARY:
        plans.append((case, None))
    while len(plans) < 1000:
        s = rng.randint(2, 40)
        t = rng.randint(2, int(s * 1.5))
        plans.append(((s, min(t, 250)), None))
    rng.shuffle(plans)

    with open(args.out, "w", encoding="utf-8") as out, \
            open(args.expected, "w", encoding="utf-8") as exp:
        for i, ((s, t), reason) in enumerate(plans):
            origin = f"c{i:04d}"
            out.write(json.dumps({
                "src": sentence(rng, s), "tgt": sentence(rng, t),
                "src_lang": "en", "tgt_lang": "cmx",
                "domain": "wmt" if i % 3 else "iitb", "origin_id": origin,
            }, ensure_ascii=False) + "\n")
            if reason:
                exp.write(f"{origin}\t{reason}\n")


if __name__ == "__main__":
    main()
