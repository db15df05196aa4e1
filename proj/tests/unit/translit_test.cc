// Copyright 2026 The cmxkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cmx/translit.h"

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cmx/error.h"
#include "cmx/utf8.h"
#include "generators.h"

namespace cmx {
namespace {

const TranslitTable& Hunterian() {
  static const TranslitTable table =
      LoadTranslitTable(std::string(CMX_DATA_DIR) + "/translit/hunterian.json");
  return table;
}

std::string T(std::string_view s) { return TransliterateLine(s, Hunterian()); }

TEST(TransliterateLineTest, TableEntries) {
  EXPECT_EQ(T("क"), "ka");
  EXPECT_EQ(T("को"), "ko");
}

TEST(TransliterateLineTest, ConjunctAndFinalSchwa) {
  EXPECT_EQ(T("नमस्ते"), "namaste");
  EXPECT_EQ(T("कमल"), "kamal");
}

TEST(TransliterateLineTest, PassThrough) {
  EXPECT_EQ(T("hello :)"), "hello :)");
  EXPECT_EQ(T("@dh*v*l2410*6 😀"), "@dh*v*l2410*6 😀");
}

TEST(TransliterateLineTest, AnusvaraVisargaDigits) {
  EXPECT_EQ(T("हिंदी"), "hindii");
  EXPECT_EQ(T("१२"), "12");
}

TEST(TransliterateLineTest, UnmappableCodePointIsNamed) {
  try {
    T("कꣲ");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("U+A8F2"), std::string::npos) << e.what();
  }
}

TEST(TransliterateLineTest, StrayViramaIsAnError) {
  EXPECT_THROW(T("्"), DataError);
}

TEST(TransliterateLineTest, OutputHasNoDevanagariAndNoNewlines) {
  const auto triples =
      LoadCorpus(std::string(CMX_DATA_DIR) + "/fixtures/corpus_200.jsonl", {});
  for (const auto& t : triples) {
    const std::string out = T(t.hindi_deva.raw);
    EXPECT_FALSE(utf8::ContainsDevanagari(out)) << t.id;
    EXPECT_EQ(out.find('\n'), std::string::npos) << t.id;
  }
}

// Random words built from consonant + {matra | virama | nothing} aksharas.
// The expected romanization is assembled akshara by akshara from the table,
// which checks that every matra appears exactly once in order.
TEST(TransliterateLineTest, AksharaCompositionProperty) {
  const TranslitTable& table = Hunterian();
  std::vector<std::pair<char32_t, std::string>> consonants, signs;
  for (const auto& [cp, r] : table.consonants) {
    if (cp < 0x0958) consonants.emplace_back(cp, r);  // skip precomposed nukta forms
  }
  for (const auto& kv : table.vowel_signs) signs.push_back(kv);

  for (size_t c = 0; c < 500; ++c) {
    Rng rng = gen::CaseRng(21, c);
    const size_t n = gen::Between(rng, 1, 6);
    std::string word, expected;
    bool any_vowel = false;
    for (size_t k = 0; k < n; ++k) {
      const auto& [ccp, croman] = consonants[rng.UniformIndex(consonants.size())];
      utf8::Append(word, ccp);
      expected += croman;
      const size_t kind = rng.UniformIndex(3);
      const bool last = k + 1 == n;
      if (kind == 0) {
        const auto& [scp, sroman] = signs[rng.UniformIndex(signs.size())];
        utf8::Append(word, scp);
        expected += sroman;
        any_vowel = true;
      } else if (kind == 1 && !last) {
        utf8::Append(word, kVirama);
      } else if (!(last && any_vowel)) {
        expected += table.inherent_vowel;
        any_vowel = true;
      }
    }
    EXPECT_EQ(T(word), expected) << "case " << c;
  }
}

TEST(TransliterateCorpusTest, PreservesCountsAndIds) {
  const auto triples =
      LoadCorpus(std::string(CMX_DATA_DIR) + "/fixtures/corpus_200.jsonl", {});
  const auto out = TransliterateCorpus(triples, Hunterian(), 3);
  ASSERT_EQ(out.size(), triples.size());
  for (size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].id, triples[i].id);
    ASSERT_TRUE(out[i].hindi_roman.has_value());
    EXPECT_EQ(out[i].hindi_roman->size(), triples[i].hindi_deva.size()) << out[i].id;
  }
  EXPECT_EQ(out, TransliterateCorpus(triples, Hunterian(), 1));
}

TEST(TransliterateCorpusTest, LongSentenceStaysOneLine) {
  std::string line;
  for (int i = 0; i < 300; ++i) line += (i ? " " : "") + std::string("नमस्ते");
  Triple t;
  t.id = "long";
  t.hindi_deva = Sentence::FromText(line);
  const auto out = TransliterateCorpus({t}, Hunterian());
  EXPECT_EQ(out[0].hindi_roman->size(), 300u);
  EXPECT_EQ(out[0].hindi_roman->raw.find('\n'), std::string::npos);
}

TEST(TransliterateCorpusTest, ErrorNamesIdAndCodePoint) {
  Triple ok, bad;
  ok.id = "ok";
  ok.hindi_deva = Sentence::FromText("क");
  bad.id = "bad-7";
  bad.hindi_deva = Sentence::FromText("कꣲ");
  try {
    TransliterateCorpus({ok, bad, ok}, Hunterian(), 2);
    FAIL();
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("bad-7"), std::string::npos) << msg;
    EXPECT_NE(msg.find("U+A8F2"), std::string::npos) << msg;
  }
}

TEST(TranslitTableTest, ValidationRejectsBadTables) {
  EXPECT_THROW(ParseTranslitTable(R"({"consonants": {"U+0041": "a"}})"), DataError);
  EXPECT_THROW(ParseTranslitTable(R"({"consonants": {"U+0915": ""}})"), DataError);
  EXPECT_THROW(ParseTranslitTable(R"({"vowel_signs": {"U+093E": "a"}})"), DataError);
  EXPECT_THROW(ParseTranslitTable(
                   R"({"consonants": {"U+0915": "k"}, "specials": {"U+0915": "q"}})"),
               DataError);
  EXPECT_THROW(ParseTranslitTable("[1]"), DataError);
}

}  // namespace
}  // namespace cmx
