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


#include "cmx/subword.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "bpe_pairs.h"
#include "cmx/error.h"
#include "generators.h"

namespace cmx {
namespace {

using Tokens = std::vector<std::string>;

TEST(WordSymbolsTest, MarkerAndEscapes) {
  EXPECT_EQ(WordSymbols("ab"), (Tokens{"a", "b</w>"}));
  EXPECT_EQ(WordSymbols("a<"), (Tokens{"a", "\\<</w>"}));
  EXPECT_EQ(WordSymbols("\\"), (Tokens{"\\\\</w>"}));
  EXPECT_EQ(WordSymbols("भाई"), (Tokens{"भ", "ा", "ई</w>"}));
}

TEST(LearnBpeTest, FirstMergeOnTinyCorpus) {
  const MergeList m = LearnBpe({"aaab", "aab"}, 1);
  ASSERT_EQ(m.merges.size(), 1u);
  EXPECT_EQ(m.merges[0], (std::pair<std::string, std::string>{"a", "a"}));
  const Tokens enc = Encode("aaab", m);
  EXPECT_NE(std::find(enc.begin(), enc.end(), "aa"), enc.end());
}

TEST(LearnBpeTest, ZeroMergesAndDeterminism) {
  const MergeList none = LearnBpe({"aaab", "aab"}, 0);
  EXPECT_TRUE(none.merges.empty());
  EXPECT_EQ(Encode("ab", none), (Tokens{"a", "b</w>"}));
  const std::vector<std::string> corpus = {"sure bhai :)", "woh book padhta hai",
                                           "main tea peeta hoon", "sure sure bhai"};
  EXPECT_EQ(LearnBpe(corpus, 20).merges, LearnBpe(corpus, 20).merges);
  EXPECT_EQ(LearnBpe(corpus, 20, 1).merges, LearnBpe(corpus, 20, 3).merges);
}

TEST(LearnBpeTest, EmptyCorpusIsAnError) {
  EXPECT_THROW(LearnBpe({}, 5), DataError);
  EXPECT_THROW(LearnBpe({"", "  "}, 5), DataError);
}

TEST(LearnBpeTest, StopsWhenNoPairRepeats) {
  EXPECT_TRUE(LearnBpe({"ab"}, 10).merges.empty());
}

TEST(LearnBpeTest, MatchesNaiveRecountOracle) {
  for (size_t c = 0; c < 60; ++c) {
    Rng rng = gen::CaseRng(61, c);
    std::vector<std::string> lines;
    const size_t n = gen::Between(rng, 1, 12);
    for (size_t i = 0; i < n; ++i) {
      std::string line;
      const size_t words = gen::Between(rng, 1, 6);
      for (size_t w = 0; w < words; ++w) {
        if (w) line += ' ';
        const size_t len = gen::Between(rng, 1, 7);
        for (size_t k = 0; k < len; ++k) line += static_cast<char>('a' + rng.UniformIndex(4));
      }
      lines.push_back(line);
    }
    const size_t target = gen::Between(rng, 0, 30);
    EXPECT_EQ(LearnBpe(lines, target).merges, oracle::NaiveBpe(lines, target))
        << "case " << c;
  }
}

TEST(LearnBpeTest, MatchesOracleOnMixedScript) {
  for (size_t c = 0; c < 20; ++c) {
    Rng rng = gen::CaseRng(62, c);
    std::vector<std::string> lines;
    for (size_t i = 0; i < 20; ++i) lines.push_back(gen::MixedLine(rng));
    bool any_word = false;
    for (const auto& l : lines) any_word |= !SplitWhitespace(l).empty();
    if (!any_word) continue;
    EXPECT_EQ(LearnBpe(lines, 40).merges, oracle::NaiveBpe(lines, 40)) << "case " << c;
  }
}

TEST(LearnBpeVocabTest, ReachesRequestedSize) {
  std::vector<std::string> lines;
  for (int i = 0; i < 50; ++i) lines.push_back("sure bhai woh book padhta hai " + std::to_string(i));
  const MergeList m = LearnBpeVocab(lines, 40);
  EXPECT_EQ(m.Vocab().size(), 40u);
  EXPECT_EQ(m.vocab_size, 40u);
}

TEST(EncodeTest, UntrainedSplitsCodePoints) {
  EXPECT_EQ(Encode("ab", MergeList{}), (Tokens{"a", "b</w>"}));
  EXPECT_EQ(Encode("a b", MergeList{}), (Tokens{"a</w>", "b</w>"}));
  EXPECT_EQ(Encode(" a  b\t", MergeList{}),
            (Tokens{" ", "a</w>", "  ", "b</w>", "\t"}));
}

TEST(DecodeTest, Basics) {
  EXPECT_EQ(Decode({}), "");
  EXPECT_EQ(Decode({"a", "b</w>", "c</w>"}), "ab c");
  EXPECT_EQ(Decode({"\\<", "/w></w>"}), "</w>");
}

TEST(DecodeTest, MalformedSequences) {
  EXPECT_THROW(Decode({"a"}), DataError);                // open word
  EXPECT_THROW(Decode({"a</w>b"}), DataError);           // marker not at end
  EXPECT_THROW(Decode({"a\\</w>"}), DataError);          // dangling escape
  EXPECT_THROW(Decode({""}), DataError);                 // empty token
  EXPECT_THROW(Decode({" a"}), DataError);               // mixed whitespace
  EXPECT_THROW(Decode({"a", " ", "b</w>"}), DataError);  // whitespace inside a word
}

TEST(RoundTripTest, TableOneLineByteExact) {
  const std::string line = "@dh*v*l2410*6 sure bhai :)";
  const MergeList m = LearnBpe({line, "sure bhai", "bhai bhai"}, 10);
  EXPECT_EQ(Decode(Encode(line, m)), line);
}

TEST(RoundTripTest, RandomMixedLines) {
  std::vector<std::string> training;
  Rng train_rng(63);
  for (int i = 0; i < 200; ++i) training.push_back(gen::MixedLine(train_rng));
  const MergeList m = LearnBpe(training, 150);
  const BpeEncoder enc(m);
  for (size_t c = 0; c < 2000; ++c) {
    Rng rng = gen::CaseRng(64, c);
    const std::string line = gen::MixedLine(rng);
    EXPECT_EQ(Decode(enc.Encode(line)), line) << "case " << c;
  }
}

TEST(MergeListTest, TextRoundTrip) {
  const MergeList m = LearnBpe({"aaab", "aab", "bhai bhai", "a<b a<b"}, 10);
  const MergeList back = MergeList::FromText(m.MergesText(), m.VocabText());
  EXPECT_EQ(back.merges, m.merges);
  EXPECT_EQ(back.Vocab(), m.Vocab());
  EXPECT_EQ(Encode("aaab a<b", back), Encode("aaab a<b", m));
}

TEST(MergeListTest, VocabStartsWithSpecialsWithoutDuplicates) {
  const MergeList m = LearnBpe({"aaab", "aab"}, 3);
  const auto v = m.Vocab();
  ASSERT_GE(v.size(), 4u);
  EXPECT_EQ(v[0], "<pad>");
  EXPECT_EQ(v[1], "<unk>");
  std::set<std::string> uniq(v.begin(), v.end());
  EXPECT_EQ(uniq.size(), v.size());
}

}  // namespace
}  // namespace cmx
