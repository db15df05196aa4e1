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


#include "cmx/cmxgen.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cmx/error.h"
#include "generators.h"

namespace cmx {
namespace {

Triple MakeTriple(const std::string& id, const std::string& roman,
                  const std::string& english) {
  Triple t;
  t.id = id;
  t.hindi_deva = Sentence::FromText(roman);
  t.hindi_roman = Sentence::FromText(roman);
  t.english = Sentence::FromText(english);
  t.domain = {"wmt", true};
  return t;
}

std::vector<MinimalUnit> Units(const AlignmentMatrix& m) {
  return ExtractMinimalUnits(m);
}

TEST(ReplacementTargetTest, RoundsAndFloorsAtOne) {
  EXPECT_EQ(ReplacementTarget(7, 0.15), 1u);    // 1.05
  EXPECT_EQ(ReplacementTarget(10, 0.15), 2u);   // 1.5 rounds up
  EXPECT_EQ(ReplacementTarget(20, 0.15), 3u);
  EXPECT_EQ(ReplacementTarget(3, 0.15), 1u);    // 0.45 -> 0 -> 1
  EXPECT_EQ(ReplacementTarget(100, 0.15), 15u);
}

TEST(MatrixGuardTest, StrictlyBelowHalf) {
  EXPECT_TRUE(SatisfiesMatrixGuard(7, 3));
  EXPECT_FALSE(SatisfiesMatrixGuard(7, 4));
  EXPECT_TRUE(SatisfiesMatrixGuard(8, 3));
  EXPECT_FALSE(SatisfiesMatrixGuard(8, 4));
  EXPECT_FALSE(SatisfiesMatrixGuard(2, 1));
  EXPECT_TRUE(SatisfiesMatrixGuard(3, 1));
}

TEST(PlanReplacementsTest, TableOneShortSentence) {
  const Triple t = MakeTriple("wmt-0000", "@dh*v*l2410*6 zaruur bhaai :)",
                              "@dh*v*l2410*6 sure brother :)");
  const AlignmentMatrix links{4, 4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}};
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const ReplacementPlan plan = PlanReplacements(t, Units(links), {}, seed);
    ASSERT_FALSE(plan.skipped());
    ASSERT_EQ(plan.unit_choices.size(), 1u);
    const Sentence out = ApplyPlan(t, plan);
    EXPECT_EQ(out.tokens.front(), "@dh*v*l2410*6");
    EXPECT_EQ(out.tokens.back(), ":)");
    seen.insert(out.Text());
  }
  EXPECT_EQ(seen, (std::set<std::string>{"@dh*v*l2410*6 sure bhaai :)",
                                         "@dh*v*l2410*6 zaruur brother :)"}));
}

TEST(PlanReplacementsTest, OnlyNonLinguisticUnitsSkip) {
  const Triple t = MakeTriple("x", "@a :) #b", "@a :) #b");
  const AlignmentMatrix links{3, 3, {{0, 0}, {1, 1}, {2, 2}}};
  EXPECT_EQ(PlanReplacements(t, Units(links), {}, 1).status, PlanStatus::kSkipNoUnits);
  EXPECT_EQ(PlanReplacements(t, {}, {}, 1).status, PlanStatus::kSkipNoUnits);
}

TEST(PlanReplacementsTest, TwoTokenSentenceHitsGuard) {
  const Triple t = MakeTriple("x", "haan ji", "yes sir");
  const AlignmentMatrix links{2, 2, {{0, 0}, {1, 1}}};
  EXPECT_EQ(PlanReplacements(t, Units(links), {}, 1).status, PlanStatus::kSkipGuard);
}

TEST(PlanReplacementsTest, WideUnitBreaksGuard) {
  // One matrix token aligned to three English tokens in a 5-token sentence.
  const Triple t = MakeTriple("x", "a b c d e", "p q r s t");
  const AlignmentMatrix links{5, 5, {{0, 0}, {0, 1}, {0, 2}}};
  EXPECT_EQ(PlanReplacements(t, Units(links), {}, 1).status, PlanStatus::kSkipGuard);
}

TEST(PlanReplacementsTest, LongSentenceStaysWithinTarget) {
  for (size_t c = 0; c < 300; ++c) {
    Rng rng = gen::CaseRng(51, c);
    const size_t n = gen::Between(rng, 7, 60);
    const auto d = gen::DenseTriple(rng, n, "d" + std::to_string(c));
    const ReplacementPlan plan = PlanReplacements(d.triple, Units(d.links), {}, c);
    ASSERT_FALSE(plan.skipped());
    EXPECT_GE(plan.n_replaced, 1u);
    EXPECT_LE(plan.n_replaced, ReplacementTarget(n, 0.15)) << "n=" << n;
    const Sentence out = ApplyPlan(d.triple, plan);
    size_t english = 0;
    for (const auto& tok : out.tokens) english += tok[0] == 'e';
    EXPECT_EQ(english, plan.n_replaced);
    EXPECT_TRUE(SatisfiesMatrixGuard(out.size(), english));
  }
}

TEST(PlanReplacementsTest, SeedDeterminesPlan) {
  Rng rng(7);
  const auto d = gen::DenseTriple(rng, 30, "d");
  const auto a = PlanReplacements(d.triple, Units(d.links), {}, 99);
  const auto b = PlanReplacements(d.triple, Units(d.links), {}, 99);
  EXPECT_EQ(a.unit_choices, b.unit_choices);
}

TEST(PlanReplacementsTest, MissingRomanizationIsAnError) {
  Triple t = MakeTriple("nr", "a b", "c d");
  t.hindi_roman.reset();
  EXPECT_THROW(PlanReplacements(t, {}, {}, 0), DataError);
}

TEST(ApplyPlanTest, MultiTokenUnitUsesEnglishOrder) {
  const Triple t = MakeTriple("x", "h0 h1 h2 h3 h4 h5 h6 h7", "e0 e1 e2 e3 e4 e5 e6 e7");
  ReplacementPlan plan;
  plan.n_tokens = 8;
  plan.unit_choices = {{{2, 3}, {4, 5}}};
  plan.n_replaced = 2;
  EXPECT_EQ(ApplyPlan(t, plan).Text(), "h0 h1 e4 e5 h4 h5 h6 h7");
}

TEST(ApplyPlanTest, BadPositionsAreErrors) {
  const Triple t = MakeTriple("x", "a b c", "d e f");
  ReplacementPlan plan;
  plan.unit_choices = {{{5}, {0}}};
  EXPECT_THROW(ApplyPlan(t, plan), DataError);
  plan.unit_choices = {{{0}, {9}}};
  EXPECT_THROW(ApplyPlan(t, plan), DataError);
  plan.unit_choices = {{{0}, {0}}, {{0}, {1}}};
  EXPECT_THROW(ApplyPlan(t, plan), DataError);
}

class GenerateCorpusTest : public ::testing::Test {
 protected:
  void SetUp() override {
    triples_ = {MakeTriple("a", "woh kitaab padhta hai", "he reads book"),
                MakeTriple("b", "woh chai peeta hai", "he drinks tea"),
                MakeTriple("c", "main kitaab padhta hoon", "i read book"),
                MakeTriple("d", "haan", "yes")};
    triples_[2].cmx = Sentence::FromText("main book padhta hoon");
    std::vector<ParallelPair> fwd, rev;
    for (const auto& t : triples_) {
      fwd.push_back({*t.hindi_roman, t.english, "hi_roman", "en", t.domain, t.id});
      rev.push_back({t.english, *t.hindi_roman, "en", "hi_roman", t.domain, t.id});
    }
    forward_ = TrainIbm1(fwd, {5, true, 1}).table;
    reverse_ = TrainIbm1(rev, {5, true, 1}).table;
  }

  std::vector<Triple> triples_;
  TranslationTable forward_, reverse_;
};

TEST_F(GenerateCorpusTest, StatusesAndReport) {
  GenerationConfig config;
  config.seed = 5;
  const auto out = GenerateCorpus(triples_, forward_, reverse_, config);
  ASSERT_EQ(out.triples.size(), 4u);
  EXPECT_EQ(out.status[2], RecordStatus::kExisting);
  EXPECT_EQ(out.triples[2].cmx->Text(), "main book padhta hoon");
  EXPECT_FALSE(out.triples[2].synthetic);
  EXPECT_EQ(out.report.existing, 1u);
  EXPECT_EQ(out.report.generated + out.report.skipped_guard +
                out.report.skipped_no_units + out.report.existing,
            4u);
  EXPECT_NE(out.status[3], RecordStatus::kGenerated);  // one token cannot pass
  for (size_t i = 0; i < 4; ++i) {
    if (out.status[i] == RecordStatus::kGenerated) {
      EXPECT_TRUE(out.triples[i].synthetic);
      EXPECT_NE(out.triples[i].cmx->Text(), out.triples[i].hindi_roman->Text());
    }
  }
  EXPECT_LE(out.gold_check.size(), 1u);
  const auto kept = out.Corpus(false);
  const auto all = out.Corpus(true);
  EXPECT_EQ(all.size(), 4u);
  EXPECT_EQ(kept.size(), out.report.generated + out.report.existing);
  for (const auto& t : all) EXPECT_TRUE(t.cmx.has_value());
}

TEST_F(GenerateCorpusTest, IndependentOfJobsAndOrder) {
  GenerationConfig one;
  one.seed = 17;
  GenerationConfig many = one;
  many.jobs = 3;
  const auto a = GenerateCorpus(triples_, forward_, reverse_, one);
  const auto b = GenerateCorpus(triples_, forward_, reverse_, many);
  EXPECT_EQ(a.triples, b.triples);

  std::vector<Triple> reversed(triples_.rbegin(), triples_.rend());
  const auto c = GenerateCorpus(reversed, forward_, reverse_, one);
  for (size_t i = 0; i < triples_.size(); ++i) {
    EXPECT_EQ(a.triples[i], c.triples[triples_.size() - 1 - i]);
  }
}

TEST_F(GenerateCorpusTest, OverwriteExisting) {
  GenerationConfig config;
  config.overwrite_existing = true;
  const auto out = GenerateCorpus(triples_, forward_, reverse_, config);
  EXPECT_EQ(out.report.existing, 0u);
  EXPECT_NE(out.status[2], RecordStatus::kExisting);
}

TEST(GenerationReportTest, Json) {
  GenerationReport r;
  r.generated = 3;
  EXPECT_NE(r.ToJson().find("\"generated\": 3"), std::string::npos);
}

}  // namespace
}  // namespace cmx
