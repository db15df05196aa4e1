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


#include "cmx/align.h"

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "brute_components.h"
#include "brute_em.h"
#include "cmx/error.h"
#include "generators.h"

namespace cmx {
namespace {

ParallelPair P(const std::string& src, const std::string& tgt) {
  return {Sentence::FromText(src), Sentence::FromText(tgt), "src", "tgt",
          DomainTag{"d", false}, src};
}

std::vector<ParallelPair> TwoPairCorpus() {
  return {P("a b", "x y"), P("a c", "x z")};
}

AlignmentMatrix M(size_t I, size_t J, std::set<std::pair<size_t, size_t>> links) {
  return {I, J, std::move(links)};
}

TEST(TrainIbm1Test, SinglePairOneIteration) {
  const auto r = TrainIbm1({P("a", "x")}, {1, false, 1});
  EXPECT_EQ(r.table.Prob("a", "x"), 1.0);
}

// Values recorded from the enumeration oracle in brute_em.h.
TEST(TrainIbm1Test, TwoPairCorpusFrozenValues) {
  const auto r = TrainIbm1(TwoPairCorpus(), {10, false, 1});
  const auto& t = r.table;
  EXPECT_NEAR(t.Prob("a", "x"), 0.982003652902086, 1e-12);
  EXPECT_NEAR(t.Prob("a", "y"), 0.008998173548957001, 1e-12);
  EXPECT_NEAR(t.Prob("a", "z"), 0.008998173548957001, 1e-12);
  EXPECT_NEAR(t.Prob("b", "x"), 0.09631137780887424, 1e-12);
  EXPECT_NEAR(t.Prob("b", "y"), 0.9036886221911258, 1e-12);
  EXPECT_NEAR(t.Prob("c", "x"), 0.09631137780887424, 1e-12);
  EXPECT_NEAR(t.Prob("c", "z"), 0.9036886221911258, 1e-12);
  // argmax_f t(f|a) = x
  for (const auto& [f, p] : t.rows().at("a")) {
    if (f != "x") EXPECT_LT(p, t.Prob("a", "x"));
  }
}

TEST(TrainIbm1Test, MatchesEnumerationOracleWithAndWithoutNull) {
  const std::vector<oracle::MicroPair> corpus = {{{"a", "b"}, {"x", "y"}},
                                                 {{"a", "c"}, {"x", "z"}}};
  for (bool use_null : {false, true}) {
    const oracle::Table expected = oracle::RunEm(corpus, 10, use_null);
    const auto got = TrainIbm1(TwoPairCorpus(), {10, use_null, 1}).table;
    for (const auto& [key, p] : expected) {
      EXPECT_NEAR(got.Prob(key.first, key.second), p, 1e-12)
          << key.first << " " << key.second << " null=" << use_null;
    }
  }
}

TEST(TrainIbm1Test, RowsNormalizedAndLikelihoodMonotone) {
  for (size_t c = 0; c < 50; ++c) {
    Rng rng = gen::CaseRng(41, c);
    const auto pairs = gen::ToPairs(gen::MicroCorpus(rng));
    for (bool use_null : {false, true}) {
      const auto r = TrainIbm1(pairs, {6, use_null, 1});
      for (const auto& [e, row] : r.table.rows()) {
        EXPECT_NEAR(r.table.RowSum(e), 1.0, 1e-9) << "case " << c;
        for (const auto& [f, p] : row) EXPECT_GE(p, 0.0);
      }
      for (size_t k = 1; k < r.log_likelihood.size(); ++k) {
        EXPECT_GE(r.log_likelihood[k], r.log_likelihood[k - 1] - 1e-12) << "case " << c;
      }
    }
  }
}

TEST(TrainIbm1Test, LikelihoodAgreesWithOracle) {
  for (size_t c = 0; c < 30; ++c) {
    Rng rng = gen::CaseRng(42, c);
    const auto micro = gen::MicroCorpus(rng);
    const auto pairs = gen::ToPairs(micro);
    for (bool use_null : {false, true}) {
      const oracle::Table t = oracle::RunEm(micro, 3, use_null);
      const auto r = TrainIbm1(pairs, {3, use_null, 1});
      EXPECT_NEAR(r.log_likelihood.back(), oracle::LogLikelihood(micro, t, use_null),
                  1e-9)
          << "case " << c;
      EXPECT_NEAR(CorpusLogLikelihood(pairs, r.table, use_null), r.log_likelihood.back(),
                  1e-12);
    }
  }
}

TEST(TrainIbm1Test, PosteriorsMatchOracle) {
  for (size_t c = 0; c < 30; ++c) {
    Rng rng = gen::CaseRng(43, c);
    const auto micro = gen::MicroCorpus(rng);
    const auto pairs = gen::ToPairs(micro);
    const bool use_null = c % 2 == 0;
    const auto table = TrainIbm1(pairs, {2, use_null, 1}).table;
    oracle::Table t;
    for (const auto& [e, row] : table.rows()) {
      for (const auto& [f, p] : row) t[{e, f}] = p;
    }
    for (size_t k = 0; k < micro.size(); ++k) {
      const auto want = oracle::Posteriors(micro[k], t, use_null);
      const auto got = LinkPosteriors(pairs[k], table, use_null);
      ASSERT_EQ(got.size(), want.size());
      for (size_t j = 0; j < want.size(); ++j) {
        ASSERT_EQ(got[j].size(), want[j].size());
        for (size_t i = 0; i < want[j].size(); ++i) {
          EXPECT_NEAR(got[j][i], want[j][i], 1e-12);
        }
      }
    }
  }
}

TEST(TrainIbm1Test, WorkerCountDoesNotChangeTable) {
  std::vector<ParallelPair> pairs;
  for (size_t c = 0; c < 40; ++c) {
    Rng rng = gen::CaseRng(44, c);
    for (const auto& p : gen::ToPairs(gen::MicroCorpus(rng))) pairs.push_back(p);
  }
  const auto one = TrainIbm1(pairs, {5, true, 1});
  const auto four = TrainIbm1(pairs, {5, true, 4});
  EXPECT_EQ(one.table, four.table);
  EXPECT_EQ(one.log_likelihood, four.log_likelihood);
}

TEST(TrainIbm1Test, InvalidInput) {
  EXPECT_THROW(TrainIbm1({}, {}), UsageError);
  EXPECT_THROW(TrainIbm1(TwoPairCorpus(), {0, true, 1}), UsageError);
}

TEST(TranslationTableTest, TsvRoundTrip) {
  const auto t = TrainIbm1(TwoPairCorpus(), {4, true, 1}).table;
  EXPECT_EQ(TranslationTable::FromTsv(t.ToTsv()), t);
}

TEST(ViterbiAlignTest, Examples) {
  const auto t = TrainIbm1(TwoPairCorpus(), {10, false, 1}).table;
  EXPECT_EQ(ViterbiAlign(P("a b", "x y"), t).links,
            (std::set<std::pair<size_t, size_t>>{{0, 0}, {1, 1}}));

  TranslationTable id;
  id.Set("a", "a", 1.0);
  EXPECT_EQ(ViterbiAlign(P("a", "a"), id).links,
            (std::set<std::pair<size_t, size_t>>{{0, 0}}));

  EXPECT_TRUE(ViterbiAlign(P("a", "unseen"), id).links.empty());
}

TEST(ViterbiAlignTest, TiesGoToSmallestSource) {
  TranslationTable t;
  t.Set("a", "x", 0.5);
  t.Set("b", "x", 0.5);
  EXPECT_EQ(ViterbiAlign(P("b a", "x"), t).links,
            (std::set<std::pair<size_t, size_t>>{{0, 0}}));
}

TEST(ViterbiAlignTest, NullWinsLeavesUnlinked) {
  TranslationTable t;
  t.Set(TranslationTable::kNullWord, "x", 0.9);
  t.Set("a", "x", 0.1);
  EXPECT_TRUE(ViterbiAlign(P("a", "x"), t).links.empty());
}

TEST(SymmetrizeTest, Examples) {
  const auto fwd = M(2, 2, {{0, 0}, {1, 1}});
  const auto rev_t = M(2, 2, {{0, 0}});
  EXPECT_EQ(Symmetrize(fwd, rev_t.Transposed(), SymmetrizeMode::kIntersection).links,
            (std::set<std::pair<size_t, size_t>>{{0, 0}}));

  for (auto mode : {SymmetrizeMode::kIntersection, SymmetrizeMode::kGrowDiag}) {
    EXPECT_EQ(Symmetrize(fwd, fwd.Transposed(), mode), fwd);
  }

  const auto small = M(2, 2, {{0, 0}});
  const auto big = M(2, 2, {{0, 0}, {1, 1}});
  EXPECT_EQ(Symmetrize(small, big.Transposed(), SymmetrizeMode::kGrowDiag).links,
            (std::set<std::pair<size_t, size_t>>{{0, 0}, {1, 1}}));
}

TEST(SymmetrizeTest, GrowDiagNeedsAnUnalignedEnd) {
  // (1,1) neighbours (0,0) but both of its ends are already aligned.
  const auto fwd = M(2, 2, {{0, 0}, {0, 1}, {1, 0}});
  const auto rev_t = M(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  EXPECT_EQ(Symmetrize(fwd, rev_t.Transposed(), SymmetrizeMode::kGrowDiag).links,
            fwd.links);
}

TEST(SymmetrizeTest, BoundsOnRandomInputs) {
  for (size_t c = 0; c < 200; ++c) {
    Rng rng = gen::CaseRng(45, c);
    AlignmentMatrix fwd = gen::RandomAlignment(rng);
    AlignmentMatrix other = gen::RandomAlignment(rng);
    other.src_len = fwd.src_len;
    other.tgt_len = fwd.tgt_len;
    std::set<std::pair<size_t, size_t>> kept;
    for (auto [i, j] : other.links) {
      if (i < fwd.src_len && j < fwd.tgt_len) kept.insert({i, j});
    }
    other.links = kept;
    const auto inter = Symmetrize(fwd, other.Transposed(), SymmetrizeMode::kIntersection);
    const auto grow = Symmetrize(fwd, other.Transposed(), SymmetrizeMode::kGrowDiag);
    for (auto l : inter.links) {
      EXPECT_TRUE(fwd.links.count(l) && other.links.count(l));
      EXPECT_TRUE(grow.links.count(l));
    }
    for (auto l : grow.links) EXPECT_TRUE(fwd.links.count(l) || other.links.count(l));
  }
}

TEST(SymmetrizeTest, DimensionMismatch) {
  EXPECT_THROW(Symmetrize(M(2, 3, {}), M(2, 3, {}), SymmetrizeMode::kIntersection),
               DataError);
}

TEST(AlignmentMatrixTest, PharaohRoundTripAndValidation) {
  const auto m = M(3, 2, {{0, 1}, {2, 0}});
  EXPECT_EQ(m.ToPharaoh(), "0-1 2-0");
  EXPECT_EQ(AlignmentMatrix::FromPharaoh("0-1 2-0", 3, 2), m);
  EXPECT_THROW(AlignmentMatrix::FromPharaoh("3-0", 3, 2), DataError);
  EXPECT_THROW(AlignmentMatrix::FromPharaoh("0_1", 3, 2), DataError);
  EXPECT_THROW(M(1, 1, {{1, 0}}).Validate(), DataError);
}

TEST(ExtractMinimalUnitsTest, Examples) {
  using U = MinimalUnit;
  EXPECT_EQ(ExtractMinimalUnits(M(2, 3, {{0, 0}, {1, 1}, {1, 2}})),
            (std::vector<U>{{{0}, {0}}, {{1}, {1, 2}}}));
  EXPECT_EQ(ExtractMinimalUnits(M(2, 1, {{0, 0}, {1, 0}})),
            (std::vector<U>{{{0, 1}, {0}}}));
  EXPECT_EQ(ExtractMinimalUnits(M(2, 2, {{0, 1}, {1, 0}})),
            (std::vector<U>{{{0}, {1}}, {{1}, {0}}}));
  EXPECT_TRUE(ExtractMinimalUnits(M(3, 3, {})).empty());
}

TEST(ExtractMinimalUnitsTest, MatchesBruteForceComponents) {
  for (size_t c = 0; c < 200; ++c) {
    Rng rng = gen::CaseRng(46, c);
    const AlignmentMatrix m = gen::RandomAlignment(rng);
    const auto units = ExtractMinimalUnits(m);
    std::set<oracle::Component> got;
    for (const auto& u : units) got.insert({u.src_positions, u.tgt_positions});
    EXPECT_EQ(got, oracle::BruteComponents(m.src_len, m.tgt_len, m.links)) << "case " << c;
    EXPECT_EQ(got.size(), units.size());
  }
}

}  // namespace
}  // namespace cmx
