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


#include "cmx/objective.h"

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cmx/error.h"
#include "generators.h"
#include "gradcheck.h"

namespace cmx {
namespace {

Eigen::VectorXd Vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

TokenIds RandomIds(Rng& rng, size_t vocab, size_t max_len) {
  TokenIds ids(gen::Between(rng, 1, max_len));
  for (int& id : ids) id = static_cast<int>(rng.UniformIndex(vocab));
  return ids;
}

TEST(EncodeSentenceTest, SingleTokenIsItsTransformedVector) {
  const auto p = ToyEncoderParams::Random(10, 4, 1);
  const Eigen::VectorXd e = p.embedding.row(3).transpose();
  const Eigen::VectorXd expected = (p.projection * e + p.bias).array().tanh().matrix();
  EXPECT_TRUE(EncodeSentence({3}, p).isApprox(expected, 0.0));
}

TEST(EncodeSentenceTest, PermutationInvariant) {
  const auto p = ToyEncoderParams::Random(20, 6, 2);
  for (size_t c = 0; c < 50; ++c) {
    Rng rng = gen::CaseRng(81, c);
    TokenIds ids = RandomIds(rng, 20, 8);
    const Eigen::VectorXd before = EncodeSentence(ids, p);
    rng.Shuffle(std::span<int>(ids));
    EXPECT_EQ(EncodeSentence(ids, p), before);
  }
}

TEST(EncodeSentenceTest, CoordinateWiseMax) {
  ToyEncoderParams p;
  p.embedding = Eigen::MatrixXd(2, 2);
  p.embedding << 3.0, -3.0, -3.0, 3.0;
  p.projection = Eigen::MatrixXd::Identity(2, 2);
  p.bias = Eigen::VectorXd::Zero(2);
  const Eigen::VectorXd r = EncodeSentence({0, 1}, p);
  EXPECT_EQ(r(0), std::tanh(3.0));
  EXPECT_EQ(r(1), std::tanh(3.0));
}

TEST(EncodeSentenceTest, Errors) {
  const auto p = ToyEncoderParams::Random(5, 3, 1);
  EXPECT_THROW(EncodeSentence({}, p), DataError);
  EXPECT_THROW(EncodeSentence({5}, p), DataError);
  EXPECT_THROW(EncodeSentence({-1}, p), DataError);
}

TEST(AlignmentLossTest, ExactExtremes) {
  const Eigen::VectorXd u = Vec({0.3, -1.7, 2.9});
  EXPECT_EQ(AlignmentLoss({{u, u}}), 0.0);
  EXPECT_EQ(AlignmentLoss({{Vec({1, 0}), Vec({0, 1})}}), 1.0);
  EXPECT_EQ(AlignmentLoss({{u, -u}}), 2.0);
  EXPECT_EQ(AlignmentLoss({{u, u}, {Vec({1, 0}), Vec({0, 1})}}), 0.5);
}

TEST(AlignmentLossTest, Errors) {
  EXPECT_THROW(AlignmentLoss(std::vector<RepresentationPair>{}), DataError);
  EXPECT_THROW(AlignmentLoss({{Vec({0, 0}), Vec({1, 0})}}), DataError);
}

TEST(AlignmentLossTest, RangeSymmetryAndScaleInvariance) {
  for (size_t c = 0; c < 200; ++c) {
    Rng rng = gen::CaseRng(82, c);
    std::vector<RepresentationPair> batch, swapped, scaled;
    const double k = 0.01 + 100 * rng.UniformReal();
    for (size_t i = 0; i < gen::Between(rng, 1, 5); ++i) {
      Eigen::VectorXd u(4), v(4);
      for (int j = 0; j < 4; ++j) {
        u(j) = rng.Normal();
        v(j) = rng.Normal();
      }
      batch.push_back({u, v});
      swapped.push_back({v, u});
      scaled.push_back({k * u, k * v});
    }
    const double omega = AlignmentLoss(batch);
    EXPECT_GE(omega, 0.0);
    EXPECT_LE(omega, 2.0);
    EXPECT_DOUBLE_EQ(AlignmentLoss(swapped), omega);
    EXPECT_NEAR(AlignmentLoss(scaled), omega, 1e-12);
  }
}

TEST(CombinedLossTest, Identity) {
  EXPECT_DOUBLE_EQ(CombinedLoss(1.0, 0.2).total, 3.0);
  EXPECT_EQ(CombinedLoss(1.0, 0.2).lambda, 10.0);
  EXPECT_EQ(CombinedLoss(0.7, 0.0).total, 0.7);
  EXPECT_EQ(CombinedLoss(0.7, 1.3, 0.0).total, 0.7);
  for (size_t c = 0; c < 100; ++c) {
    Rng rng = gen::CaseRng(83, c);
    const double ce = 5 * rng.UniformReal(), omega = 2 * rng.UniformReal();
    const LossBreakdown l = CombinedLoss(ce, omega);
    EXPECT_EQ(l.total, ce + kEncoderCriterionWeight * omega);
  }
}

TEST(GradAlignmentLossTest, ZeroWhenSidesAreEqual) {
  const auto p = ToyEncoderParams::Random(12, 5, 4);
  const OmegaGrad g = GradAlignmentLoss({{{1, 2, 3}, {1, 2, 3}}, {{4}, {4}}}, p);
  EXPECT_EQ(g.omega, 0.0);
  EXPECT_EQ(g.grad.MaxAbs(), 0.0);
}

TEST(GradAlignmentLossTest, MatchesFiniteDifferences) {
  size_t checked = 0;
  for (size_t c = 0; checked < 100; ++c) {
    ASSERT_LT(c, 1000u);
    Rng rng = gen::CaseRng(84, c);
    const size_t vocab = gen::Between(rng, 2, 50), dim = gen::Between(rng, 1, 8);
    ToyEncoderParams p = ToyEncoderParams::Random(vocab, dim, 1000 + c);
    std::vector<TokenPair> batch(gen::Between(rng, 1, 3));
    bool near_kink = false;
    for (auto& tp : batch) {
      tp.src = RandomIds(rng, vocab, 4);
      tp.tgt = RandomIds(rng, vocab, 4);
      near_kink |= oracle::MaxPoolMargin(tp.src, p) < 1e-3 ||
                   oracle::MaxPoolMargin(tp.tgt, p) < 1e-3;
    }
    if (near_kink) continue;
    const OmegaGrad g = GradAlignmentLoss(batch, p);
    EXPECT_NEAR(g.omega, AlignmentLoss(batch, p), 1e-15);
    const double err =
        oracle::MaxRelativeError(p, g.grad, [&] { return AlignmentLoss(batch, p); });
    EXPECT_LT(err, 1e-4) << "case " << c;
    ++checked;
  }
}

TEST(GradAlignmentLossTest, JobsDoNotChangeResult) {
  const auto p = ToyEncoderParams::Random(30, 6, 5);
  Rng rng(85);
  std::vector<TokenPair> batch(12);
  for (auto& tp : batch) {
    tp.src = RandomIds(rng, 30, 5);
    tp.tgt = RandomIds(rng, 30, 5);
  }
  const OmegaGrad a = GradAlignmentLoss(batch, p, 1);
  const OmegaGrad b = GradAlignmentLoss(batch, p, 4);
  EXPECT_EQ(a.omega, b.omega);
  EXPECT_EQ(a.grad.embedding, b.grad.embedding);
  EXPECT_EQ(a.grad.projection, b.grad.projection);
  EXPECT_EQ(a.grad.bias, b.grad.bias);
}

TEST(GradBagOfWordsCeTest, MatchesFiniteDifferences) {
  for (size_t c = 0; c < 20; ++c) {
    Rng rng = gen::CaseRng(86, c);
    ToyEncoderParams p = ToyEncoderParams::Random(12, 4, 2000 + c);
    const CeHead head = CeHead::Random(12, 4, 3000 + c, 0.5);
    std::vector<TokenPair> batch(2);
    bool near_kink = false;
    for (auto& tp : batch) {
      tp.src = RandomIds(rng, 12, 3);
      tp.tgt = RandomIds(rng, 12, 3);
      near_kink |= oracle::MaxPoolMargin(tp.src, p) < 1e-3;
    }
    if (near_kink) continue;
    const CeGrad g = GradBagOfWordsCe(batch, p, head);
    EXPECT_GT(g.ce, 0.0);
    const double err = oracle::MaxRelativeError(
        p, g.encoder, [&] { return GradBagOfWordsCe(batch, p, head).ce; });
    EXPECT_LT(err, 1e-4) << "case " << c;
  }
}

std::vector<TrainExample> TinyData() {
  return {{{{0, 1}, {4, 5}}, "a"}, {{{2}, {6}}, "a"}, {{{3, 1}, {7, 5}}, "b"}};
}

Curriculum TinyCurriculum(const std::vector<TrainExample>& data) {
  std::vector<ParallelPair> pairs;
  for (size_t i = 0; i < data.size(); ++i) {
    pairs.push_back({Sentence::FromText("x"), Sentence::FromText("y"), "s", "t",
                     DomainTag{data[i].domain, data[i].domain == "b"},
                     std::to_string(i)});
  }
  return BuildCurriculum(pairs, {StrategyKind::kPretrainFinetune, 1.0, 1}, 2);
}

TEST(TrainToyTest, ZeroLambdaWithoutCeLeavesParamsUnchanged) {
  const auto data = TinyData();
  ToyEncoderParams p = ToyEncoderParams::Random(8, 4, 6);
  const ToyEncoderParams before = p;
  TrainConfig config;
  config.lambda = 0.0;
  config.steps = 25;
  TrainToy(TinyCurriculum(data), data, data, p, nullptr, config);
  EXPECT_EQ(p.embedding, before.embedding);
  EXPECT_EQ(p.projection, before.projection);
  EXPECT_EQ(p.bias, before.bias);
}

TEST(TrainToyTest, LogRowsSatisfyTotalIdentity) {
  const auto data = TinyData();
  ToyEncoderParams p = ToyEncoderParams::Random(8, 4, 7);
  CeHead head = CeHead::Random(8, 4, 8);
  TrainConfig config;
  config.steps = 30;
  config.ce_enabled = true;
  const TrainLog log = TrainToy(TinyCurriculum(data), data, data, p, &head, config);
  size_t train_rows = 0;
  for (const auto& r : log.rows) {
    if (r.phase.rfind("heldout:", 0) == 0) continue;
    ++train_rows;
    EXPECT_EQ(r.total, r.ce + config.lambda * r.omega);
  }
  EXPECT_GE(train_rows, 30u);
  EXPECT_FALSE(std::isnan(log.HeldoutOmega("init", "a")));
  EXPECT_FALSE(std::isnan(log.HeldoutOmega("pretrain", "a")));
  EXPECT_FALSE(std::isnan(log.HeldoutOmega("finetune", "b")));
  EXPECT_TRUE(std::isnan(log.HeldoutOmega("finetune", "zzz")));
  const std::string csv = log.ToCsv();
  EXPECT_EQ(csv.rfind("step,phase,domain,omega,ce,total,mean_cosine\n", 0), 0u);
}

TEST(TrainToyTest, CeWithoutHeadIsUsageError) {
  const auto data = TinyData();
  ToyEncoderParams p = ToyEncoderParams::Random(8, 4, 6);
  TrainConfig config;
  config.ce_enabled = true;
  EXPECT_THROW(TrainToy(TinyCurriculum(data), data, data, p, nullptr, config), UsageError);
}

TEST(TrainToyTest, DivergenceNamesTheStep) {
  const auto data = TinyData();
  ToyEncoderParams p = ToyEncoderParams::Random(8, 4, 6);
  CeHead head = CeHead::Random(8, 4, 9);
  TrainConfig config;
  config.lr = 1e300;
  config.ce_enabled = true;
  try {
    TrainToy(TinyCurriculum(data), data, data, p, &head, config);
    FAIL() << "expected divergence";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("step"), std::string::npos) << e.what();
  }
}

// Thresholds come from the first recorded run (see
// data/fixtures/toy_thresholds.json); the experiment is deterministic.
TEST(ToyExperimentTest, CosineRisesOnHeldOutPairs) {
  TrainConfig config;
  config.lr = 0.1;
  config.steps = 500;
  config.lambda = 1.0;
  const auto r = RunCosineExperiment(1, 200, 50, config);
  EXPECT_LT(r.initial_cosine, 0.6);
  EXPECT_GT(r.final_cosine, 0.9);
}

TEST(ToyExperimentTest, ForgettingOnOneSeed) {
  TrainConfig config;
  config.lr = 0.02;
  config.steps = 1000;
  config.ce_enabled = true;
  ToyTaskConfig task;
  task.dim = 16;
  const auto r = RunForgettingExperiment(1, 200, 50, config, task);
  EXPECT_TRUE(r.forgot()) << r.omega_after_pretrain << " -> " << r.omega_after_finetune;
}

}  // namespace
}  // namespace cmx
