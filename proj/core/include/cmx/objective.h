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


// Encoder alignment objective: max-pooled sentence representations from a
// toy feed-forward encoder, the cosine alignment loss Omega, its analytic
// gradient, a gradient-descent trainer driven by a curriculum, and two
// synthetic experiments built on it.

#ifndef CMX_OBJECTIVE_H_
#define CMX_OBJECTIVE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cmx/schedule.h"

namespace cmx {

// Weight of Omega in the combined loss.
inline constexpr double kEncoderCriterionWeight = 10.0;

using TokenIds = std::vector<int>;

struct ToyEncoderParams {
  Eigen::MatrixXd embedding;   // V x d
  Eigen::MatrixXd projection;  // d x d
  Eigen::VectorXd bias;        // d

  // Entries drawn from N(0, scale^2).
  static ToyEncoderParams Random(size_t vocab_size, size_t dim,
                                 std::uint64_t seed, double scale = 1.0);
  size_t vocab_size() const { return static_cast<size_t>(embedding.rows()); }
  size_t dim() const { return static_cast<size_t>(embedding.cols()); }
  bool AllFinite() const;
};

struct EncoderGrad {
  Eigen::MatrixXd embedding;
  Eigen::MatrixXd projection;
  Eigen::VectorXd bias;

  static EncoderGrad Zero(const ToyEncoderParams& like);
  double MaxAbs() const;
};

// Coordinate-wise max over tanh(projection * embedding[id] + bias). Throws
// DataError on an empty list or an id outside the vocabulary.
Eigen::VectorXd EncodeSentence(const TokenIds& tokens,
                               const ToyEncoderParams& params);

// Throws DataError when either vector has zero norm.
double Cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

using RepresentationPair = std::pair<Eigen::VectorXd, Eigen::VectorXd>;

// Mean of 1 - cos(src, tgt). Throws DataError on an empty batch.
double AlignmentLoss(const std::vector<RepresentationPair>& batch);

struct LossBreakdown {
  double ce = 0.0;
  double omega = 0.0;
  double lambda = kEncoderCriterionWeight;
  double total = 0.0;
};

LossBreakdown CombinedLoss(double ce, double omega,
                           double lambda = kEncoderCriterionWeight);

struct TokenPair {
  TokenIds src;
  TokenIds tgt;
};

double AlignmentLoss(const std::vector<TokenPair>& batch,
                     const ToyEncoderParams& params);

struct OmegaGrad {
  double omega = 0.0;
  std::vector<double> cosines;  // per batch element
  EncoderGrad grad;
};

// Max-pool subgradient goes to the first maximal token per coordinate.
// Per-element work runs on `jobs` threads and is reduced in batch order.
OmegaGrad GradAlignmentLoss(const std::vector<TokenPair>& batch,
                            const ToyEncoderParams& params, int jobs = 1);

// Bag-of-words target-token classifier on the pooled source representation.
struct CeHead {
  Eigen::MatrixXd weight;  // V_out x d
  Eigen::VectorXd bias;    // V_out

  static CeHead Random(size_t out_vocab, size_t dim, std::uint64_t seed,
                       double scale = 0.1);
};

struct CeGrad {
  double ce = 0.0;
  EncoderGrad encoder;
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;
};

// Mean over the batch of the mean over target tokens of -log p(token).
CeGrad GradBagOfWordsCe(const std::vector<TokenPair>& batch,
                        const ToyEncoderParams& params, const CeHead& head);

struct TrainConfig {
  double lr = 0.1;
  size_t steps = 500;
  double lambda = kEncoderCriterionWeight;
  bool ce_enabled = false;
  int jobs = 1;
};

struct TrainExample {
  TokenPair tokens;
  std::string domain;
};

struct LogRow {
  size_t step = 0;
  std::string phase;
  std::string domain;
  double omega = 0.0;
  double ce = 0.0;
  double total = 0.0;
  double mean_cosine = 0.0;
};

struct HeldoutEval {
  size_t step = 0;
  // "init" before training, otherwise the phase that just ended.
  std::string after;
  std::string domain;
  double omega = 0.0;
};

struct TrainLog {
  // One row per (step, domain present in the batch); held-out rows use
  // phase "heldout:<after>".
  std::vector<LogRow> rows;
  std::vector<HeldoutEval> heldout;

  // Header: step,phase,domain,omega,ce,total,mean_cosine
  std::string ToCsv() const;
  // Omega on `domain` held-out pairs recorded after `after`; NaN if absent.
  double HeldoutOmega(const std::string& after,
                      const std::string& domain) const;
};

// The curriculum's batches are split into phase segments (maximal runs of
// equal phase). Each segment receives a share of `steps` proportional to
// its batch count and cycles through its batches in order. Held-out Omega
// per domain is logged before training and after each segment. `head` may
// be null when CE is disabled. Throws DataError on a non-finite loss,
// naming the step.
TrainLog TrainToy(const Curriculum& curriculum,
                  const std::vector<TrainExample>& data,
                  const std::vector<TrainExample>& heldout,
                  ToyEncoderParams& params, CeHead* head,
                  const TrainConfig& config);

// Toy experiments on synthetic parallel data. Source ids are [0, S); each
// domain maps every source id to its own target id through a fixed seeded
// permutation, so the encoder has to pull the two embeddings together.
struct ToyTaskConfig {
  size_t source_vocab = 16;
  size_t dim = 8;
  size_t min_len = 1;
  size_t max_len = 4;
  size_t budget = 24;
  double init_scale = 1.0;
};

struct CosineExperimentResult {
  double initial_cosine = 0.0;
  double final_cosine = 0.0;
  TrainLog log;
};

// Training on one domain; cosines are held-out means. A bag-of-words CE
// head is attached when train.ce_enabled is set.
CosineExperimentResult RunCosineExperiment(std::uint64_t seed,
                                           size_t train_pairs,
                                           size_t heldout_pairs,
                                           const TrainConfig& train,
                                           const ToyTaskConfig& task = {});

struct ForgettingResult {
  double omega_after_pretrain = 0.0;
  double omega_after_finetune = 0.0;
  TrainLog log;

  bool forgot() const { return omega_after_finetune > omega_after_pretrain; }
};

// Pretrain on domain "general", finetune on domain "target", then compare
// held-out Omega on "general". Both domains draw from the same source and
// target vocabularies but pair the words through different permutations.
// A bag-of-words CE head is attached when train.ce_enabled is set; with
// Omega alone the toy encoder tends to collapse every sentence onto one
// direction.
ForgettingResult RunForgettingExperiment(std::uint64_t seed,
                                         size_t pairs_per_domain,
                                         size_t heldout_pairs,
                                         const TrainConfig& train,
                                         const ToyTaskConfig& task = {});

}  // namespace cmx

#endif  // CMX_OBJECTIVE_H_
