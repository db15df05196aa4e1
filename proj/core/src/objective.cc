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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>

#include "cmx/error.h"
#include "cmx/parallel.h"
#include "cmx/rng.h"

namespace cmx {
namespace {

struct Forward {
  std::vector<Eigen::VectorXd> h;
  Eigen::VectorXd pooled;
  std::vector<size_t> argmax;  // per coordinate
};

Forward RunEncoder(const TokenIds& tokens, const ToyEncoderParams& p) {
  if (tokens.empty()) throw DataError("cannot encode an empty token list");
  const Eigen::Index d = p.projection.rows();
  Forward f;
  f.h.reserve(tokens.size());
  for (int id : tokens) {
    if (id < 0 || static_cast<size_t>(id) >= p.vocab_size()) {
      throw DataError("token id " + std::to_string(id) +
                      " outside vocabulary of " +
                      std::to_string(p.vocab_size()));
    }
    const Eigen::VectorXd e = p.embedding.row(id).transpose();
    f.h.push_back((p.projection * e + p.bias).array().tanh().matrix());
  }
  f.pooled = f.h[0];
  f.argmax.assign(static_cast<size_t>(d), 0);
  for (size_t t = 1; t < f.h.size(); ++t) {
    for (Eigen::Index k = 0; k < d; ++k) {
      if (f.h[t](k) > f.pooled(k)) {
        f.pooled(k) = f.h[t](k);
        f.argmax[static_cast<size_t>(k)] = t;
      }
    }
  }
  return f;
}

// Embedding rows are kept sparse so per-element gradients stay small.
struct SparseGrad {
  Eigen::MatrixXd projection;
  Eigen::VectorXd bias;
  std::vector<std::pair<int, Eigen::VectorXd>> rows;

  explicit SparseGrad(Eigen::Index d)
      : projection(Eigen::MatrixXd::Zero(d, d)),
        bias(Eigen::VectorXd::Zero(d)) {}

  void AddTo(EncoderGrad& g, double scale) const {
    g.projection += scale * projection;
    g.bias += scale * bias;
    for (const auto& [id, r] : rows) g.embedding.row(id) += scale * r.transpose();
  }
};

void Backprop(const TokenIds& tokens, const Forward& f,
              const Eigen::VectorXd& g_pooled, const ToyEncoderParams& p,
              SparseGrad& out) {
  const Eigen::Index d = g_pooled.size();
  std::map<size_t, Eigen::VectorXd> g_h;
  for (Eigen::Index k = 0; k < d; ++k) {
    const size_t t = f.argmax[static_cast<size_t>(k)];
    auto it = g_h.try_emplace(t, Eigen::VectorXd::Zero(d)).first;
    it->second(k) += g_pooled(k);
  }
  for (const auto& [t, gh] : g_h) {
    const Eigen::VectorXd dz =
        (gh.array() * (1.0 - f.h[t].array().square())).matrix();
    const int id = tokens[t];
    out.projection += dz * p.embedding.row(id);
    out.bias += dz;
    out.rows.emplace_back(id, p.projection.transpose() * dz);
  }
}

Eigen::MatrixXd RandomMatrix(Eigen::Index rows, Eigen::Index cols, Rng& rng,
                             double scale) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = scale * rng.Normal();
  }
  return m;
}

double MeanCosine(const std::vector<TrainExample>& data,
                  const ToyEncoderParams& params) {
  double sum = 0.0;
  for (const auto& ex : data) {
    sum += Cosine(EncodeSentence(ex.tokens.src, params),
                  EncodeSentence(ex.tokens.tgt, params));
  }
  return data.empty() ? 0.0 : sum / static_cast<double>(data.size());
}

}  // namespace

ToyEncoderParams ToyEncoderParams::Random(size_t vocab_size, size_t dim,
                                          std::uint64_t seed, double scale) {
  Rng rng(seed);
  const auto v = static_cast<Eigen::Index>(vocab_size);
  const auto d = static_cast<Eigen::Index>(dim);
  ToyEncoderParams p;
  p.embedding = RandomMatrix(v, d, rng, scale);
  p.projection = RandomMatrix(d, d, rng, scale / std::sqrt(double(dim)));
  p.bias = RandomMatrix(d, 1, rng, 0.1 * scale);
  return p;
}

bool ToyEncoderParams::AllFinite() const {
  return embedding.allFinite() && projection.allFinite() && bias.allFinite();
}

EncoderGrad EncoderGrad::Zero(const ToyEncoderParams& like) {
  return {Eigen::MatrixXd::Zero(like.embedding.rows(), like.embedding.cols()),
          Eigen::MatrixXd::Zero(like.projection.rows(),
                                like.projection.cols()),
          Eigen::VectorXd::Zero(like.bias.size())};
}

double EncoderGrad::MaxAbs() const {
  double m = 0.0;
  if (embedding.size()) m = std::max(m, embedding.cwiseAbs().maxCoeff());
  if (projection.size()) m = std::max(m, projection.cwiseAbs().maxCoeff());
  if (bias.size()) m = std::max(m, bias.cwiseAbs().maxCoeff());
  return m;
}

Eigen::VectorXd EncodeSentence(const TokenIds& tokens,
                               const ToyEncoderParams& params) {
  return RunEncoder(tokens, params).pooled;
}

double Cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) {
    throw DataError("cosine undefined for a zero-norm representation");
  }
  if (u == v) return 1.0;
  if (u == -v) return -1.0;
  return std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
}

double AlignmentLoss(const std::vector<RepresentationPair>& batch) {
  if (batch.empty()) throw DataError("alignment loss needs a non-empty batch");
  double sum = 0.0;
  for (const auto& [u, v] : batch) sum += 1.0 - Cosine(u, v);
  return sum / static_cast<double>(batch.size());
}

double AlignmentLoss(const std::vector<TokenPair>& batch,
                     const ToyEncoderParams& params) {
  std::vector<RepresentationPair> reps;
  reps.reserve(batch.size());
  for (const auto& tp : batch) {
    reps.emplace_back(EncodeSentence(tp.src, params),
                      EncodeSentence(tp.tgt, params));
  }
  return AlignmentLoss(reps);
}

LossBreakdown CombinedLoss(double ce, double omega, double lambda) {
  return {ce, omega, lambda, ce + lambda * omega};
}

OmegaGrad GradAlignmentLoss(const std::vector<TokenPair>& batch,
                            const ToyEncoderParams& params, int jobs) {
  if (batch.empty()) throw DataError("alignment loss needs a non-empty batch");
  const Eigen::Index d = params.projection.rows();
  std::vector<SparseGrad> slots(batch.size(), SparseGrad(d));
  OmegaGrad out;
  out.cosines.assign(batch.size(), 0.0);
  ParallelFor(batch.size(), jobs, [&](size_t i) {
    const Forward fs = RunEncoder(batch[i].src, params);
    const Forward ft = RunEncoder(batch[i].tgt, params);
    const Eigen::VectorXd& u = fs.pooled;
    const Eigen::VectorXd& v = ft.pooled;
    const double cos = Cosine(u, v);
    out.cosines[i] = cos;
    const double nu = u.norm(), nv = v.norm();
    // d(1 - cos)/du and d(1 - cos)/dv
    const Eigen::VectorXd gu = -(v / (nu * nv) - cos * u / (nu * nu));
    const Eigen::VectorXd gv = -(u / (nu * nv) - cos * v / (nv * nv));
    Backprop(batch[i].src, fs, gu, params, slots[i]);
    Backprop(batch[i].tgt, ft, gv, params, slots[i]);
  });
  const double inv = 1.0 / static_cast<double>(batch.size());
  out.grad = EncoderGrad::Zero(params);
  double sum = 0.0;
  for (size_t i = 0; i < batch.size(); ++i) {
    sum += 1.0 - out.cosines[i];
    slots[i].AddTo(out.grad, inv);
  }
  out.omega = sum * inv;
  return out;
}

CeHead CeHead::Random(size_t out_vocab, size_t dim, std::uint64_t seed,
                      double scale) {
  Rng rng(seed);
  CeHead h;
  h.weight = RandomMatrix(static_cast<Eigen::Index>(out_vocab),
                          static_cast<Eigen::Index>(dim), rng, scale);
  h.bias = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out_vocab));
  return h;
}

CeGrad GradBagOfWordsCe(const std::vector<TokenPair>& batch,
                        const ToyEncoderParams& params, const CeHead& head) {
  if (batch.empty()) throw DataError("cross entropy needs a non-empty batch");
  const Eigen::Index d = params.projection.rows();
  const Eigen::Index out_v = head.weight.rows();
  CeGrad g;
  g.encoder = EncoderGrad::Zero(params);
  g.weight = Eigen::MatrixXd::Zero(out_v, d);
  g.bias = Eigen::VectorXd::Zero(out_v);
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (const auto& tp : batch) {
    const Forward fs = RunEncoder(tp.src, params);
    if (tp.tgt.empty()) throw DataError("cross entropy needs target tokens");
    Eigen::VectorXd logits = head.weight * fs.pooled + head.bias;
    const double mx = logits.maxCoeff();
    Eigen::VectorXd prob = (logits.array() - mx).exp().matrix();
    const double z = prob.sum();
    prob /= z;
    const double log_z = mx + std::log(z);
    Eigen::VectorXd target = Eigen::VectorXd::Zero(out_v);
    const double w = 1.0 / static_cast<double>(tp.tgt.size());
    for (int id : tp.tgt) {
      if (id < 0 || id >= out_v) {
        throw DataError("target id " + std::to_string(id) +
                        " outside the classifier vocabulary");
      }
      target(id) += w;
      g.ce += inv * w * (log_z - logits(id));
    }
    const Eigen::VectorXd g_logits = inv * (prob - target);
    g.weight += g_logits * fs.pooled.transpose();
    g.bias += g_logits;
    SparseGrad sg(d);
    Backprop(tp.src, fs, head.weight.transpose() * g_logits, params, sg);
    sg.AddTo(g.encoder, 1.0);
  }
  return g;
}

std::string TrainLog::ToCsv() const {
  std::string out = "step,phase,domain,omega,ce,total,mean_cosine\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%zu,%s,%s,%.9g,%.9g,%.9g,%.9g\n", r.step,
                  r.phase.c_str(), r.domain.c_str(), r.omega, r.ce, r.total,
                  r.mean_cosine);
    out += buf;
  }
  return out;
}

double TrainLog::HeldoutOmega(const std::string& after,
                              const std::string& domain) const {
  for (auto it = heldout.rbegin(); it != heldout.rend(); ++it) {
    if (it->after == after && it->domain == domain) return it->omega;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

TrainLog TrainToy(const Curriculum& curriculum,
                  const std::vector<TrainExample>& data,
                  const std::vector<TrainExample>& heldout,
                  ToyEncoderParams& params, CeHead* head,
                  const TrainConfig& config) {
  if (config.ce_enabled && head == nullptr) {
    throw UsageError("CE enabled but no classifier head given");
  }
  TrainLog log;
  std::map<std::string, std::vector<TokenPair>> heldout_by_domain;
  for (const auto& ex : heldout) heldout_by_domain[ex.domain].push_back(ex.tokens);
  auto evaluate = [&](size_t step, const std::string& after) {
    for (const auto& [domain, pairs] : heldout_by_domain) {
      const double omega = AlignmentLoss(pairs, params);
      log.heldout.push_back({step, after, domain, omega});
      log.rows.push_back({step, "heldout:" + after, domain, omega, 0.0,
                          config.lambda * omega, 1.0 - omega});
    }
  };
  evaluate(0, "init");

  struct Segment {
    size_t begin, end;
    Phase phase;
  };
  std::vector<Segment> segments;
  for (size_t b = 0; b < curriculum.batches.size(); ++b) {
    const Phase ph = curriculum.batches[b].phase;
    if (segments.empty() || segments.back().phase != ph) {
      segments.push_back({b, b, ph});
    }
    segments.back().end = b + 1;
  }
  const size_t n_batches = curriculum.batches.size();
  size_t step = 0;
  size_t assigned = 0;
  for (size_t s = 0; s < segments.size(); ++s) {
    const Segment& seg = segments[s];
    const size_t len = seg.end - seg.begin;
    size_t share = config.steps * len / n_batches;
    if (s + 1 == segments.size()) share = config.steps - assigned;
    assigned += share;
    for (size_t k = 0; k < share; ++k, ++step) {
      const Batch& batch = curriculum.batches[seg.begin + k % len];
      std::vector<TokenPair> pairs;
      std::vector<const std::string*> domains;
      for (size_t i : batch.pairs) {
        pairs.push_back(data.at(i).tokens);
        domains.push_back(&data.at(i).domain);
      }
      if (pairs.empty()) continue;
      OmegaGrad og = GradAlignmentLoss(pairs, params, config.jobs);
      double ce = 0.0;
      CeGrad cg;
      if (config.ce_enabled) {
        cg = GradBagOfWordsCe(pairs, params, *head);
        ce = cg.ce;
      }
      const LossBreakdown loss = CombinedLoss(ce, og.omega, config.lambda);
      if (!std::isfinite(loss.total)) {
        throw DataError("training diverged at step " + std::to_string(step) +
                        " (non-finite loss)");
      }
      std::map<std::string, std::pair<double, size_t>> per_domain;
      for (size_t i = 0; i < pairs.size(); ++i) {
        auto& [sum, n] = per_domain[*domains[i]];
        sum += og.cosines[i];
        ++n;
      }
      for (const auto& [domain, acc] : per_domain) {
        log.rows.push_back({step, std::string(PhaseName(seg.phase)), domain,
                            loss.omega, loss.ce, loss.total,
                            acc.first / static_cast<double>(acc.second)});
      }
      const double a = config.lr * config.lambda;
      params.embedding -= a * og.grad.embedding;
      params.projection -= a * og.grad.projection;
      params.bias -= a * og.grad.bias;
      if (config.ce_enabled) {
        params.embedding -= config.lr * cg.encoder.embedding;
        params.projection -= config.lr * cg.encoder.projection;
        params.bias -= config.lr * cg.encoder.bias;
        head->weight -= config.lr * cg.weight;
        head->bias -= config.lr * cg.bias;
      }
      if (!params.AllFinite()) {
        throw DataError("training diverged at step " + std::to_string(step) +
                        " (non-finite parameters)");
      }
    }
    evaluate(step, std::string(PhaseName(seg.phase)));
  }
  return log;
}

namespace {

std::vector<int> Permutation(size_t n, size_t offset, Rng& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), static_cast<int>(offset));
  rng.Shuffle(std::span<int>(p));
  return p;
}

std::vector<TrainExample> SyntheticDomain(const std::string& domain, size_t n,
                                          const std::vector<int>& target_of,
                                          const ToyTaskConfig& task, Rng& rng) {
  std::vector<TrainExample> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const size_t len =
        task.min_len + rng.UniformIndex(task.max_len - task.min_len + 1);
    TrainExample ex;
    ex.domain = domain;
    for (size_t t = 0; t < len; ++t) {
      const int s = static_cast<int>(rng.UniformIndex(task.source_vocab));
      ex.tokens.src.push_back(s);
      ex.tokens.tgt.push_back(target_of[static_cast<size_t>(s)]);
    }
    out.push_back(std::move(ex));
  }
  return out;
}

// ParallelPair stand-ins so the scheduler can order synthetic examples.
std::vector<ParallelPair> AsPairs(const std::vector<TrainExample>& data,
                                  const std::string& target_domain) {
  std::vector<ParallelPair> pairs;
  pairs.reserve(data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    std::vector<std::string> src(data[i].tokens.src.size(), "x");
    std::vector<std::string> tgt(data[i].tokens.tgt.size(), "y");
    pairs.push_back({Sentence::FromTokens(src), Sentence::FromTokens(tgt), "src",
                     "tgt", DomainTag{data[i].domain,
                                      data[i].domain == target_domain},
                     data[i].domain + "-" + std::to_string(i)});
  }
  return pairs;
}

}  // namespace

CosineExperimentResult RunCosineExperiment(std::uint64_t seed,
                                           size_t train_pairs,
                                           size_t heldout_pairs,
                                           const TrainConfig& train,
                                           const ToyTaskConfig& task) {
  Rng rng(DeriveSeed(seed, "cosine-data"));
  const auto target_of = Permutation(task.source_vocab, task.source_vocab, rng);
  const auto data = SyntheticDomain("toy", train_pairs, target_of, task, rng);
  const auto held = SyntheticDomain("toy", heldout_pairs, target_of, task, rng);
  ToyEncoderParams params =
      ToyEncoderParams::Random(2 * task.source_vocab, task.dim,
                               DeriveSeed(seed, "cosine-init"), task.init_scale);
  CeHead head = CeHead::Random(2 * task.source_vocab, task.dim,
                               DeriveSeed(seed, "cosine-head"));
  CurriculumStrategy strategy{StrategyKind::kShuffled, 1.0,
                              DeriveSeed(seed, "cosine-order")};
  const Curriculum c = BuildCurriculum(AsPairs(data, ""), strategy, task.budget);
  CosineExperimentResult r;
  r.initial_cosine = MeanCosine(held, params);
  r.log = TrainToy(c, data, held, params, train.ce_enabled ? &head : nullptr,
                   train);
  r.final_cosine = MeanCosine(held, params);
  return r;
}

ForgettingResult RunForgettingExperiment(std::uint64_t seed,
                                         size_t pairs_per_domain,
                                         size_t heldout_pairs,
                                         const TrainConfig& train,
                                         const ToyTaskConfig& task) {
  Rng rng(DeriveSeed(seed, "forgetting-data"));
  const size_t s = task.source_vocab;
  const auto general_map = Permutation(s, s, rng);
  const auto target_map = Permutation(s, s, rng);
  auto data = SyntheticDomain("general", pairs_per_domain, general_map, task, rng);
  const auto target = SyntheticDomain("target", pairs_per_domain, target_map, task, rng);
  data.insert(data.end(), target.begin(), target.end());
  const auto held =
      SyntheticDomain("general", heldout_pairs, general_map, task, rng);

  ToyEncoderParams params = ToyEncoderParams::Random(
      2 * s, task.dim, DeriveSeed(seed, "forgetting-init"), task.init_scale);
  CeHead head =
      CeHead::Random(2 * s, task.dim, DeriveSeed(seed, "forgetting-head"));
  CurriculumStrategy strategy{StrategyKind::kPretrainFinetune, 1.0,
                              DeriveSeed(seed, "forgetting-order")};
  const Curriculum c =
      BuildCurriculum(AsPairs(data, "target"), strategy, task.budget);
  ForgettingResult r;
  r.log = TrainToy(c, data, held, params, train.ce_enabled ? &head : nullptr,
                   train);
  r.omega_after_pretrain = r.log.HeldoutOmega("pretrain", "general");
  r.omega_after_finetune = r.log.HeldoutOmega("finetune", "general");
  return r;
}

}  // namespace cmx
