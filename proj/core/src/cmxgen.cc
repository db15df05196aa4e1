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
#include <numeric>

#include <nlohmann/json.hpp>

#include "cmx/error.h"
#include "cmx/lid.h"
#include "cmx/parallel.h"
#include "cmx/rng.h"

namespace cmx {
namespace {

const Sentence& Matrix(const Triple& t) {
  if (!t.hindi_roman) {
    throw DataError("triple '" + t.id +
                    "' has no hi_roman sentence; run transliteration first");
  }
  return *t.hindi_roman;
}

bool TouchesNonLinguistic(const MinimalUnit& unit, const Sentence& matrix,
                          const Sentence& embedded) {
  for (size_t i : unit.src_positions) {
    if (i < matrix.size() && IsNonLinguistic(matrix.tokens[i])) return true;
  }
  for (size_t j : unit.tgt_positions) {
    if (j < embedded.size() && IsNonLinguistic(embedded.tokens[j])) return true;
  }
  return false;
}

}  // namespace

size_t ReplacementTarget(size_t n_tokens, double rate) {
  const double k = std::round(rate * static_cast<double>(n_tokens));
  return std::max<size_t>(1, static_cast<size_t>(k));
}

bool SatisfiesMatrixGuard(size_t n_tokens, size_t embedded_tokens) {
  return embedded_tokens < (n_tokens + 1) / 2;
}

ReplacementPlan PlanReplacements(const Triple& triple,
                                 const std::vector<MinimalUnit>& units,
                                 const GenerationOptions& options,
                                 std::uint64_t seed) {
  const Sentence& matrix = Matrix(triple);
  ReplacementPlan plan;
  plan.triple_id = triple.id;
  plan.n_tokens = matrix.size();
  plan.seed = seed;

  std::vector<const MinimalUnit*> eligible;
  for (const MinimalUnit& u : units) {
    if (!TouchesNonLinguistic(u, matrix, triple.english)) eligible.push_back(&u);
  }
  if (eligible.empty()) {
    plan.status = PlanStatus::kSkipNoUnits;
    return plan;
  }
  std::vector<const MinimalUnit*> fitting;
  for (const MinimalUnit* u : eligible) {
    if (SatisfiesMatrixGuard(plan.n_tokens, u->tgt_positions.size())) {
      fitting.push_back(u);
    }
  }
  if (fitting.empty()) {
    plan.status = PlanStatus::kSkipGuard;
    return plan;
  }

  Rng rng(seed);
  std::vector<const MinimalUnit*> chosen;
  if (plan.n_tokens < options.short_len) {
    chosen.push_back(fitting[rng.UniformIndex(fitting.size())]);
  } else {
    const size_t target = ReplacementTarget(plan.n_tokens, options.rate);
    rng.Shuffle(std::span<const MinimalUnit*>(fitting));
    size_t covered = 0;
    size_t embedded = 0;
    for (const MinimalUnit* u : fitting) {
      if (covered + u->src_positions.size() > target) break;
      if (!SatisfiesMatrixGuard(plan.n_tokens,
                                embedded + u->tgt_positions.size())) {
        break;
      }
      chosen.push_back(u);
      covered += u->src_positions.size();
      embedded += u->tgt_positions.size();
    }
    if (chosen.empty()) {
      // The first draw already overshoots; fall back to the smallest unit.
      chosen.push_back(*std::min_element(
          fitting.begin(), fitting.end(),
          [](const MinimalUnit* a, const MinimalUnit* b) {
            return a->src_positions.size() < b->src_positions.size();
          }));
    }
  }

  std::sort(chosen.begin(), chosen.end(),
            [](const MinimalUnit* a, const MinimalUnit* b) {
              return a->src_positions.front() < b->src_positions.front();
            });
  for (const MinimalUnit* u : chosen) {
    plan.unit_choices.push_back(*u);
    plan.n_replaced += u->src_positions.size();
  }
  return plan;
}

Sentence ApplyPlan(const Triple& triple, const ReplacementPlan& plan) {
  const Sentence& matrix = Matrix(triple);
  if (plan.skipped()) return matrix;

  // unit index + 1 per matrix position, 0 when untouched.
  std::vector<size_t> owner(matrix.size(), 0);
  for (size_t u = 0; u < plan.unit_choices.size(); ++u) {
    const MinimalUnit& unit = plan.unit_choices[u];
    if (unit.src_positions.empty() || unit.tgt_positions.empty()) {
      throw DataError("plan for '" + triple.id + "' has an empty unit");
    }
    for (size_t i : unit.src_positions) {
      if (i >= matrix.size() || owner[i] != 0) {
        throw DataError("plan for '" + triple.id +
                        "' has a bad matrix position " + std::to_string(i));
      }
      owner[i] = u + 1;
    }
    for (size_t j : unit.tgt_positions) {
      if (j >= triple.english.size()) {
        throw DataError("plan for '" + triple.id +
                        "' has a bad embedded position " + std::to_string(j));
      }
    }
  }

  std::vector<std::string> out;
  out.reserve(matrix.size());
  for (size_t i = 0; i < matrix.size(); ++i) {
    if (owner[i] == 0) {
      out.push_back(matrix.tokens[i]);
      continue;
    }
    const MinimalUnit& unit = plan.unit_choices[owner[i] - 1];
    if (i != unit.src_positions.front()) continue;
    for (size_t j : unit.tgt_positions) out.push_back(triple.english.tokens[j]);
  }
  return Sentence::FromTokens(std::move(out));
}

std::string GenerationReport::ToJson() const {
  nlohmann::ordered_json obj;
  obj["generated"] = generated;
  obj["skipped_no_units"] = skipped_no_units;
  obj["skipped_guard"] = skipped_guard;
  obj["existing"] = existing;
  obj["mean_replaced_fraction"] = mean_replaced_fraction;
  return obj.dump(2) + "\n";
}

std::vector<Triple> GenerationOutput::Corpus(bool include_skipped) const {
  std::vector<Triple> out;
  for (size_t i = 0; i < triples.size(); ++i) {
    if (status[i] == RecordStatus::kGenerated ||
        status[i] == RecordStatus::kExisting) {
      out.push_back(triples[i]);
    } else if (include_skipped) {
      Triple t = triples[i];
      t.cmx = t.hindi_roman;
      t.synthetic = true;
      out.push_back(std::move(t));
    }
  }
  return out;
}

GenerationOutput GenerateCorpus(const std::vector<Triple>& triples,
                                const TranslationTable& forward,
                                const TranslationTable& reverse,
                                const GenerationConfig& config) {
  GenerationOutput output;
  output.triples = triples;
  output.status.resize(triples.size());
  output.plans.resize(triples.size());
  std::vector<std::optional<Sentence>> rendered(triples.size());

  ParallelFor(triples.size(), config.jobs, [&](size_t i) {
    const Triple& t = triples[i];
    const Sentence& matrix = Matrix(t);
    const ParallelPair fwd_pair{matrix, t.english, "", "", t.domain, t.id};
    const ParallelPair rev_pair{t.english, matrix, "", "", t.domain, t.id};
    const AlignmentMatrix links =
        Symmetrize(ViterbiAlign(fwd_pair, forward),
                   ViterbiAlign(rev_pair, reverse), config.symmetrize);
    ReplacementPlan plan =
        PlanReplacements(t, ExtractMinimalUnits(links), config.options,
                         DeriveSeed(config.seed, t.id));
    if (!plan.skipped()) rendered[i] = ApplyPlan(t, plan);
    output.plans[i] = std::move(plan);
  });

  double fraction_sum = 0.0;
  for (size_t i = 0; i < triples.size(); ++i) {
    Triple& t = output.triples[i];
    const ReplacementPlan& plan = output.plans[i];
    if (t.cmx && !config.overwrite_existing) {
      output.status[i] = RecordStatus::kExisting;
      ++output.report.existing;
      if (rendered[i]) output.gold_check.emplace_back(rendered[i]->raw, t.cmx->raw);
      continue;
    }
    switch (plan.status) {
      case PlanStatus::kOk:
        output.status[i] = RecordStatus::kGenerated;
        ++output.report.generated;
        fraction_sum += static_cast<double>(plan.n_replaced) /
                        static_cast<double>(plan.n_tokens);
        t.cmx = rendered[i];
        t.synthetic = true;
        break;
      case PlanStatus::kSkipNoUnits:
        output.status[i] = RecordStatus::kSkipNoUnits;
        ++output.report.skipped_no_units;
        t.cmx.reset();
        break;
      case PlanStatus::kSkipGuard:
        output.status[i] = RecordStatus::kSkipGuard;
        ++output.report.skipped_guard;
        t.cmx.reset();
        break;
    }
  }
  if (output.report.generated > 0) {
    output.report.mean_replaced_fraction =
        fraction_sum / static_cast<double>(output.report.generated);
  }
  return output;
}

}  // namespace cmx
