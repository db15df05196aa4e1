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


#include "cmx/schedule.h"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "cmx/digest.h"
#include "cmx/error.h"
#include "cmx/rng.h"

namespace cmx {
namespace {

struct Group {
  std::vector<size_t> pairs;
  size_t cost = 0;
  bool target = false;
};

std::vector<Group> FormGroups(const std::vector<ParallelPair>& pairs,
                              const PairCost& cost) {
  std::vector<Group> groups;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const bool join = i > 0 && !groups.empty() &&
                      pairs[i].origin_id == pairs[i - 1].origin_id;
    if (!join) groups.push_back({{}, 0, pairs[i].domain.is_target});
    groups.back().pairs.push_back(i);
    groups.back().cost += cost(pairs[i]);
    groups.back().target = groups.back().target || pairs[i].domain.is_target;
  }
  return groups;
}

// Batches a run of groups and appends to `out`.
void EmitBatches(const std::vector<Group>& groups, size_t budget, Phase phase,
                 std::vector<Batch>& out) {
  std::vector<size_t> costs;
  costs.reserve(groups.size());
  for (const auto& g : groups) costs.push_back(g.cost);
  for (const auto& members : GreedyFill(costs, budget)) {
    Batch b;
    b.phase = phase;
    b.index = out.size();
    for (size_t gi : members) {
      b.pairs.insert(b.pairs.end(), groups[gi].pairs.begin(),
                     groups[gi].pairs.end());
      b.token_count += groups[gi].cost;
    }
    out.push_back(std::move(b));
  }
}

void ShuffleGroups(std::vector<Group>& groups, Rng& rng) {
  rng.Shuffle(std::span<Group>(groups));
}

}  // namespace

std::string_view StrategyName(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kPretrainFinetune:
      return "pretrain_finetune";
    case StrategyKind::kTargetFirst:
      return "target_first";
    case StrategyKind::kShuffled:
      return "shuffled";
  }
  return "shuffled";
}

StrategyKind ParseStrategy(std::string_view name) {
  for (auto k : {StrategyKind::kPretrainFinetune, StrategyKind::kTargetFirst,
                 StrategyKind::kShuffled}) {
    if (StrategyName(k) == name) return k;
  }
  throw UsageError("unknown schedule strategy '" + std::string(name) +
                   "' (expected pretrain_finetune, target_first or shuffled)");
}

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kPretrain:
      return "pretrain";
    case Phase::kFinetune:
      return "finetune";
    case Phase::kSingle:
      return "single";
  }
  return "single";
}

size_t WhitespaceCost(const ParallelPair& pair) {
  return std::max(pair.src.size(), pair.tgt.size());
}

std::vector<std::vector<size_t>> GreedyFill(const std::vector<size_t>& costs,
                                            size_t budget) {
  if (budget == 0) throw UsageError("batch budget must be at least 1");
  std::vector<std::vector<size_t>> out;
  size_t used = 0;
  for (size_t i = 0; i < costs.size(); ++i) {
    if (out.empty() || used + costs[i] > budget) {
      out.emplace_back();
      used = 0;
    }
    out.back().push_back(i);
    used += costs[i];
  }
  return out;
}

std::vector<Batch> BatchByTokens(const std::vector<ParallelPair>& pairs,
                                 size_t budget, Phase phase,
                                 const PairCost& cost) {
  std::vector<size_t> costs;
  costs.reserve(pairs.size());
  for (const auto& p : pairs) costs.push_back(cost(p));
  std::vector<Batch> out;
  for (auto& members : GreedyFill(costs, budget)) {
    Batch b;
    b.phase = phase;
    b.index = out.size();
    for (size_t i : members) b.token_count += costs[i];
    b.pairs = std::move(members);
    out.push_back(std::move(b));
  }
  return out;
}

Curriculum BuildCurriculum(const std::vector<ParallelPair>& pairs,
                           const CurriculumStrategy& strategy, size_t budget,
                           const PairCost& cost) {
  if (budget == 0) throw UsageError("batch budget must be at least 1");
  if (!(strategy.target_fraction_position > 0.0 &&
        strategy.target_fraction_position <= 1.0)) {
    throw UsageError("target_fraction_position must be in (0, 1]");
  }
  std::string target_domain;
  for (const auto& p : pairs) {
    if (!p.domain.is_target) continue;
    if (!target_domain.empty() && target_domain != p.domain.name) {
      throw DataError("more than one target domain: '" + target_domain +
                      "' and '" + p.domain.name + "'");
    }
    target_domain = p.domain.name;
  }
  const bool needs_target = strategy.kind != StrategyKind::kShuffled;
  if (needs_target && target_domain.empty()) {
    throw DataError(std::string(StrategyName(strategy.kind)) +
                    " needs target-domain pairs, found none");
  }

  std::vector<Group> groups = FormGroups(pairs, cost);
  std::vector<Group> target, rest;
  for (auto& g : groups) (g.target ? target : rest).push_back(std::move(g));

  Rng rng(strategy.seed);
  Curriculum c;
  switch (strategy.kind) {
    case StrategyKind::kShuffled: {
      std::vector<Group> all = FormGroups(pairs, cost);
      ShuffleGroups(all, rng);
      EmitBatches(all, budget, Phase::kSingle, c.batches);
      break;
    }
    case StrategyKind::kPretrainFinetune:
      ShuffleGroups(rest, rng);
      ShuffleGroups(target, rng);
      EmitBatches(rest, budget, Phase::kPretrain, c.batches);
      EmitBatches(target, budget, Phase::kFinetune, c.batches);
      break;
    case StrategyKind::kTargetFirst: {
      ShuffleGroups(target, rng);
      const size_t front = static_cast<size_t>(std::ceil(
          strategy.target_fraction_position * static_cast<double>(target.size())));
      std::vector<Group> head(target.begin(), target.begin() + front);
      rest.insert(rest.end(), target.begin() + front, target.end());
      ShuffleGroups(rest, rng);
      EmitBatches(head, budget, Phase::kSingle, c.batches);
      EmitBatches(rest, budget, Phase::kSingle, c.batches);
      break;
    }
  }
  c.manifest_hash = Sha256Hex(c.Manifest(pairs));
  return c;
}

std::string Curriculum::Manifest(const std::vector<ParallelPair>& pairs) const {
  std::string out;
  for (const auto& b : batches) {
    nlohmann::ordered_json line;
    line["index"] = b.index;
    line["phase"] = PhaseName(b.phase);
    nlohmann::json ids = nlohmann::json::array();
    for (size_t i : b.pairs) ids.push_back(pairs.at(i).PairId());
    line["pair_ids"] = std::move(ids);
    line["token_count"] = b.token_count;
    out += line.dump() + "\n";
  }
  return out;
}

}  // namespace cmx
