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


// Curriculum construction: orders parallel pairs into token-budgeted
// batches by domain.

#ifndef CMX_SCHEDULE_H_
#define CMX_SCHEDULE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cmx/corpus.h"

namespace cmx {

enum class StrategyKind { kPretrainFinetune, kTargetFirst, kShuffled };
enum class Phase { kPretrain, kFinetune, kSingle };

std::string_view StrategyName(StrategyKind kind);
// Throws UsageError on an unknown name.
StrategyKind ParseStrategy(std::string_view name);
std::string_view PhaseName(Phase phase);

struct CurriculumStrategy {
  StrategyKind kind = StrategyKind::kTargetFirst;
  // target_first only: fraction of target groups placed at the front; the
  // rest are shuffled in with the non-target groups. 1 puts all of them
  // first. Must be in (0, 1].
  double target_fraction_position = 1.0;
  std::uint64_t seed = 0;
};

struct Batch {
  // Indices into the input pair list.
  std::vector<size_t> pairs;
  size_t token_count = 0;
  Phase phase = Phase::kSingle;
  size_t index = 0;
};

struct Curriculum {
  std::vector<Batch> batches;
  std::string manifest_hash;

  // JSONL, one line per batch: {index, phase, pair_ids, token_count}.
  std::string Manifest(const std::vector<ParallelPair>& pairs) const;
};

// Token cost of a pair; defaults to max(|src|, |tgt|) whitespace tokens.
using PairCost = std::function<size_t(const ParallelPair&)>;
size_t WhitespaceCost(const ParallelPair& pair);

// Greedy fill over item costs in order: a batch is closed when the next
// item would push it over the budget. An item larger than the budget gets
// a batch of its own. Returns item index lists.
std::vector<std::vector<size_t>> GreedyFill(const std::vector<size_t>& costs,
                                            size_t budget);

// Pair-level batching of an ordered list. Throws UsageError if budget == 0.
std::vector<Batch> BatchByTokens(const std::vector<ParallelPair>& pairs,
                                 size_t budget, Phase phase = Phase::kSingle,
                                 const PairCost& cost = WhitespaceCost);

// Consecutive pairs sharing an origin_id form one atomic group that is
// shuffled and batched as a unit. Throws DataError when the pairs carry
// more than one target domain, or when pretrain_finetune / target_first
// find no target pairs.
Curriculum BuildCurriculum(const std::vector<ParallelPair>& pairs,
                           const CurriculumStrategy& strategy,
                           size_t budget = 4096,
                           const PairCost& cost = WhitespaceCost);

}  // namespace cmx

#endif  // CMX_SCHEDULE_H_
