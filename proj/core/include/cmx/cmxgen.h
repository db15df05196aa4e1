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

// Synthetic code-mixed sentence generation. The romanized Hindi sentence is
// the matrix; minimal alignment units of it are swapped for their aligned
// English segments.

#ifndef CMX_CMXGEN_H_
#define CMX_CMXGEN_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cmx/align.h"
#include "cmx/corpus.h"

namespace cmx {

enum class PlanStatus { kOk, kSkipNoUnits, kSkipGuard };

struct ReplacementPlan {
  std::string triple_id;
  // Chosen units, ordered by first source position.
  std::vector<MinimalUnit> unit_choices;
  size_t n_tokens = 0;
  // Matrix tokens covered by the chosen units.
  size_t n_replaced = 0;
  std::uint64_t seed = 0;
  PlanStatus status = PlanStatus::kOk;

  bool skipped() const { return status != PlanStatus::kOk; }
};

struct GenerationOptions {
  double rate = 0.15;
  size_t short_len = 7;

  bool operator==(const GenerationOptions&) const = default;
};

// round(rate * n_tokens), halves away from zero, at least 1.
size_t ReplacementTarget(size_t n_tokens, double rate);

// Embedded-language tokens must stay below ceil(n_tokens / 2).
bool SatisfiesMatrixGuard(size_t n_tokens, size_t embedded_tokens);

// Units are over (matrix = hindi_roman, embedded = english). Units touching a
// non-linguistic token on either side are ineligible, as are units that
// alone would break the matrix guard.
//  - n_tokens < short_len: exactly one unit, uniform over eligible units.
//  - otherwise: units are drawn in seeded random order and taken until the
//    next one would push the covered count past ReplacementTarget or break
//    the guard. If the very first draw overshoots, the smallest eligible
//    unit is taken instead so the plan is never empty.
// Throws DataError when hindi_roman is missing.
ReplacementPlan PlanReplacements(const Triple& triple,
                                 const std::vector<MinimalUnit>& units,
                                 const GenerationOptions& options,
                                 std::uint64_t seed);

// Replaces each chosen unit's matrix tokens with its English tokens (in
// English order) at the unit's first matrix position. A skipped plan returns
// the matrix sentence. Throws DataError on out-of-range positions.
Sentence ApplyPlan(const Triple& triple, const ReplacementPlan& plan);

enum class RecordStatus { kGenerated, kSkipNoUnits, kSkipGuard, kExisting };

struct GenerationConfig {
  GenerationOptions options;
  std::uint64_t seed = 0;
  SymmetrizeMode symmetrize = SymmetrizeMode::kIntersection;
  // Triples that already carry a cmx sentence are passed through unless set.
  bool overwrite_existing = false;
  int jobs = 1;
};

struct GenerationReport {
  size_t generated = 0;
  size_t skipped_no_units = 0;
  size_t skipped_guard = 0;
  size_t existing = 0;
  // Mean of n_replaced / n_tokens over generated records.
  double mean_replaced_fraction = 0.0;

  std::string ToJson() const;
};

struct GenerationOutput {
  // Same order as the input. Generated records get cmx + synthetic=true;
  // skipped ones keep cmx unset.
  std::vector<Triple> triples;
  std::vector<RecordStatus> status;
  std::vector<ReplacementPlan> plans;
  // (synthetic rendering, gold cmx) for records that already had a cmx
  // sentence and could be generated.
  std::vector<std::pair<std::string, std::string>> gold_check;
  GenerationReport report;

  // Generated and existing records; skipped ones are added (cmx = matrix
  // sentence) only when include_skipped is set.
  std::vector<Triple> Corpus(bool include_skipped) const;
};

// Per-record seeds are DeriveSeed(config.seed, triple.id), so the output
// does not depend on worker count or visiting order.
GenerationOutput GenerateCorpus(const std::vector<Triple>& triples,
                                const TranslationTable& forward,
                                const TranslationTable& reverse,
                                const GenerationConfig& config);

}  // namespace cmx

#endif  // CMX_CMXGEN_H_
