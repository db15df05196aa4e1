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


// Run configuration and the stage driver. Each stage reads artifacts from
// the output directory, writes its own, and records a manifest with input
// and output digests plus a snapshot of the configuration.

#ifndef CMX_PIPELINE_H_
#define CMX_PIPELINE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cmx/cmxgen.h"
#include "cmx/corpus.h"

namespace cmx {

inline constexpr std::array<std::string_view, 9> kStages = {
    "translit", "lid-report", "align",     "generate", "clean",
    "subword",  "schedule",   "train-toy", "score"};

struct RunConfig {
  struct Paths {
    std::filesystem::path corpus;
    // Optional: parallel pairs for the clean stage instead of arranging
    // them from the generated corpus.
    std::filesystem::path pairs;
    std::filesystem::path translit_table;
    std::filesystem::path lexicon_en;
    std::filesystem::path lexicon_hi;
    std::filesystem::path output_dir;
    // Optional: score these files instead of the generation gold check.
    std::filesystem::path score_hyp;
    std::filesystem::path score_ref;

    bool operator==(const Paths&) const = default;
  };
  struct Corpus {
    std::string target_domain;
    std::vector<std::string> domains;

    bool operator==(const Corpus&) const = default;
  };
  struct Align {
    int iterations = 5;
    bool use_null = true;
    std::string symmetrize = "intersection";

    bool operator==(const Align&) const = default;
  };
  struct Generation {
    GenerationOptions options;
    bool include_skipped = false;
    bool overwrite_existing = false;

    bool operator==(const Generation&) const = default;
  };
  struct Schedule {
    std::string strategy = "target_first";
    size_t budget = 4096;
    double target_fraction_position = 1.0;

    bool operator==(const Schedule&) const = default;
  };
  struct Objective {
    double lambda = 10.0;
    double lr = 0.1;
    size_t steps = 200;
    size_t d = 16;
    size_t vocab_size = 2000;
    bool ce_enabled = false;

    bool operator==(const Objective&) const = default;
  };

  Paths paths;
  std::uint64_t seed = 0;
  int subtask = 1;
  int jobs = 1;
  Corpus corpus;
  Align align;
  Generation generation;
  CleanOptions cleaning;
  Schedule schedule;
  Objective objective;

  // Relative paths are resolved against base_dir. Unknown keys, wrong types
  // and a missing seed are UsageErrors.
  static RunConfig FromJson(const nlohmann::json& j,
                            const std::filesystem::path& base_dir);
  static RunConfig Load(const std::filesystem::path& path);
  // Paths are written as stored (absolute after FromJson/Load).
  nlohmann::ordered_json ToJson() const;

  bool operator==(const RunConfig&) const = default;
};

struct StageResult {
  std::string stage;
  std::vector<std::filesystem::path> outputs;
  // Short human-readable line for the console.
  std::string summary;
};

bool IsStage(std::string_view name);

// Throws UsageError for an unknown stage or a missing upstream artifact
// (naming the stage to run first), DataError for bad data.
StageResult RunStage(std::string_view stage, const RunConfig& config);

std::vector<StageResult> RunPipeline(const RunConfig& config,
                                     const std::vector<std::string>& stages);

std::filesystem::path ManifestPath(const RunConfig& config,
                                   std::string_view stage);

}  // namespace cmx

#endif  // CMX_PIPELINE_H_
