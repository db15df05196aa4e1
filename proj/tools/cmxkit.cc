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


// Command-line driver for the cmxkit pipeline.
//
//   cmxkit --config run.json run
//   cmxkit --config run.json --seed 7 generate
//   cmxkit score --hyp out.txt --ref gold.txt

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmx/digest.h"
#include "cmx/error.h"
#include "cmx/metrics.h"
#include "cmx/pipeline.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct GlobalFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string output_dir;
  std::string table;
  std::string hyp;
  std::string ref;
  std::vector<std::string> stages;
};

cmx::RunConfig ResolveConfig(const GlobalFlags& f) {
  if (f.config.empty()) throw cmx::UsageError("--config is required");
  cmx::RunConfig c = cmx::RunConfig::Load(f.config);
  if (f.seed) c.seed = *f.seed;
  if (f.jobs) {
    if (*f.jobs < 1) throw cmx::UsageError("--jobs must be at least 1");
    c.jobs = *f.jobs;
  }
  if (!f.output_dir.empty()) c.paths.output_dir = fs::absolute(f.output_dir).lexically_normal();
  if (!f.table.empty()) c.paths.translit_table = fs::absolute(f.table).lexically_normal();
  if (!f.hyp.empty()) c.paths.score_hyp = fs::absolute(f.hyp).lexically_normal();
  if (!f.ref.empty()) c.paths.score_ref = fs::absolute(f.ref).lexically_normal();
  return c;
}

void Print(const cmx::StageResult& r) {
  std::cout << r.stage << ": " << r.summary << "\n";
}

int Dispatch(const std::string& command, const GlobalFlags& flags) {
  if (command == "score" && flags.config.empty()) {
    // Standalone scoring of two text files.
    if (flags.hyp.empty() || flags.ref.empty()) {
      throw cmx::UsageError("score needs --config or both --hyp and --ref");
    }
    const auto report =
        cmx::Score(cmx::ReadLines(cmx::ReadFile(flags.hyp)),
                   cmx::ReadLines(cmx::ReadFile(flags.ref)), flags.jobs.value_or(1));
    if (flags.output_dir.empty()) {
      std::cout << report.ToJson();
    } else {
      cmx::WriteFile(fs::path(flags.output_dir) / "score_report.json", report.ToJson());
    }
    return 0;
  }
  const cmx::RunConfig config = ResolveConfig(flags);
  if (command == "run") {
    std::vector<std::string> stages = flags.stages;
    if (stages.empty()) stages.assign(cmx::kStages.begin(), cmx::kStages.end());
    for (const auto& r : cmx::RunPipeline(config, stages)) Print(r);
    return 0;
  }
  Print(cmx::RunStage(command, config));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmxkit: Hindi-English code-mixing data pipeline"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--config", flags.config, "JSON run configuration");
  app.add_option("--seed", flags.seed, "Override the configured seed");
  app.add_option("--jobs", flags.jobs, "Worker threads");
  app.add_option("--output-dir", flags.output_dir, "Override paths.output_dir");

  for (std::string_view stage : cmx::kStages) {
    CLI::App* sub = app.add_subcommand(std::string(stage), "Run the " +
                                                               std::string(stage) +
                                                               " stage");
    if (stage == "translit") {
      sub->add_option("--table", flags.table, "Transliteration table JSON");
    } else if (stage == "score") {
      sub->add_option("--hyp", flags.hyp, "Hypotheses, one per line");
      sub->add_option("--ref", flags.ref, "References, one per line");
    }
  }
  CLI::App* run = app.add_subcommand("run", "Run several stages in order");
  run->add_option("--stages", flags.stages, "Comma-separated stage list (default: all)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return Dispatch(command, flags);
  } catch (const cmx::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cmx::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
