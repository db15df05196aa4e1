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


#include "cmx/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "cmx/align.h"
#include "cmx/digest.h"
#include "cmx/error.h"
#include "cmx/lid.h"
#include "cmx/metrics.h"
#include "cmx/objective.h"
#include "cmx/rng.h"
#include "cmx/schedule.h"
#include "cmx/subword.h"
#include "cmx/translit.h"

namespace cmx {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Artifact names inside the output directory.
constexpr const char* kTranslitOut = "translit.jsonl";
constexpr const char* kLidJson = "lid_report.json";
constexpr const char* kLidText = "lid_report.txt";
constexpr const char* kAlignFwd = "align.fwd.tsv";
constexpr const char* kAlignRev = "align.rev.tsv";
constexpr const char* kAlignPharaoh = "align.pharaoh";
constexpr const char* kGenerated = "generated.jsonl";
constexpr const char* kGenerateReport = "generate_report.json";
constexpr const char* kGoldHyp = "gold_check.hyp.txt";
constexpr const char* kGoldRef = "gold_check.ref.txt";
constexpr const char* kCleanPairs = "pairs.clean.jsonl";
constexpr const char* kCleanReport = "clean_report.json";
constexpr const char* kMerges = "bpe.merges";
constexpr const char* kVocab = "bpe.vocab";
constexpr const char* kCurriculum = "curriculum.jsonl";
constexpr const char* kTrainLog = "train_log.csv";
constexpr const char* kScoreReport = "score_report.json";

constexpr size_t kHeldoutPerDomain = 32;

void CheckKeys(const json& obj, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  if (!obj.is_object()) throw UsageError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw UsageError("unknown config key '" + where + key + "'");
    }
  }
}

template <typename T>
void Read(const json& obj, const char* key, T& out, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw UsageError("config key '" + where + key + "' has the wrong type");
  }
}

void ReadPath(const json& obj, const char* key, fs::path& out,
              const fs::path& base) {
  std::string s;
  Read(obj, key, s, "paths.");
  if (s.empty()) {
    out.clear();
    return;
  }
  out = (base / fs::path(s)).lexically_normal();
}

SymmetrizeMode ParseSymmetrize(const std::string& name) {
  if (name == "intersection") return SymmetrizeMode::kIntersection;
  if (name == "grow-diag") return SymmetrizeMode::kGrowDiag;
  throw UsageError("unknown symmetrize mode '" + name +
                   "' (expected intersection or grow-diag)");
}

class StageContext {
 public:
  StageContext(std::string stage, const RunConfig& config)
      : stage_(std::move(stage)), config_(config) {
    if (config.paths.output_dir.empty()) {
      throw UsageError("paths.output_dir is not set");
    }
  }

  fs::path Out(const char* name) const { return config_.paths.output_dir / name; }

  // Upstream artifact produced by `producer`.
  fs::path Need(const char* name, const char* producer) {
    const fs::path p = Out(name);
    if (!fs::exists(p)) {
      throw UsageError("stage '" + stage_ + "' needs " + p.string() +
                       "; run stage '" + producer + "' first");
    }
    inputs_[name] = p;
    return p;
  }

  // User-supplied input from the config.
  fs::path External(const char* key, const fs::path& p) {
    if (p.empty()) {
      throw UsageError("stage '" + stage_ + "' needs paths." + key);
    }
    if (!fs::exists(p)) {
      throw DataError("paths." + std::string(key) + ": no such file " +
                      p.string());
    }
    inputs_[key] = p;
    return p;
  }

  void Write(const char* name, std::string_view data) {
    const fs::path p = Out(name);
    WriteFile(p, data);
    outputs_.push_back(p);
  }

  StageResult Finish(std::string summary,
                     nlohmann::ordered_json stats = nullptr) {
    nlohmann::ordered_json m;
    m["stage"] = stage_;
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& [name, p] : inputs_) in[name] = Sha256File(p);
    m["inputs"] = std::move(in);
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& p : outputs_) out[p.filename().string()] = Sha256File(p);
    m["outputs"] = std::move(out);
    if (!stats.is_null()) m["stats"] = std::move(stats);
    m["config"] = config_.ToJson();
    WriteFile(ManifestPath(config_, stage_), m.dump(2) + "\n");
    return {stage_, outputs_, std::move(summary)};
  }

  const RunConfig& config() const { return config_; }

 private:
  std::string stage_;
  const RunConfig& config_;
  std::map<std::string, fs::path> inputs_;
  std::vector<fs::path> outputs_;
};

CorpusSchema Schema(const RunConfig& c) {
  return {c.corpus.target_domain, c.corpus.domains};
}

std::string Lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::string Format(const char* fmt, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

StageResult StageTranslit(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const auto triples = LoadCorpus(ctx.External("corpus", c.paths.corpus), Schema(c));
  const TranslitTable table =
      LoadTranslitTable(ctx.External("translit_table", c.paths.translit_table));
  const auto out = TransliterateCorpus(triples, table, c.jobs);
  ctx.Write(kTranslitOut, SerializeCorpus(out));
  return ctx.Finish("transliterated " + std::to_string(out.size()) +
                    " records with table " + table.name);
}

StageResult StageLidReport(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const auto triples = LoadCorpus(ctx.External("corpus", c.paths.corpus), Schema(c));
  const Lexicons lex =
      Lexicons::Load(ctx.External("lexicon_en", c.paths.lexicon_en),
                     ctx.External("lexicon_hi", c.paths.lexicon_hi));
  std::vector<Sentence> sentences;
  for (const auto& t : triples) {
    if (t.cmx && !t.cmx->empty()) sentences.push_back(*t.cmx);
  }
  if (sentences.empty()) {
    throw DataError("lid-report: the corpus has no cmx sentences");
  }
  const MatrixRatioReport report = MatrixRatio(sentences, lex);
  ctx.Write(kLidJson, report.ToJson());
  ctx.Write(kLidText, report.ToText());
  return ctx.Finish(Format("matrix language: hindi %.1f%%, english %.1f%%",
                           report.hindi_pct, report.english_pct));
}

StageResult StageAlign(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const auto triples = LoadCorpus(ctx.Need(kTranslitOut, "translit"), Schema(c));
  std::vector<ParallelPair> fwd, rev;
  for (const auto& t : triples) {
    if (!t.hindi_roman) {
      throw DataError("triple '" + t.id + "' has no hi_roman sentence");
    }
    fwd.push_back({*t.hindi_roman, t.english, std::string(kLangHindiRoman),
                   std::string(kLangEnglish), t.domain, t.id});
    rev.push_back({t.english, *t.hindi_roman, std::string(kLangEnglish),
                   std::string(kLangHindiRoman), t.domain, t.id});
  }
  const Ibm1Options options{c.align.iterations, c.align.use_null, c.jobs};
  const Ibm1Result f = TrainIbm1(fwd, options);
  const Ibm1Result r = TrainIbm1(rev, options);
  const SymmetrizeMode mode = ParseSymmetrize(c.align.symmetrize);
  std::string pharaoh;
  for (size_t i = 0; i < fwd.size(); ++i) {
    pharaoh += Symmetrize(ViterbiAlign(fwd[i], f.table),
                          ViterbiAlign(rev[i], r.table), mode)
                   .ToPharaoh() +
               "\n";
  }
  ctx.Write(kAlignFwd, f.table.ToTsv());
  ctx.Write(kAlignRev, r.table.ToTsv());
  ctx.Write(kAlignPharaoh, pharaoh);
  return ctx.Finish(Format("log-likelihood forward %.4f, reverse %.4f",
                           f.log_likelihood.back(), r.log_likelihood.back()));
}

StageResult StageGenerate(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const auto triples = LoadCorpus(ctx.Need(kTranslitOut, "translit"), Schema(c));
  const auto fwd = TranslationTable::FromTsv(ReadFile(ctx.Need(kAlignFwd, "align")));
  const auto rev = TranslationTable::FromTsv(ReadFile(ctx.Need(kAlignRev, "align")));
  GenerationConfig g;
  g.options = c.generation.options;
  g.seed = DeriveSeed(c.seed, "generate");
  g.symmetrize = ParseSymmetrize(c.align.symmetrize);
  g.overwrite_existing = c.generation.overwrite_existing;
  g.jobs = c.jobs;
  const GenerationOutput out = GenerateCorpus(triples, fwd, rev, g);
  std::vector<std::string> hyp, ref;
  for (const auto& [h, r] : out.gold_check) {
    hyp.push_back(h);
    ref.push_back(r);
  }
  ctx.Write(kGenerated, SerializeCorpus(out.Corpus(c.generation.include_skipped)));
  ctx.Write(kGenerateReport, out.report.ToJson());
  ctx.Write(kGoldHyp, Lines(hyp));
  ctx.Write(kGoldRef, Lines(ref));
  const auto& rep = out.report;
  return ctx.Finish("generated " + std::to_string(rep.generated) + ", existing " +
                    std::to_string(rep.existing) + ", skipped " +
                    std::to_string(rep.skipped_no_units + rep.skipped_guard));
}

StageResult StageClean(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  std::vector<ParallelPair> pairs;
  if (!c.paths.pairs.empty()) {
    pairs = LoadPairs(ctx.External("pairs", c.paths.pairs), c.corpus.target_domain);
  } else {
    pairs = ArrangePairs(LoadCorpus(ctx.Need(kGenerated, "generate"), Schema(c)),
                         c.subtask);
  }
  const CleanResult r = CleanCorpus(pairs, c.cleaning, c.jobs);
  nlohmann::ordered_json report;
  report["input"] = pairs.size();
  report["kept"] = r.kept.size();
  nlohmann::ordered_json dropped;
  for (auto reason : {DropReason::kTooShort, DropReason::kTooLong, DropReason::kRatio}) {
    dropped[std::string(DropReasonName(reason))] = r.counts[static_cast<size_t>(reason)];
  }
  report["dropped"] = std::move(dropped);
  ctx.Write(kCleanPairs, SerializePairs(r.kept));
  ctx.Write(kCleanReport, report.dump(2) + "\n");
  return ctx.Finish("kept " + std::to_string(r.kept.size()) + " of " +
                        std::to_string(pairs.size()) + " pairs",
                    std::move(report));
}

std::vector<ParallelPair> CleanPairs(StageContext& ctx) {
  return LoadPairs(ctx.Need(kCleanPairs, "clean"), ctx.config().corpus.target_domain);
}

StageResult StageSubword(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const auto pairs = CleanPairs(ctx);
  std::vector<std::string> lines;
  for (const auto& p : pairs) {
    lines.push_back(p.src.raw);
    lines.push_back(p.tgt.raw);
  }
  const MergeList m = LearnBpeVocab(lines, c.objective.vocab_size, c.jobs);
  ctx.Write(kMerges, m.MergesText());
  ctx.Write(kVocab, m.VocabText());
  return ctx.Finish(std::to_string(m.merges.size()) + " merges, vocabulary " +
                    std::to_string(m.Vocab().size()));
}

MergeList LoadMerges(StageContext& ctx) {
  return MergeList::FromText(ReadFile(ctx.Need(kMerges, "subword")),
                             ReadFile(ctx.Need(kVocab, "subword")));
}

StageResult StageSchedule(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const auto pairs = CleanPairs(ctx);
  const BpeEncoder encoder(LoadMerges(ctx));
  CurriculumStrategy strategy;
  strategy.kind = ParseStrategy(c.schedule.strategy);
  strategy.target_fraction_position = c.schedule.target_fraction_position;
  strategy.seed = DeriveSeed(c.seed, "schedule");
  const Curriculum cur = BuildCurriculum(
      pairs, strategy, c.schedule.budget, [&](const ParallelPair& p) {
        return std::max(encoder.Encode(p.src.raw).size(),
                        encoder.Encode(p.tgt.raw).size());
      });
  ctx.Write(kCurriculum, cur.Manifest(pairs));
  return ctx.Finish(std::to_string(cur.batches.size()) +
                    " batches, manifest sha256 " + cur.manifest_hash);
}

Curriculum ParseCurriculum(std::string_view text,
                           const std::vector<ParallelPair>& pairs) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (!index.emplace(pairs[i].PairId(), i).second) {
      throw DataError("duplicate pair id '" + pairs[i].PairId() + "'");
    }
  }
  Curriculum c;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      Batch b;
      b.index = j.at("index").get<size_t>();
      const std::string phase = j.at("phase").get<std::string>();
      b.phase = phase == "pretrain"   ? Phase::kPretrain
                : phase == "finetune" ? Phase::kFinetune
                                      : Phase::kSingle;
      b.token_count = j.at("token_count").get<size_t>();
      for (const auto& id : j.at("pair_ids")) {
        auto it = index.find(id.get<std::string>());
        if (it == index.end()) {
          throw DataError("unknown pair id '" + id.get<std::string>() + "'");
        }
        b.pairs.push_back(it->second);
      }
      c.batches.push_back(std::move(b));
    } catch (const json::exception& e) {
      throw DataError("curriculum line " + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return c;
}

StageResult StageTrainToy(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  const auto pairs = CleanPairs(ctx);
  const MergeList merges = LoadMerges(ctx);
  const Curriculum cur =
      ParseCurriculum(ReadFile(ctx.Need(kCurriculum, "schedule")), pairs);
  const auto vocab = merges.Vocab();
  std::map<std::string, int> ids;
  for (size_t i = 0; i < vocab.size(); ++i) ids.emplace(vocab[i], static_cast<int>(i));
  const int unk = ids.at("<unk>");
  const BpeEncoder encoder(merges);
  auto to_ids = [&](const Sentence& s) {
    TokenIds out;
    for (const auto& tok : encoder.Encode(s.raw)) {
      auto it = ids.find(tok);
      out.push_back(it == ids.end() ? unk : it->second);
    }
    return out;
  };
  std::vector<TrainExample> data;
  std::map<std::string, size_t> per_domain;
  std::vector<TrainExample> heldout;
  for (const auto& p : pairs) {
    data.push_back({{to_ids(p.src), to_ids(p.tgt)}, p.domain.name});
    if (per_domain[p.domain.name]++ < kHeldoutPerDomain) heldout.push_back(data.back());
  }
  ToyEncoderParams params = ToyEncoderParams::Random(
      vocab.size(), c.objective.d, DeriveSeed(c.seed, "train-toy"));
  CeHead head = CeHead::Random(vocab.size(), c.objective.d,
                               DeriveSeed(c.seed, "train-toy-head"));
  TrainConfig tc;
  tc.lr = c.objective.lr;
  tc.steps = c.objective.steps;
  tc.lambda = c.objective.lambda;
  tc.ce_enabled = c.objective.ce_enabled;
  tc.jobs = c.jobs;
  const TrainLog log = TrainToy(cur, data, heldout, params,
                                c.objective.ce_enabled ? &head : nullptr, tc);
  ctx.Write(kTrainLog, log.ToCsv());
  const auto& last = log.heldout.back();
  return ctx.Finish(Format("%.0f steps, final held-out omega %.4f",
                           static_cast<double>(last.step), last.omega));
}

StageResult StageScore(StageContext& ctx) {
  const RunConfig& c = ctx.config();
  fs::path hyp, ref;
  if (!c.paths.score_hyp.empty() || !c.paths.score_ref.empty()) {
    hyp = ctx.External("score_hyp", c.paths.score_hyp);
    ref = ctx.External("score_ref", c.paths.score_ref);
  } else {
    hyp = ctx.Need(kGoldHyp, "generate");
    ref = ctx.Need(kGoldRef, "generate");
  }
  const ScoreReport r = Score(ReadLines(ReadFile(hyp)), ReadLines(ReadFile(ref)), c.jobs);
  ctx.Write(kScoreReport, r.ToJson());
  return ctx.Finish(Format("ROUGE-L F1 %.4f, BLEU %.4f", r.rouge_l_f1, r.bleu));
}

}  // namespace

RunConfig RunConfig::FromJson(const json& j, const fs::path& base_dir) {
  CheckKeys(j,
            {"seed", "subtask", "jobs", "paths", "corpus", "align", "generation",
             "cleaning", "schedule", "objective"},
            "");
  RunConfig c;
  if (!j.contains("seed")) throw UsageError("config must set 'seed'");
  Read(j, "seed", c.seed, "");
  Read(j, "subtask", c.subtask, "");
  Read(j, "jobs", c.jobs, "");
  if (c.subtask != 1 && c.subtask != 2) throw UsageError("subtask must be 1 or 2");
  if (c.jobs < 1) throw UsageError("jobs must be at least 1");

  const json empty = json::object();
  const json& paths = j.contains("paths") ? j.at("paths") : empty;
  CheckKeys(paths,
            {"corpus", "pairs", "translit_table", "lexicon_en", "lexicon_hi",
             "output_dir", "score_hyp", "score_ref"},
            "paths.");
  ReadPath(paths, "corpus", c.paths.corpus, base_dir);
  ReadPath(paths, "pairs", c.paths.pairs, base_dir);
  ReadPath(paths, "translit_table", c.paths.translit_table, base_dir);
  ReadPath(paths, "lexicon_en", c.paths.lexicon_en, base_dir);
  ReadPath(paths, "lexicon_hi", c.paths.lexicon_hi, base_dir);
  ReadPath(paths, "output_dir", c.paths.output_dir, base_dir);
  ReadPath(paths, "score_hyp", c.paths.score_hyp, base_dir);
  ReadPath(paths, "score_ref", c.paths.score_ref, base_dir);

  const json& corpus = j.contains("corpus") ? j.at("corpus") : empty;
  CheckKeys(corpus, {"target_domain", "domains"}, "corpus.");
  Read(corpus, "target_domain", c.corpus.target_domain, "corpus.");
  Read(corpus, "domains", c.corpus.domains, "corpus.");

  const json& align = j.contains("align") ? j.at("align") : empty;
  CheckKeys(align, {"iterations", "use_null", "symmetrize"}, "align.");
  Read(align, "iterations", c.align.iterations, "align.");
  Read(align, "use_null", c.align.use_null, "align.");
  Read(align, "symmetrize", c.align.symmetrize, "align.");
  ParseSymmetrize(c.align.symmetrize);

  const json& gen = j.contains("generation") ? j.at("generation") : empty;
  CheckKeys(gen, {"rate", "short_len", "include_skipped", "overwrite_existing"},
            "generation.");
  Read(gen, "rate", c.generation.options.rate, "generation.");
  Read(gen, "short_len", c.generation.options.short_len, "generation.");
  Read(gen, "include_skipped", c.generation.include_skipped, "generation.");
  Read(gen, "overwrite_existing", c.generation.overwrite_existing, "generation.");

  const json& clean = j.contains("cleaning") ? j.at("cleaning") : empty;
  CheckKeys(clean, {"min_len", "max_len", "ratio", "symmetric_ratio"}, "cleaning.");
  Read(clean, "min_len", c.cleaning.min_len, "cleaning.");
  Read(clean, "max_len", c.cleaning.max_len, "cleaning.");
  Read(clean, "ratio", c.cleaning.ratio, "cleaning.");
  Read(clean, "symmetric_ratio", c.cleaning.symmetric_ratio, "cleaning.");

  const json& sched = j.contains("schedule") ? j.at("schedule") : empty;
  CheckKeys(sched, {"strategy", "budget", "target_fraction_position"}, "schedule.");
  Read(sched, "strategy", c.schedule.strategy, "schedule.");
  Read(sched, "budget", c.schedule.budget, "schedule.");
  Read(sched, "target_fraction_position", c.schedule.target_fraction_position,
       "schedule.");
  ParseStrategy(c.schedule.strategy);
  if (c.schedule.budget == 0) throw UsageError("schedule.budget must be at least 1");

  const json& obj = j.contains("objective") ? j.at("objective") : empty;
  CheckKeys(obj, {"lambda", "lr", "steps", "d", "vocab_size", "ce_enabled"},
            "objective.");
  Read(obj, "lambda", c.objective.lambda, "objective.");
  Read(obj, "lr", c.objective.lr, "objective.");
  Read(obj, "steps", c.objective.steps, "objective.");
  Read(obj, "d", c.objective.d, "objective.");
  Read(obj, "vocab_size", c.objective.vocab_size, "objective.");
  Read(obj, "ce_enabled", c.objective.ce_enabled, "objective.");
  if (c.objective.d == 0) throw UsageError("objective.d must be at least 1");
  return c;
}

RunConfig RunConfig::Load(const fs::path& path) {
  if (!fs::is_regular_file(path)) {
    throw UsageError("config file " + path.string() + " not found");
  }
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
  return FromJson(j, fs::absolute(path).parent_path());
}

nlohmann::ordered_json RunConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["subtask"] = subtask;
  j["jobs"] = jobs;
  auto& p = j["paths"];
  p["corpus"] = paths.corpus.string();
  p["pairs"] = paths.pairs.string();
  p["translit_table"] = paths.translit_table.string();
  p["lexicon_en"] = paths.lexicon_en.string();
  p["lexicon_hi"] = paths.lexicon_hi.string();
  p["output_dir"] = paths.output_dir.string();
  p["score_hyp"] = paths.score_hyp.string();
  p["score_ref"] = paths.score_ref.string();
  j["corpus"]["target_domain"] = corpus.target_domain;
  j["corpus"]["domains"] = corpus.domains;
  j["align"]["iterations"] = align.iterations;
  j["align"]["use_null"] = align.use_null;
  j["align"]["symmetrize"] = align.symmetrize;
  j["generation"]["rate"] = generation.options.rate;
  j["generation"]["short_len"] = generation.options.short_len;
  j["generation"]["include_skipped"] = generation.include_skipped;
  j["generation"]["overwrite_existing"] = generation.overwrite_existing;
  j["cleaning"]["min_len"] = cleaning.min_len;
  j["cleaning"]["max_len"] = cleaning.max_len;
  j["cleaning"]["ratio"] = cleaning.ratio;
  j["cleaning"]["symmetric_ratio"] = cleaning.symmetric_ratio;
  j["schedule"]["strategy"] = schedule.strategy;
  j["schedule"]["budget"] = schedule.budget;
  j["schedule"]["target_fraction_position"] = schedule.target_fraction_position;
  j["objective"]["lambda"] = objective.lambda;
  j["objective"]["lr"] = objective.lr;
  j["objective"]["steps"] = objective.steps;
  j["objective"]["d"] = objective.d;
  j["objective"]["vocab_size"] = objective.vocab_size;
  j["objective"]["ce_enabled"] = objective.ce_enabled;
  return j;
}

bool IsStage(std::string_view name) {
  return std::find(kStages.begin(), kStages.end(), name) != kStages.end();
}

fs::path ManifestPath(const RunConfig& config, std::string_view stage) {
  return config.paths.output_dir / (std::string(stage) + ".manifest.json");
}

StageResult RunStage(std::string_view stage, const RunConfig& config) {
  if (!IsStage(stage)) {
    throw UsageError("unknown stage '" + std::string(stage) + "'");
  }
  StageContext ctx{std::string(stage), config};
  if (stage == "translit") return StageTranslit(ctx);
  if (stage == "lid-report") return StageLidReport(ctx);
  if (stage == "align") return StageAlign(ctx);
  if (stage == "generate") return StageGenerate(ctx);
  if (stage == "clean") return StageClean(ctx);
  if (stage == "subword") return StageSubword(ctx);
  if (stage == "schedule") return StageSchedule(ctx);
  if (stage == "train-toy") return StageTrainToy(ctx);
  return StageScore(ctx);
}

std::vector<StageResult> RunPipeline(const RunConfig& config,
                                     const std::vector<std::string>& stages) {
  for (const auto& s : stages) {
    if (!IsStage(s)) throw UsageError("unknown stage '" + s + "'");
  }
  std::vector<StageResult> results;
  for (const auto& s : stages) results.push_back(RunStage(s, config));
  return results;
}

}  // namespace cmx
