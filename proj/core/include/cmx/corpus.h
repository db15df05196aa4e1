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

// Corpus data model: sentences, aligned Hindi/English/code-mixed triples,
// training pairs, JSONL I/O, length/ratio cleaning and subtask-specific pair
// arrangement.

#ifndef CMX_CORPUS_H_
#define CMX_CORPUS_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmx {

// A whitespace-tokenized line. `raw` keeps the original text; `tokens` are
// the maximal runs of non-whitespace bytes.
struct Sentence {
  std::string raw;
  std::vector<std::string> tokens;

  static Sentence FromText(std::string_view text);
  static Sentence FromTokens(std::vector<std::string> tokens);

  // Tokens joined by single spaces.
  std::string Text() const;
  size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  bool operator==(const Sentence&) const = default;
};

std::vector<std::string> SplitWhitespace(std::string_view text);
std::string JoinTokens(const std::vector<std::string>& tokens);

struct DomainTag {
  std::string name;
  bool is_target = false;

  bool operator==(const DomainTag&) const = default;
};

// One aligned record: Devanagari Hindi, its romanization, English and the
// code-mixed rendering.
struct Triple {
  std::string id;
  Sentence hindi_deva;
  std::optional<Sentence> hindi_roman;
  Sentence english;
  std::optional<Sentence> cmx;
  DomainTag domain;
  bool synthetic = false;

  bool operator==(const Triple&) const = default;
};

// Language labels used on pairs.
inline constexpr std::string_view kLangHindiDeva = "hi_deva";
inline constexpr std::string_view kLangHindiRoman = "hi_roman";
inline constexpr std::string_view kLangEnglish = "en";
inline constexpr std::string_view kLangCodeMixed = "cmx";

struct ParallelPair {
  Sentence src;
  Sentence tgt;
  std::string src_lang;
  std::string tgt_lang;
  DomainTag domain;
  std::string origin_id;

  // Unique within an arranged corpus: origin id plus source language.
  std::string PairId() const { return origin_id + ":" + src_lang; }

  bool operator==(const ParallelPair&) const = default;
};

struct CorpusSchema {
  // Domain flagged as the target domain; may be empty when the caller does
  // not care about targeting.
  std::string target_domain;
  // Declared closed set of domains. Empty means "accept any".
  std::vector<std::string> domains;
};

// Reads the triple JSONL format (keys id, hi_deva, hi_roman?, en, cmx?,
// domain, synthetic?). Throws DataError with the 1-based line number on a
// malformed line and names the id on duplicates.
std::vector<Triple> ParseCorpus(std::string_view jsonl,
                                const CorpusSchema& schema);
std::vector<Triple> LoadCorpus(const std::filesystem::path& path,
                               const CorpusSchema& schema);
std::string SerializeCorpus(const std::vector<Triple>& triples);

// Pair JSONL (keys src, tgt, src_lang, tgt_lang, domain, origin_id).
std::vector<ParallelPair> ParsePairs(std::string_view jsonl,
                                     std::string_view target_domain);
std::vector<ParallelPair> LoadPairs(const std::filesystem::path& path,
                                    std::string_view target_domain);
std::string SerializePairs(const std::vector<ParallelPair>& pairs);

enum class DropReason { kNone, kTooShort, kTooLong, kRatio };

std::string_view DropReasonName(DropReason reason);

struct CleanOptions {
  size_t min_len = 2;
  size_t max_len = 250;
  double ratio = 1.5;
  // Also drop when |src|/|tgt| exceeds the ratio.
  bool symmetric_ratio = false;

  bool operator==(const CleanOptions&) const = default;
};

struct CleanDecision {
  bool keep = true;
  DropReason reason = DropReason::kNone;
};

// Rules are checked in the order too_short, too_long, ratio; the first one
// violated is reported.
CleanDecision CleanPair(const ParallelPair& pair, const CleanOptions& options);

struct CleanResult {
  std::vector<ParallelPair> kept;
  // Indexed by DropReason.
  std::array<size_t, 4> counts{};
};

// Applies CleanPair to every pair, keeping input order.
CleanResult CleanCorpus(const std::vector<ParallelPair>& pairs,
                        const CleanOptions& options, int jobs = 1);

// Subtask 1: (hi_deva -> cmx), (en -> cmx) per triple.
// Subtask 2: (hi_roman -> en), (cmx -> en) per triple.
// Throws DataError naming the triple when a required field is missing.
std::vector<ParallelPair> ArrangePairs(const std::vector<Triple>& triples,
                                       int subtask);

}  // namespace cmx

#endif  // CMX_CORPUS_H_
