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

#include "cmx/corpus.h"

#include <algorithm>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "cmx/digest.h"
#include "cmx/error.h"
#include "cmx/parallel.h"
#include "cmx/utf8.h"

namespace cmx {
namespace {

using OrderedJson = nlohmann::ordered_json;

// Calls fn(line, line_number) for every line; a trailing newline does not
// produce an extra empty line.
template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, ++line_no);
    pos = end + 1;
  }
}

std::string LineError(size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

const nlohmann::json& RequireString(const nlohmann::json& obj,
                                    const char* key, size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw DataError(LineError(line_no, std::string("missing key '") + key +
                                           "'"));
  }
  if (!it->is_string()) {
    throw DataError(LineError(line_no, std::string("key '") + key +
                                           "' must be a string"));
  }
  return *it;
}

std::optional<Sentence> OptionalSentence(const nlohmann::json& obj,
                                         const char* key, size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw DataError(LineError(line_no, std::string("key '") + key +
                                           "' must be a string"));
  }
  return Sentence::FromText(it->get<std::string>());
}

nlohmann::json ParseLine(std::string_view line, size_t line_no) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(LineError(line_no, std::string("invalid JSON: ") +
                                           e.what()));
  }
  if (!obj.is_object()) {
    throw DataError(LineError(line_no, "record must be a JSON object"));
  }
  return obj;
}

DomainTag MakeDomain(std::string name, std::string_view target_domain) {
  DomainTag tag;
  tag.is_target = !target_domain.empty() && name == target_domain;
  tag.name = std::move(name);
  return tag;
}

std::string Dump(const OrderedJson& obj) {
  return obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

}  // namespace

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && utf8::IsAsciiSpace(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !utf8::IsAsciiSpace(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

Sentence Sentence::FromText(std::string_view text) {
  return Sentence{std::string(text), SplitWhitespace(text)};
}

Sentence Sentence::FromTokens(std::vector<std::string> tokens) {
  Sentence s;
  s.raw = JoinTokens(tokens);
  s.tokens = std::move(tokens);
  return s;
}

std::string Sentence::Text() const { return JoinTokens(tokens); }

std::vector<Triple> ParseCorpus(std::string_view jsonl,
                                const CorpusSchema& schema) {
  std::vector<Triple> triples;
  std::unordered_set<std::string> seen;
  ForEachLine(jsonl, [&](std::string_view line, size_t line_no) {
    const nlohmann::json obj = ParseLine(line, line_no);
    Triple t;
    t.id = RequireString(obj, "id", line_no).get<std::string>();
    if (t.id.empty()) throw DataError(LineError(line_no, "empty id"));
    t.hindi_deva = Sentence::FromText(
        RequireString(obj, "hi_deva", line_no).get<std::string>());
    t.hindi_roman = OptionalSentence(obj, "hi_roman", line_no);
    t.english =
        Sentence::FromText(RequireString(obj, "en", line_no).get<std::string>());
    t.cmx = OptionalSentence(obj, "cmx", line_no);
    std::string domain =
        RequireString(obj, "domain", line_no).get<std::string>();
    if (!schema.domains.empty() &&
        std::find(schema.domains.begin(), schema.domains.end(), domain) ==
            schema.domains.end()) {
      throw DataError(LineError(line_no, "undeclared domain '" + domain + "'"));
    }
    t.domain = MakeDomain(std::move(domain), schema.target_domain);
    if (auto it = obj.find("synthetic"); it != obj.end() && !it->is_null()) {
      if (!it->is_boolean()) {
        throw DataError(LineError(line_no, "key 'synthetic' must be boolean"));
      }
      t.synthetic = it->get<bool>();
    }
    if (!seen.insert(t.id).second) {
      throw DataError(LineError(line_no, "duplicate id '" + t.id + "'"));
    }
    triples.push_back(std::move(t));
  });
  return triples;
}

std::vector<Triple> LoadCorpus(const std::filesystem::path& path,
                               const CorpusSchema& schema) {
  try {
    return ParseCorpus(ReadFile(path), schema);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string SerializeCorpus(const std::vector<Triple>& triples) {
  std::string out;
  for (const Triple& t : triples) {
    OrderedJson obj;
    obj["id"] = t.id;
    obj["hi_deva"] = t.hindi_deva.raw;
    if (t.hindi_roman) obj["hi_roman"] = t.hindi_roman->raw;
    obj["en"] = t.english.raw;
    if (t.cmx) obj["cmx"] = t.cmx->raw;
    obj["domain"] = t.domain.name;
    if (t.synthetic) obj["synthetic"] = true;
    out += Dump(obj);
    out.push_back('\n');
  }
  return out;
}

std::vector<ParallelPair> ParsePairs(std::string_view jsonl,
                                     std::string_view target_domain) {
  std::vector<ParallelPair> pairs;
  ForEachLine(jsonl, [&](std::string_view line, size_t line_no) {
    const nlohmann::json obj = ParseLine(line, line_no);
    ParallelPair p;
    p.src = Sentence::FromText(
        RequireString(obj, "src", line_no).get<std::string>());
    p.tgt = Sentence::FromText(
        RequireString(obj, "tgt", line_no).get<std::string>());
    p.src_lang = RequireString(obj, "src_lang", line_no).get<std::string>();
    p.tgt_lang = RequireString(obj, "tgt_lang", line_no).get<std::string>();
    if (p.src_lang == p.tgt_lang && p.tgt_lang != kLangCodeMixed) {
      throw DataError(LineError(line_no, "src_lang equals tgt_lang"));
    }
    p.domain = MakeDomain(
        RequireString(obj, "domain", line_no).get<std::string>(),
        target_domain);
    p.origin_id = RequireString(obj, "origin_id", line_no).get<std::string>();
    pairs.push_back(std::move(p));
  });
  return pairs;
}

std::vector<ParallelPair> LoadPairs(const std::filesystem::path& path,
                                    std::string_view target_domain) {
  try {
    return ParsePairs(ReadFile(path), target_domain);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string SerializePairs(const std::vector<ParallelPair>& pairs) {
  std::string out;
  for (const ParallelPair& p : pairs) {
    OrderedJson obj;
    obj["src"] = p.src.raw;
    obj["tgt"] = p.tgt.raw;
    obj["src_lang"] = p.src_lang;
    obj["tgt_lang"] = p.tgt_lang;
    obj["domain"] = p.domain.name;
    obj["origin_id"] = p.origin_id;
    out += Dump(obj);
    out.push_back('\n');
  }
  return out;
}

std::string_view DropReasonName(DropReason reason) {
  switch (reason) {
    case DropReason::kNone:
      return "kept";
    case DropReason::kTooShort:
      return "too_short";
    case DropReason::kTooLong:
      return "too_long";
    case DropReason::kRatio:
      return "ratio";
  }
  return "unknown";
}

CleanDecision CleanPair(const ParallelPair& pair, const CleanOptions& options) {
  const size_t src = pair.src.size();
  const size_t tgt = pair.tgt.size();
  // An empty source is always caught here, so the ratio never divides by 0.
  if (src < options.min_len || tgt < options.min_len || src == 0) {
    return {false, DropReason::kTooShort};
  }
  if (src > options.max_len || tgt > options.max_len) {
    return {false, DropReason::kTooLong};
  }
  const double forward = static_cast<double>(tgt) / static_cast<double>(src);
  if (forward > options.ratio) return {false, DropReason::kRatio};
  if (options.symmetric_ratio && tgt > 0 &&
      static_cast<double>(src) / static_cast<double>(tgt) > options.ratio) {
    return {false, DropReason::kRatio};
  }
  return {true, DropReason::kNone};
}

CleanResult CleanCorpus(const std::vector<ParallelPair>& pairs,
                        const CleanOptions& options, int jobs) {
  std::vector<CleanDecision> decisions(pairs.size());
  ParallelFor(pairs.size(), jobs,
              [&](size_t i) { decisions[i] = CleanPair(pairs[i], options); });
  CleanResult result;
  for (size_t i = 0; i < pairs.size(); ++i) {
    ++result.counts[static_cast<size_t>(decisions[i].reason)];
    if (decisions[i].keep) result.kept.push_back(pairs[i]);
  }
  return result;
}

std::vector<ParallelPair> ArrangePairs(const std::vector<Triple>& triples,
                                       int subtask) {
  if (subtask != 1 && subtask != 2) {
    throw UsageError("subtask must be 1 or 2, got " + std::to_string(subtask));
  }
  std::vector<ParallelPair> pairs;
  pairs.reserve(2 * triples.size());
  auto make = [](const Triple& t, const Sentence& src, std::string_view sl,
                 const Sentence& tgt, std::string_view tl) {
    return ParallelPair{src,         tgt,      std::string(sl),
                        std::string(tl), t.domain, t.id};
  };
  for (const Triple& t : triples) {
    if (!t.cmx) {
      throw DataError("triple '" + t.id + "' has no cmx sentence");
    }
    if (subtask == 1) {
      pairs.push_back(
          make(t, t.hindi_deva, kLangHindiDeva, *t.cmx, kLangCodeMixed));
      pairs.push_back(
          make(t, t.english, kLangEnglish, *t.cmx, kLangCodeMixed));
    } else {
      if (!t.hindi_roman) {
        throw DataError("triple '" + t.id + "' has no hi_roman sentence");
      }
      pairs.push_back(
          make(t, *t.hindi_roman, kLangHindiRoman, t.english, kLangEnglish));
      pairs.push_back(make(t, *t.cmx, kLangCodeMixed, t.english, kLangEnglish));
    }
  }
  return pairs;
}

}  // namespace cmx
