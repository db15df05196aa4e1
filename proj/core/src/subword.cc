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


#include "cmx/subword.h"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "cmx/corpus.h"
#include "cmx/error.h"
#include "cmx/parallel.h"
#include "cmx/utf8.h"

namespace cmx {
namespace {

using Pair = std::pair<std::string, std::string>;

struct Run {
  std::string_view text;
  bool space;
};

std::vector<Run> SplitRuns(std::string_view line) {
  std::vector<Run> runs;
  size_t i = 0;
  while (i < line.size()) {
    const bool space = utf8::IsAsciiSpace(line[i]);
    size_t j = i;
    while (j < line.size() && utf8::IsAsciiSpace(line[j]) == space) ++j;
    runs.push_back({line.substr(i, j - i), space});
    i = j;
  }
  return runs;
}

void MergeInPlace(std::vector<std::string>& syms, const Pair& pair) {
  std::vector<std::string> out;
  out.reserve(syms.size());
  for (size_t i = 0; i < syms.size(); ++i) {
    if (i + 1 < syms.size() && syms[i] == pair.first &&
        syms[i + 1] == pair.second) {
      out.push_back(syms[i] + syms[i + 1]);
      ++i;
    } else {
      out.push_back(std::move(syms[i]));
    }
  }
  syms = std::move(out);
}

// Pair counts with an ordered index for the argmax.
class PairStats {
 public:
  void Add(const Pair& p, std::int64_t delta) {
    std::int64_t& c = counts_[p];
    if (c > 0) order_.erase({-c, p.first, p.second});
    c += delta;
    if (c > 0) {
      order_.insert({-c, p.first, p.second});
    } else {
      counts_.erase(p);
    }
  }

  bool Best(Pair& pair, std::int64_t& count) const {
    if (order_.empty()) return false;
    const auto& [neg, l, r] = *order_.begin();
    pair = {l, r};
    count = -neg;
    return true;
  }

 private:
  std::map<Pair, std::int64_t> counts_;
  std::set<std::tuple<std::int64_t, std::string, std::string>> order_;
};

std::map<std::string, std::int64_t> CountWords(
    const std::vector<std::string>& lines, int jobs) {
  constexpr size_t kShard = 1024;
  const size_t shards = (lines.size() + kShard - 1) / kShard;
  std::vector<std::map<std::string, std::int64_t>> partial(shards);
  ParallelFor(shards, jobs, [&](size_t s) {
    const size_t end = std::min(lines.size(), (s + 1) * kShard);
    for (size_t i = s * kShard; i < end; ++i) {
      utf8::Decode(lines[i]);  // reject invalid UTF-8 early
      for (auto& w : SplitWhitespace(lines[i])) ++partial[s][w];
    }
  });
  std::map<std::string, std::int64_t> total;
  for (auto& p : partial) {
    for (auto& [w, c] : p) total[w] += c;
  }
  return total;
}

}  // namespace

std::vector<std::string> WordSymbols(std::string_view word) {
  std::vector<std::string> syms = utf8::SplitCodePoints(word);
  for (auto& s : syms) {
    if (s == "\\" || s == "<") s.insert(s.begin(), '\\');
  }
  if (!syms.empty()) syms.back() += kEndOfWord;
  return syms;
}

std::vector<std::string> MergeList::Vocab() const {
  std::vector<std::string> vocab;
  std::unordered_set<std::string> seen;
  auto add = [&](const std::string& t) {
    if (seen.insert(t).second) vocab.push_back(t);
  };
  for (const auto& t : special_tokens) add(t);
  for (const auto& t : base_symbols) add(t);
  for (const auto& [l, r] : merges) add(l + r);
  return vocab;
}

std::string MergeList::MergesText() const {
  std::string out;
  for (const auto& [l, r] : merges) out += l + " " + r + "\n";
  return out;
}

std::string MergeList::VocabText() const {
  std::string out;
  for (const auto& t : Vocab()) out += t + "\n";
  return out;
}

MergeList MergeList::FromText(std::string_view merges_text,
                              std::string_view vocab_text) {
  MergeList m;
  std::set<Pair> seen;
  std::istringstream in{std::string(merges_text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = SplitWhitespace(line);
    if (fields.size() != 2) {
      throw DataError("merges line " + std::to_string(line_no) +
                      ": expected 'left right'");
    }
    Pair p{fields[0], fields[1]};
    if (!seen.insert(p).second) {
      throw DataError("merges line " + std::to_string(line_no) +
                      ": duplicate merge");
    }
    m.merges.push_back(std::move(p));
  }
  if (!vocab_text.empty()) {
    std::set<std::string> skip(m.special_tokens.begin(),
                               m.special_tokens.end());
    for (const auto& [l, r] : m.merges) skip.insert(l + r);
    std::istringstream vin{std::string(vocab_text)};
    while (std::getline(vin, line)) {
      if (!line.empty() && !skip.count(line)) m.base_symbols.push_back(line);
    }
    std::sort(m.base_symbols.begin(), m.base_symbols.end());
  }
  return m;
}

MergeList LearnBpe(const std::vector<std::string>& lines, size_t target_merges,
                   int jobs) {
  if (lines.empty()) throw DataError("cannot learn BPE from an empty corpus");
  const auto word_counts = CountWords(lines, jobs);
  if (word_counts.empty()) {
    throw DataError("cannot learn BPE from a corpus with no words");
  }

  std::vector<std::vector<std::string>> words;
  std::vector<std::int64_t> freq;
  std::set<std::string> base;
  for (const auto& [w, c] : word_counts) {
    words.push_back(WordSymbols(w));
    freq.push_back(c);
    base.insert(words.back().begin(), words.back().end());
  }

  PairStats stats;
  std::map<Pair, std::vector<size_t>> where;
  auto account = [&](size_t id, std::int64_t sign) {
    const auto& syms = words[id];
    for (size_t i = 0; i + 1 < syms.size(); ++i) {
      Pair p{syms[i], syms[i + 1]};
      stats.Add(p, sign * freq[id]);
      if (sign > 0) where[p].push_back(id);
    }
  };
  for (size_t id = 0; id < words.size(); ++id) account(id, +1);

  MergeList m;
  m.base_symbols.assign(base.begin(), base.end());
  while (m.merges.size() < target_merges) {
    Pair best;
    std::int64_t count = 0;
    if (!stats.Best(best, count) || count < 2) break;
    std::vector<size_t> ids = std::move(where[best]);
    where.erase(best);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (size_t id : ids) {
      auto& syms = words[id];
      bool present = false;
      for (size_t i = 0; i + 1 < syms.size() && !present; ++i) {
        present = syms[i] == best.first && syms[i + 1] == best.second;
      }
      if (!present) continue;
      account(id, -1);
      MergeInPlace(syms, best);
      account(id, +1);
    }
    m.merges.push_back(std::move(best));
  }
  return m;
}

MergeList LearnBpeVocab(const std::vector<std::string>& lines,
                        size_t vocab_size, int jobs) {
  MergeList probe = LearnBpe(lines, 0, jobs);
  const size_t fixed = probe.special_tokens.size() + probe.base_symbols.size();
  MergeList m = LearnBpe(lines, vocab_size > fixed ? vocab_size - fixed : 0,
                         jobs);
  m.vocab_size = vocab_size;
  return m;
}

BpeEncoder::BpeEncoder(const MergeList& merges) {
  for (size_t i = 0; i < merges.merges.size(); ++i) {
    ranks_.emplace(merges.merges[i], i);
  }
}

std::vector<std::string> BpeEncoder::EncodeWord(std::string_view word) const {
  std::vector<std::string> syms = WordSymbols(word);
  while (syms.size() > 1) {
    size_t best_rank = ranks_.size();
    const Pair* best = nullptr;
    Pair candidate;
    for (size_t i = 0; i + 1 < syms.size(); ++i) {
      candidate = {syms[i], syms[i + 1]};
      auto it = ranks_.find(candidate);
      if (it != ranks_.end() && it->second < best_rank) {
        best_rank = it->second;
        best = &it->first;
      }
    }
    if (best == nullptr) break;
    MergeInPlace(syms, *best);
  }
  return syms;
}

std::vector<std::string> BpeEncoder::Encode(std::string_view line) const {
  std::vector<std::string> out;
  const auto runs = SplitRuns(line);
  for (size_t r = 0; r < runs.size(); ++r) {
    const Run& run = runs[r];
    if (!run.space) {
      for (auto& s : EncodeWord(run.text)) out.push_back(std::move(s));
      continue;
    }
    const bool between = r > 0 && r + 1 < runs.size();
    if (!(between && run.text == " ")) out.emplace_back(run.text);
  }
  return out;
}

std::vector<std::string> Encode(std::string_view line, const MergeList& m) {
  return BpeEncoder(m).Encode(line);
}

std::string Decode(const std::vector<std::string>& tokens) {
  std::string out;
  bool in_word = false;
  bool after_word = false;
  for (size_t t = 0; t < tokens.size(); ++t) {
    const std::string& tok = tokens[t];
    auto fail = [&](const std::string& why) {
      throw DataError("decode: token " + std::to_string(t) + " '" + tok +
                      "': " + why);
    };
    if (tok.empty()) fail("empty token");
    const bool any_space = std::any_of(tok.begin(), tok.end(), utf8::IsAsciiSpace);
    const bool all_space = std::all_of(tok.begin(), tok.end(), utf8::IsAsciiSpace);
    if (any_space && !all_space) fail("mixes whitespace and text");
    if (all_space) {
      if (in_word) fail("whitespace inside an unterminated word");
      out += tok;
      after_word = false;
      continue;
    }
    if (!in_word && after_word) out += ' ';
    in_word = true;
    for (size_t i = 0; i < tok.size(); ++i) {
      if (tok[i] == '\\') {
        if (i + 1 >= tok.size()) fail("dangling escape");
        out += tok[++i];
      } else if (tok[i] == '<') {
        if (tok.compare(i, std::string::npos, kEndOfWord) != 0) {
          fail("end-of-word marker must close the token");
        }
        in_word = false;
        after_word = true;
        break;
      } else {
        out += tok[i];
      }
    }
  }
  if (in_word) throw DataError("decode: last word has no end-of-word marker");
  return out;
}

}  // namespace cmx
