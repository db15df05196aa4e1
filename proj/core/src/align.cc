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

#include "cmx/align.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <iterator>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "cmx/error.h"
#include "cmx/parallel.h"

namespace cmx {
namespace {

// Pairs per E-step shard. Shard boundaries depend only on the corpus size,
// never on the worker count.
constexpr size_t kMinShardSize = 256;
constexpr size_t kMaxShards = 64;

// The corpus mapped to dense ids with one parameter slot per co-occurring
// (source word, target word) pair.
struct IndexedCorpus {
  bool use_null = true;
  std::vector<std::string> src_words;  // id 0 is NULL when use_null
  std::vector<std::string> tgt_words;
  std::vector<int> slot_src;
  std::vector<int> slot_tgt;
  // Per pair: slot of (source position i', target position j) stored at
  // j * width + i', where i' = 0 is NULL when use_null.
  std::vector<std::vector<int>> slots;
  std::vector<size_t> widths;
  std::vector<size_t> tgt_lens;
};

IndexedCorpus IndexCorpus(const std::vector<ParallelPair>& pairs,
                          bool use_null) {
  IndexedCorpus ic;
  ic.use_null = use_null;
  std::unordered_map<std::string, int> src_ids, tgt_ids;
  if (use_null) {
    ic.src_words.emplace_back(TranslationTable::kNullWord);
  }
  auto src_id = [&](const std::string& w) {
    auto [it, inserted] =
        src_ids.emplace(w, static_cast<int>(ic.src_words.size()));
    if (inserted) ic.src_words.push_back(w);
    return it->second;
  };
  auto tgt_id = [&](const std::string& w) {
    auto [it, inserted] =
        tgt_ids.emplace(w, static_cast<int>(ic.tgt_words.size()));
    if (inserted) ic.tgt_words.push_back(w);
    return it->second;
  };
  std::unordered_map<std::uint64_t, int> slot_of;
  auto slot = [&](int e, int f) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(e) << 32) | static_cast<std::uint32_t>(f);
    auto [it, inserted] =
        slot_of.emplace(key, static_cast<int>(ic.slot_src.size()));
    if (inserted) {
      ic.slot_src.push_back(e);
      ic.slot_tgt.push_back(f);
    }
    return it->second;
  };

  ic.slots.reserve(pairs.size());
  for (const ParallelPair& p : pairs) {
    std::vector<int> e_ids;
    if (use_null) e_ids.push_back(0);
    for (const auto& w : p.src.tokens) e_ids.push_back(src_id(w));
    const size_t width = e_ids.size();
    std::vector<int> pair_slots(width * p.tgt.tokens.size());
    for (size_t j = 0; j < p.tgt.tokens.size(); ++j) {
      const int f = tgt_id(p.tgt.tokens[j]);
      for (size_t i = 0; i < width; ++i) {
        pair_slots[j * width + i] = slot(e_ids[i], f);
      }
    }
    ic.slots.push_back(std::move(pair_slots));
    ic.widths.push_back(width);
    ic.tgt_lens.push_back(p.tgt.tokens.size());
  }
  return ic;
}

std::vector<std::pair<size_t, size_t>> Shards(size_t n) {
  const size_t size =
      std::max(kMinShardSize, (n + kMaxShards - 1) / kMaxShards);
  std::vector<std::pair<size_t, size_t>> shards;
  for (size_t b = 0; b < n; b += size) {
    shards.emplace_back(b, std::min(n, b + size));
  }
  return shards;
}

// Adds expected link counts of pairs [begin, end) into counts.
void AccumulateCounts(const IndexedCorpus& ic, const std::vector<double>& prob,
                      size_t begin, size_t end, std::vector<double>& counts) {
  for (size_t p = begin; p < end; ++p) {
    const auto& s = ic.slots[p];
    const size_t width = ic.widths[p];
    for (size_t j = 0; j < ic.tgt_lens[p]; ++j) {
      const int* row = s.data() + j * width;
      double denom = 0.0;
      for (size_t i = 0; i < width; ++i) denom += prob[row[i]];
      if (denom <= 0.0) continue;
      for (size_t i = 0; i < width; ++i) counts[row[i]] += prob[row[i]] / denom;
    }
  }
}

double ShardLogLikelihood(const IndexedCorpus& ic,
                          const std::vector<double>& prob, size_t begin,
                          size_t end) {
  double ll = 0.0;
  for (size_t p = begin; p < end; ++p) {
    const auto& s = ic.slots[p];
    const size_t width = ic.widths[p];
    for (size_t j = 0; j < ic.tgt_lens[p]; ++j) {
      const int* row = s.data() + j * width;
      double sum = 0.0;
      for (size_t i = 0; i < width; ++i) sum += prob[row[i]];
      ll += std::log(sum / static_cast<double>(width));
    }
  }
  return ll;
}

double IndexedLogLikelihood(const IndexedCorpus& ic,
                            const std::vector<double>& prob,
                            const std::vector<std::pair<size_t, size_t>>& shards,
                            int jobs) {
  std::vector<double> partial(shards.size(), 0.0);
  ParallelFor(shards.size(), jobs, [&](size_t s) {
    partial[s] = ShardLogLikelihood(ic, prob, shards[s].first, shards[s].second);
  });
  double ll = 0.0;
  for (double v : partial) ll += v;
  return ll;
}

}  // namespace

double TranslationTable::Prob(std::string_view e, std::string_view f) const {
  auto row = rows_.find(e);
  if (row == rows_.end()) return 0.0;
  auto it = row->second.find(f);
  return it == row->second.end() ? 0.0 : it->second;
}

void TranslationTable::Set(std::string_view e, std::string_view f, double p) {
  auto row = rows_.find(e);
  if (row == rows_.end()) row = rows_.emplace(std::string(e), Row{}).first;
  row->second.insert_or_assign(std::string(f), p);
}

double TranslationTable::RowSum(std::string_view e) const {
  auto row = rows_.find(e);
  if (row == rows_.end()) return 0.0;
  double sum = 0.0;
  for (const auto& [f, p] : row->second) sum += p;
  return sum;
}

size_t TranslationTable::num_entries() const {
  size_t n = 0;
  for (const auto& [e, row] : rows_) n += row.size();
  return n;
}

std::string TranslationTable::ToTsv() const {
  std::string out;
  char buf[64];
  for (const auto& [e, row] : rows_) {
    for (const auto& [f, p] : row) {
      std::snprintf(buf, sizeof(buf), "%.17g", p);
      out += e;
      out.push_back('\t');
      out += f;
      out.push_back('\t');
      out += buf;
      out.push_back('\n');
    }
  }
  return out;
}

TranslationTable TranslationTable::FromTsv(std::string_view tsv) {
  TranslationTable table;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < tsv.size()) {
    size_t end = tsv.find('\n', pos);
    if (end == std::string_view::npos) end = tsv.size();
    std::string_view line = tsv.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const size_t t1 = line.find('\t');
    const size_t t2 =
        t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) {
      throw DataError("table line " + std::to_string(line_no) +
                      ": expected three tab-separated fields");
    }
    const std::string prob_text(line.substr(t2 + 1));
    char* parse_end = nullptr;
    const double p = std::strtod(prob_text.c_str(), &parse_end);
    if (parse_end == prob_text.c_str() || *parse_end != '\0' ||
        !std::isfinite(p) || p < 0.0) {
      throw DataError("table line " + std::to_string(line_no) +
                      ": bad probability '" + prob_text + "'");
    }
    table.Set(line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), p);
  }
  return table;
}

Ibm1Result TrainIbm1(const std::vector<ParallelPair>& pairs,
                     const Ibm1Options& options) {
  if (pairs.empty()) throw UsageError("IBM Model 1 needs at least one pair");
  if (options.iterations < 1) {
    throw UsageError("IBM Model 1 needs at least one iteration");
  }
  const IndexedCorpus ic = IndexCorpus(pairs, options.use_null);
  const size_t num_slots = ic.slot_src.size();

  // Uniform over co-occurring target words.
  std::vector<double> row_size(ic.src_words.size(), 0.0);
  for (size_t k = 0; k < num_slots; ++k) row_size[ic.slot_src[k]] += 1.0;
  std::vector<double> prob(num_slots);
  for (size_t k = 0; k < num_slots; ++k) prob[k] = 1.0 / row_size[ic.slot_src[k]];

  const auto shards = Shards(pairs.size());
  Ibm1Result result;
  std::vector<std::vector<double>> partial(shards.size());
  for (int iter = 0; iter < options.iterations; ++iter) {
    ParallelFor(shards.size(), options.jobs, [&](size_t s) {
      partial[s].assign(num_slots, 0.0);
      AccumulateCounts(ic, prob, shards[s].first, shards[s].second, partial[s]);
    });
    std::vector<double> counts(num_slots, 0.0);
    for (const auto& part : partial) {
      for (size_t k = 0; k < num_slots; ++k) counts[k] += part[k];
    }
    std::vector<double> totals(ic.src_words.size(), 0.0);
    for (size_t k = 0; k < num_slots; ++k) totals[ic.slot_src[k]] += counts[k];
    for (size_t k = 0; k < num_slots; ++k) {
      const double total = totals[ic.slot_src[k]];
      if (total > 0.0) prob[k] = counts[k] / total;
    }
    result.log_likelihood.push_back(
        IndexedLogLikelihood(ic, prob, shards, options.jobs));
  }

  for (size_t k = 0; k < num_slots; ++k) {
    result.table.Set(ic.src_words[ic.slot_src[k]], ic.tgt_words[ic.slot_tgt[k]],
                     prob[k]);
  }
  return result;
}

double CorpusLogLikelihood(const std::vector<ParallelPair>& pairs,
                           const TranslationTable& table, bool use_null) {
  double ll = 0.0;
  for (const ParallelPair& p : pairs) {
    const double width =
        static_cast<double>(p.src.tokens.size() + (use_null ? 1 : 0));
    for (const auto& f : p.tgt.tokens) {
      double sum = use_null ? table.Prob(TranslationTable::kNullWord, f) : 0.0;
      for (const auto& e : p.src.tokens) sum += table.Prob(e, f);
      ll += std::log(sum / width);
    }
  }
  return ll;
}

std::vector<std::vector<double>> LinkPosteriors(const ParallelPair& pair,
                                                const TranslationTable& table,
                                                bool use_null) {
  std::vector<std::string_view> sources;
  if (use_null) sources.push_back(TranslationTable::kNullWord);
  for (const auto& e : pair.src.tokens) sources.push_back(e);
  std::vector<std::vector<double>> post(pair.tgt.tokens.size(),
                                        std::vector<double>(sources.size()));
  for (size_t j = 0; j < pair.tgt.tokens.size(); ++j) {
    double denom = 0.0;
    for (size_t i = 0; i < sources.size(); ++i) {
      post[j][i] = table.Prob(sources[i], pair.tgt.tokens[j]);
      denom += post[j][i];
    }
    if (denom <= 0.0) continue;
    for (double& v : post[j]) v /= denom;
  }
  return post;
}

void AlignmentMatrix::Validate() const {
  for (const auto& [i, j] : links) {
    if (i >= src_len || j >= tgt_len) {
      throw DataError("link " + std::to_string(i) + "-" + std::to_string(j) +
                      " outside " + std::to_string(src_len) + "x" +
                      std::to_string(tgt_len) + " matrix");
    }
  }
}

AlignmentMatrix AlignmentMatrix::Transposed() const {
  AlignmentMatrix t{tgt_len, src_len, {}};
  for (const auto& [i, j] : links) t.links.emplace(j, i);
  return t;
}

std::string AlignmentMatrix::ToPharaoh() const {
  std::string out;
  for (const auto& [i, j] : links) {
    if (!out.empty()) out.push_back(' ');
    out += std::to_string(i) + "-" + std::to_string(j);
  }
  return out;
}

AlignmentMatrix AlignmentMatrix::FromPharaoh(std::string_view line,
                                             size_t src_len, size_t tgt_len) {
  AlignmentMatrix m{src_len, tgt_len, {}};
  for (const auto& tok : SplitWhitespace(line)) {
    const size_t dash = tok.find('-');
    auto parse = [&](std::string_view s) {
      if (s.empty() || s.size() > 9 ||
          !std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; })) {
        throw DataError("bad Pharaoh link '" + tok + "'");
      }
      return static_cast<size_t>(std::stoul(std::string(s)));
    };
    if (dash == std::string::npos) throw DataError("bad Pharaoh link '" + tok + "'");
    const std::string_view view(tok);
    if (!m.links.emplace(parse(view.substr(0, dash)), parse(view.substr(dash + 1)))
             .second) {
      throw DataError("duplicate Pharaoh link '" + tok + "'");
    }
  }
  m.Validate();
  return m;
}

AlignmentMatrix ViterbiAlign(const ParallelPair& pair,
                             const TranslationTable& table) {
  AlignmentMatrix m{pair.src.tokens.size(), pair.tgt.tokens.size(), {}};
  const bool has_null = table.HasSource(TranslationTable::kNullWord);
  for (size_t j = 0; j < pair.tgt.tokens.size(); ++j) {
    const std::string& f = pair.tgt.tokens[j];
    double best = has_null ? table.Prob(TranslationTable::kNullWord, f) : 0.0;
    size_t best_i = SIZE_MAX;
    for (size_t i = 0; i < pair.src.tokens.size(); ++i) {
      const double p = table.Prob(pair.src.tokens[i], f);
      if (p > best) {
        best = p;
        best_i = i;
      }
    }
    if (best_i != SIZE_MAX) m.links.emplace(best_i, j);
  }
  return m;
}

AlignmentMatrix Symmetrize(const AlignmentMatrix& forward,
                           const AlignmentMatrix& reverse,
                           SymmetrizeMode mode) {
  if (reverse.src_len != forward.tgt_len ||
      reverse.tgt_len != forward.src_len) {
    throw DataError("symmetrize: reverse alignment is " +
                    std::to_string(reverse.src_len) + "x" +
                    std::to_string(reverse.tgt_len) + ", expected " +
                    std::to_string(forward.tgt_len) + "x" +
                    std::to_string(forward.src_len));
  }
  forward.Validate();
  reverse.Validate();
  const AlignmentMatrix back = reverse.Transposed();

  AlignmentMatrix out{forward.src_len, forward.tgt_len, {}};
  std::set_intersection(forward.links.begin(), forward.links.end(),
                        back.links.begin(), back.links.end(),
                        std::inserter(out.links, out.links.end()));
  if (mode == SymmetrizeMode::kIntersection) return out;

  std::set<std::pair<size_t, size_t>> uni;
  std::set_union(forward.links.begin(), forward.links.end(),
                 back.links.begin(), back.links.end(),
                 std::inserter(uni, uni.end()));
  std::vector<bool> src_aligned(out.src_len, false);
  std::vector<bool> tgt_aligned(out.tgt_len, false);
  for (const auto& [i, j] : out.links) {
    src_aligned[i] = true;
    tgt_aligned[j] = true;
  }
  static constexpr int kNeighbours[8][2] = {{-1, 0}, {0, -1}, {1, 0},  {0, 1},
                                            {-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  bool changed = true;
  while (changed) {
    changed = false;
    const auto snapshot = out.links;
    for (const auto& [i, j] : snapshot) {
      for (const auto& d : kNeighbours) {
        const long ni = static_cast<long>(i) + d[0];
        const long nj = static_cast<long>(j) + d[1];
        if (ni < 0 || nj < 0 || ni >= static_cast<long>(out.src_len) ||
            nj >= static_cast<long>(out.tgt_len)) {
          continue;
        }
        const std::pair<size_t, size_t> cand(ni, nj);
        if (!uni.count(cand) || out.links.count(cand)) continue;
        if (!src_aligned[cand.first] || !tgt_aligned[cand.second]) {
          out.links.insert(cand);
          src_aligned[cand.first] = true;
          tgt_aligned[cand.second] = true;
          changed = true;
        }
      }
    }
  }
  return out;
}

std::vector<MinimalUnit> ExtractMinimalUnits(const AlignmentMatrix& m) {
  m.Validate();
  // Union-find over source nodes [0, src_len) and target nodes after them.
  std::vector<size_t> parent(m.src_len + m.tgt_len);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [i, j] : m.links) {
    const size_t a = find(i);
    const size_t b = find(m.src_len + j);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<bool> linked_src(m.src_len, false), linked_tgt(m.tgt_len, false);
  for (const auto& [i, j] : m.links) {
    linked_src[i] = true;
    linked_tgt[j] = true;
  }
  std::map<size_t, MinimalUnit> by_root;
  for (size_t i = 0; i < m.src_len; ++i) {
    if (linked_src[i]) by_root[find(i)].src_positions.push_back(i);
  }
  for (size_t j = 0; j < m.tgt_len; ++j) {
    if (linked_tgt[j]) by_root[find(m.src_len + j)].tgt_positions.push_back(j);
  }
  std::vector<MinimalUnit> units;
  units.reserve(by_root.size());
  for (auto& [root, unit] : by_root) units.push_back(std::move(unit));
  std::sort(units.begin(), units.end(),
            [](const MinimalUnit& a, const MinimalUnit& b) {
              return std::tie(a.src_positions.front(), a.tgt_positions.front()) <
                     std::tie(b.src_positions.front(), b.tgt_positions.front());
            });
  return units;
}

}  // namespace cmx
