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


#include "cmx/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "cmx/error.h"
#include "cmx/parallel.h"

namespace cmx {
namespace {

using NgramCounts = std::map<std::vector<std::string>, size_t>;

NgramCounts Ngrams(const std::vector<std::string>& tokens, size_t n) {
  NgramCounts counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i,
                                      tokens.begin() + i + n)];
  }
  return counts;
}

void CheckLengths(size_t h, size_t r) {
  if (h != r) {
    throw DataError("hypothesis/reference count mismatch: " +
                    std::to_string(h) + " vs " + std::to_string(r));
  }
}

}  // namespace

size_t LcsLength(const std::vector<std::string>& a,
                 const std::vector<std::string>& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double RougeLF1(const Sentence& hypothesis, const Sentence& reference) {
  if (hypothesis.empty() || reference.empty()) {
    throw DataError("ROUGE-L needs non-empty hypothesis and reference");
  }
  const size_t l = LcsLength(hypothesis.tokens, reference.tokens);
  if (l == 0) return 0.0;
  const double p = static_cast<double>(l) / hypothesis.size();
  const double r = static_cast<double>(l) / reference.size();
  return 2.0 * p * r / (p + r);
}

BleuStats CollectBleuStats(const std::vector<Sentence>& hypotheses,
                           const std::vector<Sentence>& references,
                           size_t max_n) {
  CheckLengths(hypotheses.size(), references.size());
  BleuStats s;
  s.matches.assign(max_n, 0);
  s.totals.assign(max_n, 0);
  for (size_t k = 0; k < hypotheses.size(); ++k) {
    const auto& hyp = hypotheses[k].tokens;
    const auto& ref = references[k].tokens;
    s.hyp_len += hyp.size();
    s.ref_len += ref.size();
    for (size_t n = 1; n <= max_n; ++n) {
      const NgramCounts h = Ngrams(hyp, n);
      const NgramCounts r = Ngrams(ref, n);
      for (const auto& [gram, c] : h) {
        s.totals[n - 1] += c;
        auto it = r.find(gram);
        if (it != r.end()) s.matches[n - 1] += std::min(c, it->second);
      }
    }
  }
  return s;
}

double Bleu(const std::vector<Sentence>& hypotheses,
            const std::vector<Sentence>& references, size_t max_n) {
  const BleuStats s = CollectBleuStats(hypotheses, references, max_n);
  if (s.hyp_len == 0) return 0.0;
  // Reference n-gram totals decide whether an order is vacuous.
  std::vector<size_t> ref_totals(max_n, 0);
  for (const auto& r : references) {
    for (size_t n = 1; n <= max_n; ++n) {
      if (r.size() >= n) ref_totals[n - 1] += r.size() - n + 1;
    }
  }
  double log_sum = 0.0;
  for (size_t n = 0; n < max_n; ++n) {
    if (s.totals[n] == 0 && ref_totals[n] == 0) continue;  // p_n = 1
    const double m = s.matches[n] == 0 ? kBleuEpsilon
                                       : static_cast<double>(s.matches[n]);
    const double t = static_cast<double>(std::max<size_t>(s.totals[n], 1));
    log_sum += std::log(m / t);
  }
  const double c = static_cast<double>(s.hyp_len);
  const double r = static_cast<double>(s.ref_len);
  const double bp = std::exp(std::min(0.0, 1.0 - r / c));
  return bp * std::exp(log_sum / static_cast<double>(max_n));
}

std::string ScoreReport::ToJson() const {
  nlohmann::ordered_json obj;
  obj["rouge_l_f1"] = rouge_l_f1;
  obj["bleu"] = bleu;
  obj["n_pairs"] = n_pairs;
  return obj.dump(2) + "\n";
}

ScoreReport Score(const std::vector<Sentence>& hypotheses,
                  const std::vector<Sentence>& references, int jobs) {
  CheckLengths(hypotheses.size(), references.size());
  if (hypotheses.empty()) throw DataError("cannot score an empty corpus");
  std::vector<double> f1(hypotheses.size(), 0.0);
  ParallelFor(hypotheses.size(), jobs, [&](size_t i) {
    if (references[i].empty()) {
      throw DataError("reference line " + std::to_string(i + 1) + " is empty");
    }
    if (!hypotheses[i].empty()) f1[i] = RougeLF1(hypotheses[i], references[i]);
  });
  ScoreReport report;
  report.n_pairs = hypotheses.size();
  double sum = 0.0;
  for (double v : f1) sum += v;
  report.rouge_l_f1 = sum / static_cast<double>(f1.size());
  report.bleu = Bleu(hypotheses, references);
  return report;
}

std::vector<Sentence> ReadLines(std::string_view text) {
  std::vector<Sentence> out;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(Sentence::FromText(line));
    start = end + 1;
  }
  return out;
}

}  // namespace cmx
