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


// ROUGE-L F1 and corpus BLEU over whitespace tokens.

#ifndef CMX_METRICS_H_
#define CMX_METRICS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cmx/corpus.h"

namespace cmx {

// Added to zero n-gram match counts before taking the log.
inline constexpr double kBleuEpsilon = 1e-9;

size_t LcsLength(const std::vector<std::string>& a,
                 const std::vector<std::string>& b);

// F1 with beta = 1; 0 when the LCS is empty. Throws DataError if either
// sentence is empty.
double RougeLF1(const Sentence& hypothesis, const Sentence& reference);

struct BleuStats {
  std::vector<size_t> matches;  // clipped, per order
  std::vector<size_t> totals;   // hypothesis n-grams, per order
  size_t hyp_len = 0;
  size_t ref_len = 0;
};

BleuStats CollectBleuStats(const std::vector<Sentence>& hypotheses,
                           const std::vector<Sentence>& references,
                           size_t max_n = 4);

// Corpus BLEU. Precision p_n = m_n / t_n, with m_n = 0 replaced by
// kBleuEpsilon and t_n = 0 treated as 1; an order with no n-grams on either
// side counts as p_n = 1. BP = exp(min(0, 1 - r/c)); an empty hypothesis
// corpus scores 0. Throws DataError on a length mismatch.
double Bleu(const std::vector<Sentence>& hypotheses,
            const std::vector<Sentence>& references, size_t max_n = 4);

struct ScoreReport {
  double rouge_l_f1 = 0.0;  // mean sentence F1
  double bleu = 0.0;
  size_t n_pairs = 0;

  std::string ToJson() const;
};

// Empty hypotheses count as F1 = 0; empty references or an empty corpus
// are errors.
ScoreReport Score(const std::vector<Sentence>& hypotheses,
                  const std::vector<Sentence>& references, int jobs = 1);

// One sentence per line; a trailing newline does not add a line.
std::vector<Sentence> ReadLines(std::string_view text);

}  // namespace cmx

#endif  // CMX_METRICS_H_
