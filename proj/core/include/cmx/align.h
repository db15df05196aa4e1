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

// Word alignment: IBM Model 1 trained with EM, Viterbi link extraction,
// alignment symmetrization and minimal alignment units (connected components
// of the link graph).

#ifndef CMX_ALIGN_H_
#define CMX_ALIGN_H_

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmx/corpus.h"

namespace cmx {

// Lexical translation probabilities t(f|e). Source word kNullWord stands for
// the empty source position.
class TranslationTable {
 public:
  static constexpr std::string_view kNullWord = "<NULL>";

  using Row = std::map<std::string, double, std::less<>>;

  // 0 when the entry is absent.
  double Prob(std::string_view e, std::string_view f) const;
  void Set(std::string_view e, std::string_view f, double p);
  bool HasSource(std::string_view e) const {
    return rows_.find(e) != rows_.end();
  }
  double RowSum(std::string_view e) const;
  size_t num_entries() const;

  const std::map<std::string, Row, std::less<>>& rows() const { return rows_; }

  // TSV lines "e<TAB>f<TAB>t(f|e)", sorted by e then f, probabilities
  // printed with 17 significant digits.
  std::string ToTsv() const;
  static TranslationTable FromTsv(std::string_view tsv);

  bool operator==(const TranslationTable&) const = default;

 private:
  std::map<std::string, Row, std::less<>> rows_;
};

struct Ibm1Options {
  int iterations = 5;
  bool use_null = true;
  int jobs = 1;
};

struct Ibm1Result {
  TranslationTable table;
  // Corpus log-likelihood under the table after each iteration.
  std::vector<double> log_likelihood;
};

// Trains t(tgt word | src word) over the pairs. The table is initialised
// uniformly over co-occurring target words. E-step counts are accumulated
// per fixed-size shard and reduced in shard order, so the result is
// bitwise identical for any `jobs`. Throws UsageError on empty input or
// iterations < 1.
Ibm1Result TrainIbm1(const std::vector<ParallelPair>& pairs,
                     const Ibm1Options& options);

// Sum over pairs and target positions of log(sum_i t(f_j|e_i) / (I [+1])).
double CorpusLogLikelihood(const std::vector<ParallelPair>& pairs,
                           const TranslationTable& table, bool use_null);

// posterior[j][k] = P(a_j = k | pair); column 0 is NULL when use_null,
// otherwise column k is source position k. Rows whose target word has zero
// mass under every source word are all zero.
std::vector<std::vector<double>> LinkPosteriors(const ParallelPair& pair,
                                                const TranslationTable& table,
                                                bool use_null);

struct AlignmentMatrix {
  size_t src_len = 0;
  size_t tgt_len = 0;
  std::set<std::pair<size_t, size_t>> links;

  // Throws DataError when a link is out of range.
  void Validate() const;
  AlignmentMatrix Transposed() const;
  // Pharaoh format: "i-j" tokens in (i, j) order, single spaces.
  std::string ToPharaoh() const;
  static AlignmentMatrix FromPharaoh(std::string_view line, size_t src_len,
                                     size_t tgt_len);

  bool operator==(const AlignmentMatrix&) const = default;
};

// Each target position links to argmax_i t(f_j|e_i). The NULL word (if the
// table has a row for it) competes first, so it wins ties; a NULL win or an
// all-zero column leaves j unlinked. Other ties go to the smallest i.
AlignmentMatrix ViterbiAlign(const ParallelPair& pair,
                             const TranslationTable& table);

enum class SymmetrizeMode { kIntersection, kGrowDiag };

// `forward` is over (src, tgt); `reverse` is over (tgt, src). Grow-diag
// starts from the intersection and repeatedly scans the current links in
// (i, j) order, adding any union link among the 8 neighbours whose source
// or target position is still unaligned, until nothing changes. Throws
// DataError on mismatched dimensions.
AlignmentMatrix Symmetrize(const AlignmentMatrix& forward,
                           const AlignmentMatrix& reverse, SymmetrizeMode mode);

struct MinimalUnit {
  std::vector<size_t> src_positions;  // sorted, unique
  std::vector<size_t> tgt_positions;  // sorted, unique

  bool operator==(const MinimalUnit&) const = default;
};

// Connected components of the bipartite link graph, ordered by smallest
// source position. Unlinked positions belong to no unit.
std::vector<MinimalUnit> ExtractMinimalUnits(const AlignmentMatrix& m);

}  // namespace cmx

#endif  // CMX_ALIGN_H_
