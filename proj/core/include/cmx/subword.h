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


// Byte-pair encoding over code points with an end-of-word marker.
//
// Marker scheme: every word (maximal run of non-whitespace) is split into
// code points; '\' and '<' are escaped as "\\" and "\<", and "</w>" is
// appended to the last symbol. A single space between two words is
// implicit. Any other whitespace run (leading, trailing, repeated spaces,
// tabs) is emitted verbatim as its own token. Decode is the exact inverse.

#ifndef CMX_SUBWORD_H_
#define CMX_SUBWORD_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmx {

inline constexpr std::string_view kEndOfWord = "</w>";

struct MergeList {
  std::vector<std::pair<std::string, std::string>> merges;
  // Requested vocabulary size; 0 when learned from a merge count.
  size_t vocab_size = 0;
  std::vector<std::string> special_tokens = {"<pad>", "<unk>", "<s>", "</s>"};
  // Single-code-point symbols seen while learning, sorted.
  std::vector<std::string> base_symbols;

  // Special tokens, base symbols, then merge results in merge order,
  // without duplicates.
  std::vector<std::string> Vocab() const;

  // One "left right" line per merge.
  std::string MergesText() const;
  std::string VocabText() const;
  static MergeList FromText(std::string_view merges_text,
                            std::string_view vocab_text = {});
};

// Escaped code-point symbols of one word, marker on the last one.
std::vector<std::string> WordSymbols(std::string_view word);

// Greedy BPE: each step merges the most frequent adjacent pair, ties broken
// by (left, right) in byte order. Stops after target_merges merges or when
// no pair occurs at least twice. Throws DataError on an empty corpus.
MergeList LearnBpe(const std::vector<std::string>& lines, size_t target_merges,
                   int jobs = 1);

// Picks target_merges so the vocabulary reaches vocab_size when the corpus
// allows it.
MergeList LearnBpeVocab(const std::vector<std::string>& lines,
                        size_t vocab_size, int jobs = 1);

class BpeEncoder {
 public:
  explicit BpeEncoder(const MergeList& merges);

  std::vector<std::string> Encode(std::string_view line) const;
  std::vector<std::string> EncodeWord(std::string_view word) const;

 private:
  std::map<std::pair<std::string, std::string>, size_t> ranks_;
};

std::vector<std::string> Encode(std::string_view line, const MergeList& m);

// Throws DataError on malformed input: a word left open, a marker before the
// end of a token, a dangling escape, an empty token, or a token mixing
// whitespace with other characters.
std::string Decode(const std::vector<std::string>& tokens);

}  // namespace cmx

#endif  // CMX_SUBWORD_H_
