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

// Token-level Hindi/English language identification and matrix-language
// assignment for code-mixed sentences.

#ifndef CMX_LID_H_
#define CMX_LID_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cmx/corpus.h"

namespace cmx {

enum class Lang { kHindi, kEnglish, kOther };

std::string_view LangName(Lang lang);

struct TokenLang {
  Lang label = Lang::kOther;
  double confidence = 1.0;
};

class Lexicons {
 public:
  static constexpr int kOrder = 3;
  // Confidence reported for a word-list hit.
  static constexpr double kWordlistConfidence = 0.99;

  // Builds both word lists and trains the character trigram log-odds from
  // them with add-one smoothing. Forms are lowercased and deduplicated.
  Lexicons(std::vector<std::string> english_words,
           std::vector<std::string> hindi_roman_words);

  // One form per line; blank lines and lines starting with '#' are skipped.
  static Lexicons Load(const std::filesystem::path& english_path,
                       const std::filesystem::path& hindi_roman_path);

  bool IsEnglishWord(const std::string& lower) const {
    return english_.count(lower) > 0;
  }
  bool IsHindiWord(const std::string& lower) const {
    return hindi_.count(lower) > 0;
  }

  // Sum of per-trigram log(P_hindi / P_english) over the padded word.
  // Positive favours Hindi.
  double LogOdds(std::string_view lower) const;

  size_t english_size() const { return english_.size(); }
  size_t hindi_size() const { return hindi_.size(); }

 private:
  std::unordered_set<std::string> english_;
  std::unordered_set<std::string> hindi_;
  std::unordered_map<std::string, double> weights_;
  double unseen_weight_ = 0.0;
};

// Mentions, hashtags, URLs, emoticons and tokens without any letter.
bool IsNonLinguistic(std::string_view token);

// Devanagari -> hindi (confidence 1); non-linguistic -> other; a word-list
// hit in exactly one list wins; otherwise the trigram log-odds decide, ties
// going to hindi.
TokenLang ClassifyToken(std::string_view token, const Lexicons& lex);

// Language with more {hindi, english} tokens; "other" tokens do not count;
// ties (including all-other sentences) go to hindi.
Lang MatrixLanguage(const Sentence& sentence, const Lexicons& lex);
Lang MatrixLanguageFromLabels(const std::vector<Lang>& labels);

struct MatrixRatioReport {
  double hindi_pct = 0.0;
  double english_pct = 0.0;
  size_t n = 0;
  size_t hindi_count = 0;
  size_t english_count = 0;

  std::string ToJson() const;
  // Aligned-column table with a proportional bar per language.
  std::string ToText() const;
};

// Throws DataError on an empty corpus.
MatrixRatioReport MatrixRatio(const std::vector<Sentence>& corpus,
                              const Lexicons& lex);
MatrixRatioReport MatrixRatioFromMatrices(const std::vector<Lang>& matrices);

}  // namespace cmx

#endif  // CMX_LID_H_
