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

#include "cmx/lid.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cmx/digest.h"
#include "cmx/error.h"
#include "cmx/utf8.h"

namespace cmx {
namespace {

constexpr std::array<std::string_view, 24> kEmoticons = {
    ":)",  ":-)", ":(",  ":-(", ":D",  ":-D", ";)", ";-)",
    ":P",  ":-P", ":p",  ":-p", "xD",  "XD",  ":/", ":'(",
    "<3",  ":o",  ":O",  "^_^", "-_-", ":*",  ":|", ";D"};

bool IsLetter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp >= 0x00C0 && cp <= 0x024F) return cp != 0x00D7 && cp != 0x00F7;
  if (utf8::IsDevanagari(cp)) {
    const bool digit = cp >= 0x0966 && cp <= 0x096F;
    const bool punct = cp == 0x0964 || cp == 0x0965 || cp == 0x0970;
    return !digit && !punct;
  }
  return false;
}

bool IsAsciiPunct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

std::string ToLowerAscii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Lowercases and strips surrounding ASCII punctuation ("Bhai," -> "bhai").
std::string NormalizeWord(std::string_view token) {
  size_t b = 0, e = token.size();
  while (b < e && IsAsciiPunct(token[b])) ++b;
  while (e > b && IsAsciiPunct(token[e - 1])) --e;
  return ToLowerAscii(token.substr(b, e - b));
}

std::vector<std::string> PaddedTrigrams(std::string_view word) {
  const std::string padded = "^^" + std::string(word) + "$";
  std::vector<std::string> grams;
  for (size_t i = 0; i + Lexicons::kOrder <= padded.size(); ++i) {
    grams.push_back(padded.substr(i, Lexicons::kOrder));
  }
  return grams;
}

std::vector<std::string> ReadWordList(const std::filesystem::path& path) {
  std::vector<std::string> words;
  std::istringstream in(ReadFile(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = SplitWhitespace(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    words.push_back(tokens[0]);
  }
  return words;
}

}  // namespace

std::string_view LangName(Lang lang) {
  switch (lang) {
    case Lang::kHindi:
      return "hindi";
    case Lang::kEnglish:
      return "english";
    case Lang::kOther:
      return "other";
  }
  return "other";
}

Lexicons::Lexicons(std::vector<std::string> english_words,
                   std::vector<std::string> hindi_roman_words) {
  for (const auto& w : english_words) {
    if (!w.empty()) english_.insert(ToLowerAscii(w));
  }
  for (const auto& w : hindi_roman_words) {
    if (!w.empty()) hindi_.insert(ToLowerAscii(w));
  }

  std::unordered_map<std::string, double> count_en, count_hi;
  double total_en = 0, total_hi = 0;
  for (const auto& w : english_) {
    for (auto& g : PaddedTrigrams(w)) {
      ++count_en[g];
      ++total_en;
    }
  }
  for (const auto& w : hindi_) {
    for (auto& g : PaddedTrigrams(w)) {
      ++count_hi[g];
      ++total_hi;
    }
  }
  std::unordered_set<std::string> vocab;
  for (const auto& [g, c] : count_en) vocab.insert(g);
  for (const auto& [g, c] : count_hi) vocab.insert(g);
  // One extra slot for unseen trigrams.
  const double v = static_cast<double>(vocab.size()) + 1.0;
  const double denom_en = total_en + v;
  const double denom_hi = total_hi + v;
  for (const auto& g : vocab) {
    const double c_en = count_en.count(g) ? count_en.at(g) : 0.0;
    const double c_hi = count_hi.count(g) ? count_hi.at(g) : 0.0;
    weights_[g] =
        std::log((c_hi + 1.0) / denom_hi) - std::log((c_en + 1.0) / denom_en);
  }
  unseen_weight_ = std::log(denom_en / denom_hi);
}

Lexicons Lexicons::Load(const std::filesystem::path& english_path,
                        const std::filesystem::path& hindi_roman_path) {
  return Lexicons(ReadWordList(english_path), ReadWordList(hindi_roman_path));
}

double Lexicons::LogOdds(std::string_view lower) const {
  double score = 0.0;
  for (const auto& g : PaddedTrigrams(lower)) {
    auto it = weights_.find(g);
    score += it == weights_.end() ? unseen_weight_ : it->second;
  }
  return score;
}

bool IsNonLinguistic(std::string_view token) {
  if (token.empty()) return true;
  if ((token[0] == '@' || token[0] == '#') && token.size() > 1) return true;
  if (token.starts_with("http://") || token.starts_with("https://") ||
      token.starts_with("www.")) {
    return true;
  }
  if (std::find(kEmoticons.begin(), kEmoticons.end(), token) !=
      kEmoticons.end()) {
    return true;
  }
  for (char32_t cp : utf8::Decode(token)) {
    if (IsLetter(cp)) return false;
  }
  return true;
}

TokenLang ClassifyToken(std::string_view token, const Lexicons& lex) {
  if (IsNonLinguistic(token)) return {Lang::kOther, 1.0};
  if (utf8::ContainsDevanagari(token)) return {Lang::kHindi, 1.0};
  const std::string word = NormalizeWord(token);
  const bool en = lex.IsEnglishWord(word);
  const bool hi = lex.IsHindiWord(word);
  if (en != hi) {
    return {en ? Lang::kEnglish : Lang::kHindi, Lexicons::kWordlistConfidence};
  }
  const double score = lex.LogOdds(word);
  const double confidence = 1.0 / (1.0 + std::exp(-std::abs(score)));
  return {score >= 0.0 ? Lang::kHindi : Lang::kEnglish, confidence};
}

Lang MatrixLanguageFromLabels(const std::vector<Lang>& labels) {
  const auto hi = std::count(labels.begin(), labels.end(), Lang::kHindi);
  const auto en = std::count(labels.begin(), labels.end(), Lang::kEnglish);
  return en > hi ? Lang::kEnglish : Lang::kHindi;
}

Lang MatrixLanguage(const Sentence& sentence, const Lexicons& lex) {
  std::vector<Lang> labels;
  labels.reserve(sentence.tokens.size());
  for (const auto& tok : sentence.tokens) {
    labels.push_back(ClassifyToken(tok, lex).label);
  }
  return MatrixLanguageFromLabels(labels);
}

MatrixRatioReport MatrixRatioFromMatrices(const std::vector<Lang>& matrices) {
  if (matrices.empty()) {
    throw DataError("matrix ratio report needs a non-empty corpus");
  }
  MatrixRatioReport report;
  report.n = matrices.size();
  for (Lang m : matrices) {
    if (m == Lang::kEnglish) {
      ++report.english_count;
    } else {
      ++report.hindi_count;
    }
  }
  const double n = static_cast<double>(report.n);
  report.hindi_pct = 100.0 * static_cast<double>(report.hindi_count) / n;
  report.english_pct = 100.0 * static_cast<double>(report.english_count) / n;
  return report;
}

MatrixRatioReport MatrixRatio(const std::vector<Sentence>& corpus,
                              const Lexicons& lex) {
  std::vector<Lang> matrices;
  matrices.reserve(corpus.size());
  for (const auto& s : corpus) matrices.push_back(MatrixLanguage(s, lex));
  return MatrixRatioFromMatrices(matrices);
}

std::string MatrixRatioReport::ToJson() const {
  nlohmann::ordered_json obj;
  obj["hindi_pct"] = hindi_pct;
  obj["english_pct"] = english_pct;
  obj["n"] = n;
  obj["hindi_count"] = hindi_count;
  obj["english_count"] = english_count;
  return obj.dump(2) + "\n";
}

std::string MatrixRatioReport::ToText() const {
  constexpr int kBarWidth = 40;
  auto row = [](const char* name, size_t count, double pct, int bar) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-8s %7zu %7.1f%%  ", name, count, pct);
    return std::string(buf) + std::string(static_cast<size_t>(bar), '#') +
           "\n";
  };
  auto bar = [](double pct) {
    return static_cast<int>(std::lround(pct * kBarWidth / 100.0));
  };
  std::string out = "matrix     count  percent\n";
  out += row("hindi", hindi_count, hindi_pct, bar(hindi_pct));
  out += row("english", english_count, english_pct, bar(english_pct));
  out += row("total", n, hindi_pct + english_pct, 0);
  return out;
}

}  // namespace cmx
