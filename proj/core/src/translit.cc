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

#include "cmx/translit.h"

#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "cmx/digest.h"
#include "cmx/error.h"
#include "cmx/parallel.h"
#include "cmx/utf8.h"

namespace cmx {
namespace {

struct Range {
  char32_t lo, hi;
};

bool InRanges(char32_t cp, std::initializer_list<Range> ranges) {
  for (const Range& r : ranges) {
    if (cp >= r.lo && cp <= r.hi) return true;
  }
  return false;
}

bool IsConsonantCodePoint(char32_t cp) {
  return InRanges(cp, {{0x0915, 0x0939}, {0x0958, 0x095F}, {0x0978, 0x097F}});
}
bool IsIndependentVowelCodePoint(char32_t cp) {
  return InRanges(cp, {{0x0904, 0x0914}, {0x0960, 0x0961}, {0x0972, 0x0977}});
}
bool IsVowelSignCodePoint(char32_t cp) {
  return InRanges(cp, {{0x093A, 0x093B},
                       {0x093E, 0x094C},
                       {0x094E, 0x094F},
                       {0x0955, 0x0957},
                       {0x0962, 0x0963}});
}
bool IsDigitCodePoint(char32_t cp) { return cp >= 0x0966 && cp <= 0x096F; }

// Consonant + nukta -> precomposed nukta consonant.
char32_t ComposeNukta(char32_t base) {
  switch (base) {
    case 0x0915: return 0x0958;
    case 0x0916: return 0x0959;
    case 0x0917: return 0x095A;
    case 0x091C: return 0x095B;
    case 0x0921: return 0x095C;
    case 0x0922: return 0x095D;
    case 0x092B: return 0x095E;
    case 0x092F: return 0x095F;
    case 0x0928: return 0x0929;
    case 0x0930: return 0x0931;
    case 0x0933: return 0x0934;
    default: return 0;
  }
}

void ValidateSection(const std::map<char32_t, std::string>& section,
                     const char* name, bool (*in_range)(char32_t),
                     std::set<char32_t>& claimed) {
  for (const auto& [cp, roman] : section) {
    const std::string label = utf8::CodePointLabel(cp);
    if (!utf8::IsDevanagari(cp)) {
      throw DataError(std::string(name) + ": " + label + " is not Devanagari");
    }
    if (in_range != nullptr && !in_range(cp)) {
      throw DataError(std::string(name) + ": " + label +
                      " is outside this category's range");
    }
    if (cp == kVirama || cp == kNukta) {
      throw DataError(std::string(name) + ": " + label +
                      " is structural and cannot be mapped");
    }
    if (roman.empty()) {
      throw DataError(std::string(name) + ": " + label + " maps to empty");
    }
    for (char c : roman) {
      if (static_cast<unsigned char>(c) >= 0x80) {
        throw DataError(std::string(name) + ": " + label +
                        " maps to non-ASCII text");
      }
    }
    if (!claimed.insert(cp).second) {
      throw DataError(label + " appears in more than one table section");
    }
  }
}

std::map<char32_t, std::string> ParseSection(const nlohmann::json& doc,
                                             const char* key) {
  std::map<char32_t, std::string> out;
  auto it = doc.find(key);
  if (it == doc.end()) return out;
  if (!it->is_object()) {
    throw DataError(std::string("table section '") + key +
                    "' must be an object");
  }
  for (const auto& [label, value] : it->items()) {
    if (!value.is_string()) {
      throw DataError(std::string("table section '") + key + "': " + label +
                      " must map to a string");
    }
    out.emplace(utf8::ParseCodePointLabel(label), value.get<std::string>());
  }
  return out;
}

[[noreturn]] void Unmappable(char32_t cp, size_t pos) {
  throw DataError("unmappable Devanagari code point " +
                  utf8::CodePointLabel(cp) + " at character " +
                  std::to_string(pos));
}

class LineTransliterator {
 public:
  LineTransliterator(const TranslitTable& table, std::vector<char32_t> cps)
      : table_(table), cps_(std::move(cps)) {}

  std::string Run() {
    while (pos_ < cps_.size()) Step();
    return std::move(out_);
  }

 private:
  static const std::string* Find(const std::map<char32_t, std::string>& m,
                                 char32_t cp) {
    auto it = m.find(cp);
    return it == m.end() ? nullptr : &it->second;
  }

  // Letters and signs that continue a word; digits and punctuation do not.
  bool IsWordChar(char32_t cp) const {
    return table_.consonants.count(cp) || table_.vowels_independent.count(cp) ||
           table_.vowel_signs.count(cp) || cp == kVirama || cp == kNukta ||
           cp == 0x0900 || cp == 0x0901 || cp == 0x0902 || cp == 0x0903 ||
           cp == 0x093D;
  }

  void EmitVowel(const std::string& roman) {
    out_ += roman;
    ++vowels_in_word_;
  }

  void Step() {
    const char32_t cp = cps_[pos_];
    if (!utf8::IsDevanagari(cp)) {
      utf8::Append(out_, cp);
      vowels_in_word_ = 0;
      ++pos_;
      return;
    }
    if (const std::string* consonant = Find(table_.consonants, cp)) {
      Consonant(cp, consonant);
      return;
    }
    if (const std::string* v = Find(table_.vowels_independent, cp)) {
      EmitVowel(*v);
      ++pos_;
      return;
    }
    if (const std::string* v = Find(table_.vowel_signs, cp)) {
      // A vowel sign with no consonant still keeps its vowel.
      EmitVowel(*v);
      ++pos_;
      return;
    }
    if (const std::string* d = Find(table_.digits, cp)) {
      out_ += *d;
      vowels_in_word_ = 0;
      ++pos_;
      return;
    }
    if (const std::string* s = Find(table_.specials, cp)) {
      out_ += *s;
      if (!IsWordChar(cp)) vowels_in_word_ = 0;
      ++pos_;
      return;
    }
    if (cp == kVirama || cp == kNukta) {
      throw DataError("stray combining mark " + utf8::CodePointLabel(cp) +
                      " at character " + std::to_string(pos_));
    }
    Unmappable(cp, pos_);
  }

  void Consonant(char32_t cp, const std::string* roman) {
    size_t next = pos_ + 1;
    if (next < cps_.size() && cps_[next] == kNukta) {
      const char32_t composed = ComposeNukta(cp);
      const std::string* nukta_form =
          composed ? Find(table_.consonants, composed) : nullptr;
      if (nukta_form == nullptr) Unmappable(kNukta, next);
      roman = nukta_form;
      ++next;
    }
    out_ += *roman;
    if (next < cps_.size()) {
      if (const std::string* sign = Find(table_.vowel_signs, cps_[next])) {
        EmitVowel(*sign);
        pos_ = next + 1;
        return;
      }
      if (cps_[next] == kVirama) {
        pos_ = next + 1;
        return;
      }
    }
    const bool word_final = next >= cps_.size() || !IsWordChar(cps_[next]);
    if (!(word_final && vowels_in_word_ > 0)) {
      EmitVowel(table_.inherent_vowel);
    }
    pos_ = next;
  }

  const TranslitTable& table_;
  std::vector<char32_t> cps_;
  size_t pos_ = 0;
  int vowels_in_word_ = 0;
  std::string out_;
};

}  // namespace

void TranslitTable::Validate() const {
  if (inherent_vowel.empty()) throw DataError("inherent vowel is empty");
  std::set<char32_t> claimed;
  ValidateSection(consonants, "consonants", IsConsonantCodePoint, claimed);
  ValidateSection(vowels_independent, "vowels", IsIndependentVowelCodePoint,
                  claimed);
  ValidateSection(vowel_signs, "vowel_signs", IsVowelSignCodePoint, claimed);
  ValidateSection(digits, "digits", IsDigitCodePoint, claimed);
  ValidateSection(specials, "specials", nullptr, claimed);
  for (const auto& [cp, roman] : vowel_signs) {
    if (roman == inherent_vowel) {
      throw DataError("vowel sign " + utf8::CodePointLabel(cp) +
                      " collides with the inherent vowel");
    }
  }
}

TranslitTable ParseTranslitTable(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("invalid transliteration table: ") + e.what());
  }
  if (!doc.is_object()) {
    throw DataError("transliteration table must be a JSON object");
  }
  TranslitTable table;
  table.name = doc.value("name", "");
  table.inherent_vowel = doc.value("inherent_vowel", "a");
  table.consonants = ParseSection(doc, "consonants");
  table.vowels_independent = ParseSection(doc, "vowels");
  table.vowel_signs = ParseSection(doc, "vowel_signs");
  table.digits = ParseSection(doc, "digits");
  table.specials = ParseSection(doc, "specials");
  table.Validate();
  return table;
}

TranslitTable LoadTranslitTable(const std::filesystem::path& path) {
  try {
    return ParseTranslitTable(ReadFile(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string TransliterateLine(std::string_view line,
                              const TranslitTable& table) {
  return LineTransliterator(table, utf8::Decode(line)).Run();
}

std::vector<Triple> TransliterateCorpus(std::vector<Triple> triples,
                                        const TranslitTable& table, int jobs) {
  ParallelFor(triples.size(), jobs, [&](size_t i) {
    Triple& t = triples[i];
    try {
      t.hindi_roman =
          Sentence::FromText(TransliterateLine(t.hindi_deva.raw, table));
    } catch (const DataError& e) {
      throw DataError("triple '" + t.id + "': " + e.what());
    }
  });
  return triples;
}

}  // namespace cmx
