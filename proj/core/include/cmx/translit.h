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

#ifndef CMX_TRANSLIT_H_
#define CMX_TRANSLIT_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cmx/corpus.h"

namespace cmx {

inline constexpr char32_t kVirama = 0x094D;
inline constexpr char32_t kNukta = 0x093C;

// Rule-based Devanagari -> Roman mapping. Consonant entries carry no
// inherent vowel; the transliterator adds `inherent_vowel` unless a vowel
// sign or virama follows, or the consonant ends a word that already has a
// vowel (word-final schwa deletion).
struct TranslitTable {
  std::string name;
  std::string inherent_vowel = "a";
  std::map<char32_t, std::string> consonants;
  std::map<char32_t, std::string> vowels_independent;
  std::map<char32_t, std::string> vowel_signs;
  std::map<char32_t, std::string> digits;
  std::map<char32_t, std::string> specials;

  // Throws DataError on: non-Devanagari keys, keys outside the block range
  // of their category, empty or non-ASCII values, a vowel sign equal to the
  // inherent vowel, or a code point claimed by two categories.
  void Validate() const;
};

// Table file format:
// {"name": ..., "inherent_vowel": "a",
//  "consonants": {"U+0915": "k", ...}, "vowels": {...}, "vowel_signs": {...},
//  "digits": {...}, "specials": {...}}
TranslitTable ParseTranslitTable(std::string_view json_text);
TranslitTable LoadTranslitTable(const std::filesystem::path& path);

// Transliterates one line. Non-Devanagari code points pass through
// unchanged. Throws DataError naming the code point when a Devanagari
// character has no mapping, or when a virama/nukta does not follow a
// consonant.
std::string TransliterateLine(std::string_view line,
                              const TranslitTable& table);

// Fills hindi_roman for every triple, preserving order. Errors carry the
// triple id.
std::vector<Triple> TransliterateCorpus(std::vector<Triple> triples,
                                        const TranslitTable& table,
                                        int jobs = 1);

}  // namespace cmx

#endif  // CMX_TRANSLIT_H_
