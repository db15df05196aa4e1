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

#ifndef CMX_UTF8_H_
#define CMX_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace cmx::utf8 {

// Decodes UTF-8 into code points. Throws DataError on invalid input
// (overlong forms, surrogates, truncated sequences).
std::vector<char32_t> Decode(std::string_view text);

// Splits text into one string per code point, preserving the original bytes.
std::vector<std::string> SplitCodePoints(std::string_view text);

void Append(std::string& out, char32_t cp);
std::string Encode(char32_t cp);

// "U+0915" style label.
std::string CodePointLabel(char32_t cp);

// Parses "U+0915" (case-insensitive prefix). Throws DataError.
char32_t ParseCodePointLabel(std::string_view label);

inline bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

inline bool IsDevanagari(char32_t cp) {
  return (cp >= 0x0900 && cp <= 0x097F) || (cp >= 0xA8E0 && cp <= 0xA8FF);
}

bool ContainsDevanagari(std::string_view text);

}  // namespace cmx::utf8

#endif  // CMX_UTF8_H_
