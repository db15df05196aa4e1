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

#include "cmx/utf8.h"

#include <cstdint>
#include <cstdio>

#include "cmx/error.h"

namespace cmx::utf8 {
namespace {

// Returns the sequence length for a lead byte, 0 if invalid.
int SequenceLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if (lead >= 0xC2 && lead <= 0xDF) return 2;
  if (lead >= 0xE0 && lead <= 0xEF) return 3;
  if (lead >= 0xF0 && lead <= 0xF4) return 4;
  return 0;
}

// Decodes one code point at text[pos]; returns its byte length.
int DecodeOne(std::string_view text, size_t pos, char32_t* out) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  const int len = SequenceLength(lead);
  if (len == 0 || pos + len > text.size()) {
    throw DataError("invalid UTF-8 at byte offset " + std::to_string(pos));
  }
  if (len == 1) {
    *out = lead;
    return 1;
  }
  char32_t cp = lead & (0x7F >> len);
  for (int i = 1; i < len; ++i) {
    const auto cont = static_cast<unsigned char>(text[pos + i]);
    if ((cont & 0xC0) != 0x80) {
      throw DataError("invalid UTF-8 continuation at byte offset " +
                      std::to_string(pos + i));
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  const bool overlong = (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
  const bool surrogate = cp >= 0xD800 && cp <= 0xDFFF;
  if (overlong || surrogate || cp > 0x10FFFF) {
    throw DataError("invalid UTF-8 code point at byte offset " +
                    std::to_string(pos));
  }
  *out = cp;
  return len;
}

}  // namespace

std::vector<char32_t> Decode(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp;
    pos += DecodeOne(text, pos, &cp);
    out.push_back(cp);
  }
  return out;
}

std::vector<std::string> SplitCodePoints(std::string_view text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp;
    const int len = DecodeOne(text, pos, &cp);
    out.emplace_back(text.substr(pos, len));
    pos += len;
  }
  return out;
}

void Append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string Encode(char32_t cp) {
  std::string out;
  Append(out, cp);
  return out;
}

std::string CodePointLabel(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

char32_t ParseCodePointLabel(std::string_view label) {
  if (label.size() < 3 || (label[0] != 'U' && label[0] != 'u') ||
      label[1] != '+') {
    throw DataError("bad code point label '" + std::string(label) + "'");
  }
  std::uint32_t value = 0;
  for (char c : label.substr(2)) {
    int digit;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      digit = c - 'A' + 10;
    } else {
      throw DataError("bad code point label '" + std::string(label) + "'");
    }
    value = value * 16 + digit;
    if (value > 0x10FFFF) {
      throw DataError("code point out of range '" + std::string(label) + "'");
    }
  }
  return value;
}

bool ContainsDevanagari(std::string_view text) {
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp;
    pos += DecodeOne(text, pos, &cp);
    if (IsDevanagari(cp)) return true;
  }
  return false;
}

}  // namespace cmx::utf8
