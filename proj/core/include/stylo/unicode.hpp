// Copyright 2026 The Stylo Authors
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

#ifndef STYLO_UNICODE_HPP
#define STYLO_UNICODE_HPP

#include <cstddef>
#include <string>
#include <string_view>

namespace stylo::uni {

/// Decodes strict UTF-8 into Unicode scalar values.
/// Throws stylo::Error on malformed input (overlong forms, surrogates,
/// truncated sequences, out-of-range code points).
std::u32string decode_utf8(std::string_view text);

/// Number of Unicode scalar values in a UTF-8 string. Throws on malformed input.
std::size_t scalar_count(std::string_view text);

std::string encode_utf8(std::u32string_view scalars);
void append_utf8(std::string& out, char32_t cp);

/// Canonical composition (normalization form C). Validates the input first.
std::string nfc(std::string_view text);

// Character classes used by the preprocessing patterns and feature catalog.
bool is_letter(char32_t cp);      // general category L*
bool is_digit(char32_t cp);       // general category Nd
bool is_uppercase(char32_t cp);   // Lu or Lt
bool is_whitespace(char32_t cp);  // Unicode White_Space
bool is_punct(char32_t cp);       // general category P*
bool is_symbol(char32_t cp);      // general category S*

/// ASCII [A-Za-z0-9_]; the mention pattern is deliberately ASCII-only.
inline bool is_ascii_word(char32_t cp) {
    return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z') ||
           (cp >= '0' && cp <= '9') || cp == '_';
}

char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view text);

}  // namespace stylo::uni

#endif  // STYLO_UNICODE_HPP
