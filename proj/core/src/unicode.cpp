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

#include "stylo/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "stylo/error.hpp"

namespace stylo::uni {

std::u32string decode_utf8(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
    std::int32_t i = 0;
    auto length = static_cast<std::int32_t>(text.size());
    while (i < length) {
        UChar32 cp;
        std::int32_t at = i;
        U8_NEXT(bytes, i, length, cp);
        if (cp < 0) {
            throw Error("malformed UTF-8 at byte offset " + std::to_string(at));
        }
        out.push_back(static_cast<char32_t>(cp));
    }
    return out;
}

std::size_t scalar_count(std::string_view text) {
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
    std::int32_t i = 0;
    auto length = static_cast<std::int32_t>(text.size());
    std::size_t n = 0;
    while (i < length) {
        UChar32 cp;
        std::int32_t at = i;
        U8_NEXT(bytes, i, length, cp);
        if (cp < 0) {
            throw Error("malformed UTF-8 at byte offset " + std::to_string(at));
        }
        ++n;
    }
    return n;
}

void append_utf8(std::string& out, char32_t cp) {
    std::uint8_t buf[U8_MAX_LENGTH];
    std::int32_t i = 0;
    UBool err = false;
    U8_APPEND(buf, i, U8_MAX_LENGTH, static_cast<UChar32>(cp), err);
    if (err) throw Error("code point out of range: " + std::to_string(cp));
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(i));
}

std::string encode_utf8(std::u32string_view scalars) {
    std::string out;
    out.reserve(scalars.size());
    for (char32_t cp : scalars) append_utf8(out, cp);
    return out;
}

std::string nfc(std::string_view text) {
    // Validate strictly before handing off; fromUTF8 would silently replace
    // bad sequences with U+FFFD.
    (void)scalar_count(text);

    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw Error("ICU NFC instance unavailable");

    icu::UnicodeString src = icu::UnicodeString::fromUTF8(
        icu::StringPiece(text.data(), static_cast<std::int32_t>(text.size())));
    icu::UnicodeString dst = norm->normalize(src, status);
    if (U_FAILURE(status)) throw Error("NFC normalization failed");

    std::string out;
    dst.toUTF8String(out);
    return out;
}

bool is_letter(char32_t cp) { return u_isalpha(static_cast<UChar32>(cp)); }

bool is_digit(char32_t cp) { return u_isdigit(static_cast<UChar32>(cp)); }

bool is_uppercase(char32_t cp) {
    auto type = u_charType(static_cast<UChar32>(cp));
    return type == U_UPPERCASE_LETTER || type == U_TITLECASE_LETTER;
}

bool is_whitespace(char32_t cp) {
    return u_hasBinaryProperty(static_cast<UChar32>(cp), UCHAR_WHITE_SPACE);
}

bool is_punct(char32_t cp) {
    return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_P_MASK) != 0;
}

bool is_symbol(char32_t cp) {
    return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_S_MASK) != 0;
}

char32_t to_lower(char32_t cp) {
    return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

std::string to_lower(std::string_view text) {
    std::u32string scalars = decode_utf8(text);
    for (char32_t& cp : scalars) cp = to_lower(cp);
    return encode_utf8(scalars);
}

}  // namespace stylo::uni
