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

#ifndef STYLO_STYLOMETRY_HPP
#define STYLO_STYLOMETRY_HPP

#include <array>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stylo/corpus.hpp"

namespace stylo {

enum class StyloKind { lexical, structural };

std::string_view to_string(StyloKind kind);
StyloKind stylo_kind_from_string(std::string_view name);

// Feature order is a compatibility contract for serialized vectors; never
// reorder, only append.
inline constexpr std::array<std::string_view, 8> kLexicalCatalog = {
    "uppercase_ratio",   "digit_ratio", "special_char_ratio",
    "whitespace_ratio",  "avg_word_length", "type_token_ratio",
    "hapax_ratio",       "avg_words_per_sentence",
};

inline constexpr std::array<std::string_view, 6> kStructuralCatalog = {
    "avg_chars_per_doc",    "avg_words_per_doc",    "avg_sentences_per_doc",
    "avg_mentions_per_doc", "avg_hashtags_per_doc", "avg_urls_per_doc",
};

struct StyloVector {
    StyloKind kind = StyloKind::lexical;
    std::vector<double> values;  // catalog order for its kind
};

struct IdiosyncrasySet {
    std::set<std::string> misspelt;  // lowercase tokens absent from the dictionary
    std::set<std::string> slang;     // lowercase tokens found in the slang lexicon

    bool empty() const { return misspelt.empty() && slang.empty(); }
};

/// Sentences per document: maximal segments ending in '.', '!' or '?' (a run
/// of terminators closes one sentence) plus a trailing unterminated segment
/// when it has any non-whitespace content. Empty text has zero sentences.
std::size_t count_sentences(std::string_view text);

/// Character-level ratios, word-length and vocabulary-richness statistics over
/// the pooled text of all documents. Errors when every document is empty.
/// Degenerate denominators (no tokens, no sentences) yield 0, never NaN.
StyloVector lexical_features(const std::vector<CleanDocument>& documents);

/// Per-document averages: length, word and sentence counts plus the stripped
/// mention/hashtag/URL counts. Errors on an empty document list.
StyloVector structural_features(const std::vector<CleanDocument>& documents);

/// Classifies each fully-alphabetic token of at least two letters, lowercased:
/// slang-lexicon hits become slang, unknown-to-the-dictionary tokens become
/// misspelt. Tokens with digits or other non-letters are skipped.
IdiosyncrasySet idiosyncratic_features(const std::vector<CleanDocument>& documents,
                                       const std::set<std::string>& dictionary,
                                       const std::set<std::string>& slang_lexicon);

/// Per-dimension min-max scaling fit on the profiles only; the query is
/// scaled with the same parameters and clipped to [0,1]. Constant dimensions
/// map to 0. Requires at least 2 profiles of the same kind.
std::pair<std::vector<StyloVector>, StyloVector> normalize_features(
    const std::vector<StyloVector>& profiles, const StyloVector& query);

/// One lowercase word per line, UTF-8; blank lines and duplicates ignored.
std::set<std::string> load_lexicon(const std::filesystem::path& path);
std::set<std::string> parse_lexicon(std::string_view content);

}  // namespace stylo

#endif  // STYLO_STYLOMETRY_HPP
