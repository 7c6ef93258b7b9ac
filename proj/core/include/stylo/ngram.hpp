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

#ifndef STYLO_NGRAM_HPP
#define STYLO_NGRAM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

inline constexpr int kMinGramOrder = 2;
inline constexpr int kMaxGramOrder = 4;

/// Separator between tokens in word-gram keys. tokenize() splits on it, so no
/// token can ever contain it.
inline constexpr char32_t kWordGramSeparator = U'\x1F';

/// Rendering of kWordGramSeparator in serialized vectors (U+00B7).
inline constexpr std::string_view kDisplaySeparator = "·";

enum class GramUnit { character, word };

std::string_view to_string(GramUnit unit);
GramUnit gram_unit_from_string(std::string_view name);

struct TokenSequence {
    std::vector<std::string> tokens;
};

/// Whitespace-splits text into tokens, preserving case. Leading and trailing
/// punctuation (category P*) is stripped from each token, except that tokens
/// made up entirely of punctuation, symbols and emoji joiners are kept whole
/// ("Hello!!" yields "Hello"; ":-)" and multi-emoji runs survive intact).
TokenSequence tokenize(std::string_view text);

/// Sparse n-gram frequency vector. Raw counts are kept internally so vectors
/// from different documents can be pooled without losing exactness; relative
/// frequencies are derived as count / count_basis.
class NGramVector {
public:
    NGramVector() = default;
    NGramVector(GramUnit unit, int order);

    GramUnit unit() const { return unit_; }
    int order() const { return order_; }
    std::uint64_t count_basis() const { return basis_; }
    bool empty() const { return counts_.empty(); }
    std::size_t size() const { return counts_.size(); }

    /// Gram key -> raw count, keyed in byte-lexicographic order.
    const std::map<std::string, std::uint64_t>& counts() const { return counts_; }

    double frequency(const std::string& key) const;

    /// Relative frequencies in key order; every value in (0,1], summing to 1
    /// for non-empty vectors.
    std::map<std::string, double> frequencies() const;

    void add(std::string key, std::uint64_t count = 1);

    /// {"unit", "order", "count_basis", "freqs"} with word-gram keys rendered
    /// using the display separator.
    std::string to_json() const;
    static NGramVector from_json(std::string_view json_text);

private:
    GramUnit unit_ = GramUnit::character;
    int order_ = kMinGramOrder;
    std::map<std::string, std::uint64_t> counts_;
    std::uint64_t basis_ = 0;
};

/// Sliding window of n scalar values over the text (spaces, punctuation and
/// emoji included). Text shorter than n yields an empty vector. Errors when
/// n is outside [2,4].
NGramVector extract_char_ngrams(std::string_view text, int order);

/// Sliding window of n tokens; keys join tokens with kWordGramSeparator.
NGramVector extract_word_ngrams(const TokenSequence& tokens, int order);

/// Pools raw counts of per-document vectors; equivalent to counting each
/// document separately and summing, so no gram ever spans a document
/// boundary. All operands must share unit and order.
NGramVector merge_counts(const std::vector<NGramVector>& vectors);

}  // namespace stylo

#endif  // STYLO_NGRAM_HPP
