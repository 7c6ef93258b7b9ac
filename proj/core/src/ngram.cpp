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

#include "stylo/ngram.hpp"

#include <cmath>
#include <utility>

#include <nlohmann/json.hpp>

#include "stylo/error.hpp"
#include "stylo/unicode.hpp"

namespace stylo {

namespace {

void check_order(int order) {
    if (order < kMinGramOrder || order > kMaxGramOrder) {
        throw Error("n-gram order must be in [" + std::to_string(kMinGramOrder) + "," +
                    std::to_string(kMaxGramOrder) + "], got " + std::to_string(order));
    }
}

std::string replace_separator(std::string_view key, std::string_view from,
                              std::string_view to) {
    std::string out;
    out.reserve(key.size());
    std::size_t pos = 0;
    while (pos < key.size()) {
        std::size_t hit = key.find(from, pos);
        if (hit == std::string_view::npos) {
            out.append(key.substr(pos));
            break;
        }
        out.append(key.substr(pos, hit - pos));
        out.append(to);
        pos = hit + from.size();
    }
    return out;
}

}  // namespace

std::string_view to_string(GramUnit unit) {
    return unit == GramUnit::character ? "char" : "word";
}

GramUnit gram_unit_from_string(std::string_view name) {
    if (name == "char") return GramUnit::character;
    if (name == "word") return GramUnit::word;
    throw Error("unknown gram unit: " + std::string(name));
}

NGramVector::NGramVector(GramUnit unit, int order) : unit_(unit), order_(order) {
    check_order(order);
}

void NGramVector::add(std::string key, std::uint64_t count) {
    if (count == 0) return;
    auto [it, inserted] = counts_.try_emplace(std::move(key), count);
    if (!inserted) it->second += count;
    basis_ += count;
}

double NGramVector::frequency(const std::string& key) const {
    auto it = counts_.find(key);
    if (it == counts_.end() || basis_ == 0) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(basis_);
}

std::map<std::string, double> NGramVector::frequencies() const {
    std::map<std::string, double> out;
    if (basis_ == 0) return out;
    for (const auto& [key, count] : counts_) {
        out.emplace(key, static_cast<double>(count) / static_cast<double>(basis_));
    }
    return out;
}

TokenSequence tokenize(std::string_view text) {
    std::u32string scalars = uni::decode_utf8(text);
    TokenSequence seq;

    std::size_t i = 0;
    while (i < scalars.size()) {
        while (i < scalars.size() &&
               (uni::is_whitespace(scalars[i]) || scalars[i] == kWordGramSeparator)) {
            ++i;
        }
        std::size_t start = i;
        while (i < scalars.size() && !uni::is_whitespace(scalars[i]) &&
               scalars[i] != kWordGramSeparator) {
            ++i;
        }
        if (i == start) break;

        std::u32string raw = scalars.substr(start, i - start);
        // A token that is nothing but punctuation/symbols (an emoticon, "!!!",
        // a lone emoji with its modifiers) is kept whole; otherwise strip
        // punctuation from both ends.
        auto is_markish = [](char32_t c) {
            return uni::is_punct(c) || uni::is_symbol(c) || c == U'‍' ||
                   c == U'︎' || c == U'️';
        };
        bool all_marks = true;
        for (char32_t c : raw) {
            if (!is_markish(c)) {
                all_marks = false;
                break;
            }
        }
        if (!all_marks) {
            std::size_t lo = 0;
            std::size_t hi = raw.size();
            while (lo < hi && uni::is_punct(raw[lo])) ++lo;
            while (hi > lo && uni::is_punct(raw[hi - 1])) --hi;
            raw = raw.substr(lo, hi - lo);
        }
        if (!raw.empty()) seq.tokens.push_back(uni::encode_utf8(raw));
    }
    return seq;
}

NGramVector extract_char_ngrams(std::string_view text, int order) {
    check_order(order);
    NGramVector vec(GramUnit::character, order);
    std::u32string scalars = uni::decode_utf8(text);
    auto n = static_cast<std::size_t>(order);
    if (scalars.size() < n) return vec;
    for (std::size_t i = 0; i + n <= scalars.size(); ++i) {
        vec.add(uni::encode_utf8(scalars.substr(i, n)));
    }
    return vec;
}

NGramVector extract_word_ngrams(const TokenSequence& tokens, int order) {
    check_order(order);
    NGramVector vec(GramUnit::word, order);
    auto n = static_cast<std::size_t>(order);
    if (tokens.tokens.size() < n) return vec;

    std::string sep;
    uni::append_utf8(sep, kWordGramSeparator);
    for (std::size_t i = 0; i + n <= tokens.tokens.size(); ++i) {
        std::string key = tokens.tokens[i];
        for (std::size_t j = 1; j < n; ++j) {
            key += sep;
            key += tokens.tokens[i + j];
        }
        vec.add(key);
    }
    return vec;
}

NGramVector merge_counts(const std::vector<NGramVector>& vectors) {
    if (vectors.empty()) throw Error("merge_counts needs at least one vector");
    NGramVector merged(vectors.front().unit(), vectors.front().order());
    for (const auto& vec : vectors) {
        if (vec.unit() != merged.unit() || vec.order() != merged.order()) {
            throw Error("merge_counts operands must share unit and order");
        }
        for (const auto& [key, count] : vec.counts()) merged.add(key, count);
    }
    return merged;
}

std::string NGramVector::to_json() const {
    std::string sep;
    uni::append_utf8(sep, kWordGramSeparator);

    nlohmann::ordered_json root;
    root["unit"] = std::string(stylo::to_string(unit_));
    root["order"] = order_;
    root["count_basis"] = basis_;
    auto& freqs = root["freqs"] = nlohmann::ordered_json::object();
    for (const auto& [key, freq] : frequencies()) {
        std::string display =
            unit_ == GramUnit::word ? replace_separator(key, sep, kDisplaySeparator) : key;
        freqs[display] = freq;
    }
    return root.dump(2) + "\n";
}

NGramVector NGramVector::from_json(std::string_view json_text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid n-gram JSON: ") + e.what());
    }
    for (const char* key : {"unit", "order", "count_basis", "freqs"}) {
        if (!root.contains(key)) {
            throw Error(std::string("n-gram JSON missing \"") + key + "\"");
        }
    }

    NGramVector vec(gram_unit_from_string(root["unit"].get<std::string>()),
                    root["order"].get<int>());
    auto basis = root["count_basis"].get<std::uint64_t>();

    std::string sep;
    uni::append_utf8(sep, kWordGramSeparator);
    for (const auto& [display, freq] : root["freqs"].items()) {
        std::string key = vec.unit_ == GramUnit::word
                              ? replace_separator(display, kDisplaySeparator, sep)
                              : display;
        double f = freq.get<double>();
        if (!(f > 0.0 && f <= 1.0)) {
            throw Error("n-gram JSON frequency out of (0,1]: " + display);
        }
        auto count = static_cast<std::uint64_t>(
            std::llround(f * static_cast<double>(basis)));
        if (count == 0) throw Error("n-gram JSON frequency inconsistent with basis");
        vec.add(key, count);
    }
    if (vec.basis_ != basis) {
        throw Error("n-gram JSON frequencies inconsistent with count_basis");
    }
    return vec;
}

}  // namespace stylo
