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

#include "stylo/stylometry.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "stylo/error.hpp"
#include "stylo/ngram.hpp"
#include "stylo/unicode.hpp"

namespace stylo {

std::string_view to_string(StyloKind kind) {
    return kind == StyloKind::lexical ? "lexical" : "structural";
}

StyloKind stylo_kind_from_string(std::string_view name) {
    if (name == "lexical") return StyloKind::lexical;
    if (name == "structural") return StyloKind::structural;
    throw Error("unknown feature kind: " + std::string(name));
}

std::size_t count_sentences(std::string_view text) {
    std::u32string scalars = uni::decode_utf8(text);
    auto is_terminator = [](char32_t c) { return c == U'.' || c == U'!' || c == U'?'; };

    std::size_t sentences = 0;
    bool trailing_content = false;
    std::size_t i = 0;
    while (i < scalars.size()) {
        if (is_terminator(scalars[i])) {
            while (i < scalars.size() && is_terminator(scalars[i])) ++i;
            ++sentences;
            trailing_content = false;
            continue;
        }
        if (!uni::is_whitespace(scalars[i])) trailing_content = true;
        ++i;
    }
    if (trailing_content) ++sentences;
    return sentences;
}

StyloVector lexical_features(const std::vector<CleanDocument>& documents) {
    std::size_t total = 0;
    std::size_t uppercase = 0;
    std::size_t digits = 0;
    std::size_t special = 0;
    std::size_t whitespace = 0;
    std::size_t sentence_count = 0;
    std::size_t word_scalars = 0;
    std::vector<std::string> tokens;

    for (const auto& doc : documents) {
        for (char32_t c : uni::decode_utf8(doc.clean_text)) {
            ++total;
            if (uni::is_uppercase(c)) ++uppercase;
            if (uni::is_digit(c)) {
                ++digits;
            } else if (uni::is_whitespace(c)) {
                ++whitespace;
            } else if (!uni::is_letter(c)) {
                ++special;
            }
        }
        sentence_count += count_sentences(doc.clean_text);
        for (auto& tok : tokenize(doc.clean_text).tokens) {
            word_scalars += uni::scalar_count(tok);
            tokens.push_back(std::move(tok));
        }
    }
    if (total == 0) throw Error("lexical_features: all documents are empty");

    std::map<std::string, std::size_t> occurrences;
    for (const auto& tok : tokens) ++occurrences[tok];
    std::size_t distinct = occurrences.size();
    std::size_t hapax = 0;
    for (const auto& [_, n] : occurrences) {
        if (n == 1) ++hapax;
    }

    auto ratio = [](std::size_t num, std::size_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };

    StyloVector vec;
    vec.kind = StyloKind::lexical;
    vec.values = {
        ratio(uppercase, total),
        ratio(digits, total),
        ratio(special, total),
        ratio(whitespace, total),
        ratio(word_scalars, tokens.size()),
        ratio(distinct, tokens.size()),
        ratio(hapax, distinct),
        ratio(tokens.size(), sentence_count),
    };
    return vec;
}

StyloVector structural_features(const std::vector<CleanDocument>& documents) {
    if (documents.empty()) throw Error("structural_features: empty document list");

    std::size_t chars = 0;
    std::size_t words = 0;
    std::size_t sentences = 0;
    std::uint64_t mentions = 0;
    std::uint64_t hashtags = 0;
    std::uint64_t urls = 0;
    for (const auto& doc : documents) {
        chars += uni::scalar_count(doc.clean_text);
        words += tokenize(doc.clean_text).tokens.size();
        sentences += count_sentences(doc.clean_text);
        mentions += doc.removed.mentions;
        hashtags += doc.removed.hashtags;
        urls += doc.removed.urls;
    }

    auto n = static_cast<double>(documents.size());
    StyloVector vec;
    vec.kind = StyloKind::structural;
    vec.values = {
        static_cast<double>(chars) / n,     static_cast<double>(words) / n,
        static_cast<double>(sentences) / n, static_cast<double>(mentions) / n,
        static_cast<double>(hashtags) / n,  static_cast<double>(urls) / n,
    };
    return vec;
}

IdiosyncrasySet idiosyncratic_features(const std::vector<CleanDocument>& documents,
                                       const std::set<std::string>& dictionary,
                                       const std::set<std::string>& slang_lexicon) {
    if (dictionary.empty()) throw Error("idiosyncratic_features: empty dictionary");

    IdiosyncrasySet out;
    for (const auto& doc : documents) {
        for (const auto& tok : tokenize(doc.clean_text).tokens) {
            std::u32string scalars = uni::decode_utf8(tok);
            if (scalars.size() < 2) continue;
            bool alphabetic = std::all_of(scalars.begin(), scalars.end(), uni::is_letter);
            if (!alphabetic) continue;

            std::string lower = uni::to_lower(tok);
            if (slang_lexicon.contains(lower)) {
                out.slang.insert(lower);
            } else if (!dictionary.contains(lower)) {
                out.misspelt.insert(lower);
            }
        }
    }
    return out;
}

std::pair<std::vector<StyloVector>, StyloVector> normalize_features(
    const std::vector<StyloVector>& profiles, const StyloVector& query) {
    if (profiles.size() < 2) throw Error("normalize_features: need at least 2 profiles");
    std::size_t dims = query.values.size();
    for (const auto& p : profiles) {
        if (p.kind != query.kind || p.values.size() != dims) {
            throw Error("normalize_features: mixed feature kinds");
        }
    }

    std::vector<double> lo(dims, 0.0);
    std::vector<double> hi(dims, 0.0);
    for (std::size_t d = 0; d < dims; ++d) {
        lo[d] = hi[d] = profiles[0].values[d];
        for (const auto& p : profiles) {
            lo[d] = std::min(lo[d], p.values[d]);
            hi[d] = std::max(hi[d], p.values[d]);
        }
    }

    auto scale = [&](double x, std::size_t d) {
        return hi[d] == lo[d] ? 0.0 : (x - lo[d]) / (hi[d] - lo[d]);
    };

    std::vector<StyloVector> scaled = profiles;
    for (auto& p : scaled) {
        for (std::size_t d = 0; d < dims; ++d) p.values[d] = scale(p.values[d], d);
    }
    StyloVector scaled_query = query;
    for (std::size_t d = 0; d < dims; ++d) {
        scaled_query.values[d] = std::clamp(scale(query.values[d], d), 0.0, 1.0);
    }
    return {std::move(scaled), std::move(scaled_query)};
}

std::set<std::string> parse_lexicon(std::string_view content) {
    std::set<std::string> words;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string_view::npos) end = content.size();
        std::string_view line = content.substr(pos, end - pos);
        pos = end + 1;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.remove_suffix(1);
        }
        while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        if (!line.empty()) words.emplace(line);
        if (end == content.size()) break;
    }
    return words;
}

std::set<std::string> load_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_lexicon(buf.str());
}

}  // namespace stylo
