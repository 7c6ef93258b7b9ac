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

#include "stylo/synthgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "stylo/error.hpp"
#include "stylo/rng.hpp"
#include "stylo/unicode.hpp"

#include "embedded_data.inc"

namespace stylo {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.emplace_back(line);
    }
    return lines;
}

void check_rate(double rate, const char* name) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw Error(std::string("synth: ") + name + " must be in [0,1]");
    }
}

void validate(const SynthConfig& config) {
    if (config.num_authors < 2) throw Error("synth: need at least 2 authors");
    if (config.msgs_min < 2) throw Error("synth: need at least 2 messages per author");
    if (config.msgs_max < config.msgs_min) {
        throw Error("synth: msgs_max must be >= msgs_min");
    }
    if (config.params_spread < 0.0) throw Error("synth: params_spread must be >= 0");
    if (!(config.base.zipf_exponent > 0.0)) {
        throw Error("synth: zipf_exponent must be > 0");
    }
    if (!(config.base.mean_words_per_message > 0.0)) {
        throw Error("synth: mean_words_per_message must be > 0");
    }
    if (config.base.vocab_seed_words < 10) {
        throw Error("synth: vocab_seed_words must be at least 10");
    }
    check_rate(config.base.misspelling_rate, "misspelling_rate");
    check_rate(config.base.slang_rate, "slang_rate");
    check_rate(config.base.mention_rate, "mention_rate");
    check_rate(config.base.hashtag_rate, "hashtag_rate");
    check_rate(config.base.url_rate, "url_rate");
    check_rate(config.base.uppercase_bias, "uppercase_bias");
}

// Multiplicative jitter keeps zero rates at zero and scales variation with
// spread, so spread 0 reproduces the base parameters exactly.
StyleParams draw_params(const StyleParams& base, double spread, Rng& rng) {
    auto jitter = [&](double value, double amount) {
        return value * (1.0 + spread * rng.next_in(-amount, amount));
    };
    StyleParams p = base;
    p.vocab_seed_words = std::max<std::size_t>(
        10, static_cast<std::size_t>(std::llround(
                jitter(static_cast<double>(base.vocab_seed_words), 0.2))));
    p.zipf_exponent = std::max(0.05, jitter(base.zipf_exponent, 0.2));
    p.misspelling_rate = std::clamp(jitter(base.misspelling_rate, 0.6), 0.0, 1.0);
    p.slang_rate = std::clamp(jitter(base.slang_rate, 0.6), 0.0, 1.0);
    p.mention_rate = std::clamp(jitter(base.mention_rate, 0.6), 0.0, 1.0);
    p.hashtag_rate = std::clamp(jitter(base.hashtag_rate, 0.6), 0.0, 1.0);
    p.url_rate = std::clamp(jitter(base.url_rate, 0.6), 0.0, 1.0);
    p.uppercase_bias = std::clamp(jitter(base.uppercase_bias, 0.6), 0.0, 1.0);
    p.mean_words_per_message = std::max(3.0, jitter(base.mean_words_per_message, 0.3));
    return p;
}

// Author vocabularies start from one shared seeded permutation of the pool;
// each author then applies spread-scaled random transpositions before taking
// its prefix. Spread 0 leaves every author with the identical prefix.
std::vector<std::string> blend_prefix(const std::vector<std::string>& shared,
                                      std::size_t prefix, double spread,
                                      double swaps_per_word, Rng& rng) {
    std::vector<std::string> words = shared;
    prefix = std::min(prefix, words.size());
    auto swaps = static_cast<std::size_t>(
        std::llround(spread * swaps_per_word * static_cast<double>(prefix)));
    for (std::size_t s = 0; s < swaps; ++s) {
        std::size_t i = rng.next_below(words.size());
        std::size_t j = rng.next_below(words.size());
        std::swap(words[i], words[j]);
    }
    words.resize(prefix);
    return words;
}

// CDF over ranks 0..n-1 with weight (r+1)^-exponent.
struct ZipfSampler {
    std::vector<double> cdf;

    ZipfSampler(std::size_t n, double exponent) {
        cdf.reserve(n);
        double total = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            total += std::pow(static_cast<double>(r + 1), -exponent);
            cdf.push_back(total);
        }
        for (auto& c : cdf) c /= total;
    }

    std::size_t sample(Rng& rng) const {
        double u = rng.next_double();
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        return static_cast<std::size_t>(it - cdf.begin());
    }
};

// The author's habitual misspelling of a word: an adjacent transposition
// chosen by hash(author, word), skipping results that land back in the
// dictionary or slang pool. Doubling the final letter is the fallback for
// words with no usable transposition.
std::string misspell(const std::string& word, const std::string& author_id,
                     const std::set<std::string>& dictionary,
                     const std::set<std::string>& slang) {
    auto bad = [&](const std::string& w) {
        return w == word || dictionary.contains(w) || slang.contains(w);
    };
    if (word.size() >= 2) {
        std::uint64_t h = fnv1a64(author_id + ":" + word);
        std::size_t positions = word.size() - 1;
        for (std::size_t k = 0; k < positions; ++k) {
            std::size_t p = (h + k) % positions;
            if (word[p] == word[p + 1]) continue;
            std::string candidate = word;
            std::swap(candidate[p], candidate[p + 1]);
            if (!bad(candidate)) return candidate;
        }
    }
    std::string candidate = word;
    do {
        candidate += candidate.back();
    } while (bad(candidate));
    return candidate;
}

std::string author_name(std::size_t index, std::size_t total) {
    int width = 2;
    for (std::size_t t = total; t > 99; t /= 10) ++width;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "u%0*zu", width, index + 1);
    return buf;
}

std::string timestamp(std::size_t ordinal) {
    // Synthetic metadata: one message per minute starting 2026-01-01,
    // wrapping within the month to stay a valid ISO-8601 instant.
    std::size_t minutes = ordinal % (28 * 24 * 60);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "2026-01-%02zuT%02zu:%02zu:00Z",
                  1 + minutes / (24 * 60), (minutes / 60) % 24, minutes % 60);
    return buf;
}

}  // namespace

const std::vector<std::string>& base_vocabulary() {
    static const std::vector<std::string> words = split_lines(kDictionaryText);
    return words;
}

const std::vector<std::string>& base_slang() {
    static const std::vector<std::string> words = split_lines(kSlangText);
    return words;
}

std::vector<RawDocument> generate_corpus(const SynthConfig& config) {
    validate(config);

    const std::vector<std::string>& pool = base_vocabulary();
    const std::vector<std::string>& slang_pool = base_slang();
    const std::set<std::string> dictionary(pool.begin(), pool.end());
    const std::set<std::string> slang_set(slang_pool.begin(), slang_pool.end());
    if (config.base.vocab_seed_words > pool.size()) {
        throw Error("synth: vocab_seed_words exceeds the base vocabulary size");
    }

    // One shared base order; author streams only ever permute it further.
    std::vector<std::string> shared_words = pool;
    std::vector<std::string> shared_slang = slang_pool;
    {
        Rng base_rng(mix_seed(config.seed, "vocab-base"));
        base_rng.shuffle(shared_words);
        base_rng.shuffle(shared_slang);
    }

    std::vector<RawDocument> docs;
    std::size_t ordinal = 0;
    for (std::size_t a = 0; a < config.num_authors; ++a) {
        // Each author draws everything from an independent sub-seed, so the
        // corpus is identical no matter how generation is scheduled.
        Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(a)));
        std::string author = author_name(a, config.num_authors);
        StyleParams params = draw_params(config.base, config.params_spread, rng);

        std::vector<std::string> vocab = blend_prefix(
            shared_words, params.vocab_seed_words, config.params_spread, 3.0, rng);
        std::vector<std::string> slang = blend_prefix(
            shared_slang, std::max<std::size_t>(3, slang_pool.size() / 4),
            config.params_spread, 2.0, rng);
        ZipfSampler zipf(vocab.size(), params.zipf_exponent);

        std::size_t msg_count =
            config.msgs_min + rng.next_below(config.msgs_max - config.msgs_min + 1);
        for (std::size_t m = 0; m < msg_count; ++m) {
            auto want = static_cast<std::size_t>(std::max<long long>(
                3, std::llround(params.mean_words_per_message * rng.next_in(0.6, 1.4))));

            std::vector<std::string> words;
            words.reserve(want + 4);
            for (std::size_t w = 0; w < want; ++w) {
                std::string word = vocab[zipf.sample(rng)];
                if (word.size() >= 3 && rng.next_bool(params.misspelling_rate)) {
                    word = misspell(word, author, dictionary, slang_set);
                }
                if (rng.next_bool(params.uppercase_bias)) {
                    word[0] = static_cast<char>(std::toupper(
                        static_cast<unsigned char>(word[0])));
                }
                if (w + 1 < want && rng.next_bool(0.05)) word += ',';
                words.push_back(std::move(word));
            }
            if (rng.next_bool(params.slang_rate) && !slang.empty()) {
                std::size_t at = rng.next_below(words.size() + 1);
                words.insert(words.begin() + static_cast<long>(at),
                             slang[rng.next_below(slang.size())]);
            }
            if (rng.next_bool(params.mention_rate)) {
                std::size_t at = rng.next_below(words.size() + 1);
                words.insert(words.begin() + static_cast<long>(at),
                             "@" + shared_words[rng.next_below(shared_words.size())]);
            }
            if (rng.next_bool(params.hashtag_rate)) {
                words.push_back("#" +
                                shared_words[rng.next_below(shared_words.size())]);
            }
            if (rng.next_bool(params.url_rate)) {
                std::string code;
                for (int i = 0; i < 6; ++i) {
                    code += "abcdefghijklmnopqrstuvwxyz0123456789"[rng.next_below(36)];
                }
                words.push_back("https://t.ex/" + code);
            }

            double punct = rng.next_double();
            std::string tail = punct < 0.70   ? "."
                               : punct < 0.85 ? "!"
                               : punct < 0.95 ? "?"
                                              : "";

            auto assemble = [&] {
                std::string text;
                for (std::size_t w = 0; w < words.size(); ++w) {
                    if (w > 0) text += ' ';
                    text += words[w];
                }
                return text + tail;
            };
            std::string text = assemble();
            while (uni::scalar_count(text) > kMaxMessageScalars && words.size() > 1) {
                words.pop_back();
                text = assemble();
            }

            char doc_id[48];
            std::snprintf(doc_id, sizeof(doc_id), "%s-m%04zu", author.c_str(), m + 1);
            docs.push_back(RawDocument{doc_id, author, text, timestamp(ordinal++)});
        }
    }
    return docs;
}

std::string to_jsonl(const std::vector<RawDocument>& docs) {
    std::string out;
    for (const auto& doc : docs) {
        nlohmann::ordered_json obj;
        obj["id"] = doc.doc_id;
        obj["author"] = doc.author_id;
        obj["text"] = doc.text;
        obj["created_at"] = doc.created_at;
        out += obj.dump();
        out += '\n';
    }
    return out;
}

void write_jsonl(const std::filesystem::path& path,
                 const std::vector<RawDocument>& docs) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << to_jsonl(docs);
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace stylo
