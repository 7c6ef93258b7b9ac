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

#ifndef STYLO_SYNTHGEN_HPP
#define STYLO_SYNTHGEN_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stylo/corpus.hpp"

namespace stylo {

/// Per-author style knobs. generate_corpus jitters these around the base
/// values; the amount of jitter scales with params_spread.
struct StyleParams {
    std::size_t vocab_seed_words = 300;   // words drawn from the base pool
    double zipf_exponent = 1.25;          // rank weighting of the author's vocabulary
    double misspelling_rate = 0.05;       // per eligible word
    double slang_rate = 0.12;             // per message
    double mention_rate = 0.25;           // per message
    double hashtag_rate = 0.15;           // per message
    double url_rate = 0.10;               // per message
    double uppercase_bias = 0.12;         // per word
    double mean_words_per_message = 12.0;
};

struct SynthConfig {
    std::size_t num_authors = 40;
    std::size_t msgs_min = 120;
    std::size_t msgs_max = 200;

    /// 0 collapses every author onto the same vocabulary distribution and
    /// style parameters; 1 (the default) is the well-separated setting.
    double params_spread = 1.0;

    std::uint64_t seed = 42;
    StyleParams base;
};

/// Built-in generation vocabulary and slang pool (the contents of the
/// data/dictionary.txt and data/slang.txt files, in file order).
const std::vector<std::string>& base_vocabulary();
const std::vector<std::string>& base_slang();

/// Deterministically generates raw messages for num_authors synthetic
/// authors. Every author gets its own seeded parameter draw and a Zipf-
/// weighted vocabulary; misspellings are adjacent-letter transpositions of
/// pool words and never collide with the pool. Messages stay within 280
/// scalar values. Identical configs produce identical corpora regardless of
/// scheduling, since each author derives an independent sub-seed.
std::vector<RawDocument> generate_corpus(const SynthConfig& config);

/// One ingest-schema JSON object per line: {"id", "author", "text",
/// "created_at"}.
std::string to_jsonl(const std::vector<RawDocument>& docs);
void write_jsonl(const std::filesystem::path& path, const std::vector<RawDocument>& docs);

}  // namespace stylo

#endif  // STYLO_SYNTHGEN_HPP
