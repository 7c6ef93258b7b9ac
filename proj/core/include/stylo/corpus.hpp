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

#ifndef STYLO_CORPUS_HPP
#define STYLO_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

/// Maximum message length (Unicode scalar values) enforced by strict-length
/// validation.
inline constexpr std::size_t kMaxMessageScalars = 280;

struct RawDocument {
    std::string doc_id;
    std::string author_id;
    std::string text;          // UTF-8; NFC-normalized on ingestion
    std::string created_at;    // optional ISO-8601, empty when absent
};

struct RemovedCounts {
    std::uint32_t mentions = 0;
    std::uint32_t hashtags = 0;
    std::uint32_t urls = 0;
    bool operator==(const RemovedCounts&) const = default;
};

struct CleanDocument {
    std::string doc_id;
    std::string author_id;
    std::string clean_text;    // may be empty when the source was all artifacts
    RemovedCounts removed;
};

struct PreprocessResult {
    std::string clean_text;
    RemovedCounts removed;
};

/// Strips URLs, mentions and hashtags (in that order), counting each match,
/// then collapses whitespace runs to single spaces and trims the ends.
/// Case and punctuation are otherwise preserved. Idempotent on its own output.
///
/// Match rules, applied to Unicode scalar values:
///   url:     `http://` or `https://` (scheme letters case-insensitive)
///            followed by a non-empty maximal run of non-whitespace.
///   mention: `@` at start of text or after whitespace, followed by a
///            non-empty maximal run of [A-Za-z0-9_].
///   hashtag: `#` at start of text or after whitespace, followed by a
///            non-empty maximal run of Unicode letters, digits or `_`.
/// For mention/hashtag the "after whitespace" test looks at the last kept
/// character, so adjacent matches ("@a@b") are all removed.
PreprocessResult preprocess(std::string_view text);

struct Corpus {
    std::vector<std::string> authors;  // first-appearance order
    std::map<std::string, std::vector<CleanDocument>> documents;

    const std::vector<CleanDocument>& docs(const std::string& author_id) const;
    std::size_t total_documents() const;
};

enum class CorpusFormat { jsonl, csv };

/// Loads and validates a corpus file.
///
/// JSONL: one object per line, keys "id", "author", "text" (required) and
/// "created_at" (optional). CSV: header `id,author,text,created_at` with
/// RFC-4180 quoting. Texts are NFC-normalized, then preprocessed. Errors cite
/// the offending line. Every author must contribute at least 2 documents.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   bool strict_length = false);

/// Same validation and grouping for documents already in memory.
Corpus corpus_from_raw(const std::vector<RawDocument>& docs, bool strict_length = false);

/// Parses and validates a corpus file without preprocessing: texts are
/// NFC-normalized and every load_corpus check applies, but the records come
/// back raw and in file order. This is the canonicalization step behind
/// corpus ingestion.
std::vector<RawDocument> load_raw_documents(const std::filesystem::path& path,
                                            CorpusFormat format,
                                            bool strict_length = false);

enum class SplitMode { in_order, shuffled };

std::string_view to_string(SplitMode mode);
SplitMode split_mode_from_string(std::string_view name);

struct SplitCorpus {
    std::vector<std::string> authors;  // corpus order
    std::map<std::string, std::vector<CleanDocument>> known;
    std::map<std::string, std::vector<CleanDocument>> unknown;
    double train_fraction = 0.0;
    std::uint64_t seed = 0;
    SplitMode mode = SplitMode::in_order;

    /// JSON with keys "train_fraction", "seed", "mode", "known", "unknown".
    std::string to_json() const;
};

/// Number of known documents for an author with doc_count documents:
/// floor(train_fraction * doc_count), computed exactly for fractions with
/// up to 9 decimal places (0.7 * 10 is 7, never 6).
std::size_t split_known_size(std::size_t doc_count, double train_fraction);

/// Per-author split: the first floor(f*N) documents (after a seeded
/// permutation when mode is shuffled) become known, the rest unknown.
/// Errors when any author's split would leave either side empty.
SplitCorpus split_corpus(const Corpus& corpus, double train_fraction,
                         std::uint64_t seed, SplitMode mode);

}  // namespace stylo

#endif  // STYLO_CORPUS_HPP
