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

#ifndef STYLO_ATTRIBUTION_HPP
#define STYLO_ATTRIBUTION_HPP

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/corpus.hpp"
#include "stylo/ngram.hpp"
#include "stylo/similarity.hpp"
#include "stylo/stylometry.hpp"

namespace stylo {

/// Two results within this absolute margin count as a tie.
inline constexpr double kTieEpsilon = 1e-12;

struct FeatureKind {
    enum class Family { char_ngram, word_ngram, lexical, structural, idiosyncratic };

    Family family = Family::char_ngram;
    int order = 0;  // gram order for the n-gram families, 0 otherwise

    auto operator<=>(const FeatureKind&) const = default;

    /// "char2".."char4", "word2".."word4", "lexical", "structural",
    /// "idiosyncratic".
    std::string name() const;
    static FeatureKind parse(std::string_view name);

    static FeatureKind char_ngram(int order) { return {Family::char_ngram, order}; }
    static FeatureKind word_ngram(int order) { return {Family::word_ngram, order}; }
    static FeatureKind lexical() { return {Family::lexical, 0}; }
    static FeatureKind structural() { return {Family::structural, 0}; }
    static FeatureKind idiosyncratic() { return {Family::idiosyncratic, 0}; }
};

/// Distance metrics plus the set-overlap comparison used for idiosyncratic
/// features. Overlap is folded into the same ascending-is-better scale as
/// 1 - Jaccard similarity.
enum class MetricKind { cosine, euclidean, manhattan, overlap };

std::string_view to_string(MetricKind metric);
MetricKind metric_kind_from_string(std::string_view name);

/// overlap pairs exactly with idiosyncratic; the three distances with
/// everything else.
bool metric_compatible(FeatureKind feature, MetricKind metric);

struct ProfileConfig {
    std::vector<int> char_orders = {3, 4};
    std::vector<int> word_orders = {2, 3};
    std::set<std::string> dictionary;
    std::set<std::string> slang_lexicon;
};

struct AuthorProfile {
    std::string author_id;  // for queries: ground-truth author, may be empty
    std::map<int, NGramVector> char_ngrams;
    std::map<int, NGramVector> word_ngrams;
    StyloVector lexical;
    StyloVector structural;
    IdiosyncrasySet idiosyncrasy;
    std::size_t doc_count = 0;

    std::string to_json() const;
    static AuthorProfile from_json(std::string_view json_text);
};

/// Pools the author's known documents into one profile: n-gram vectors via
/// per-document extraction + merge_counts, stylometric bundles via the
/// feature catalog. Errors when documents are absent or all empty.
AuthorProfile build_profile(std::string author_id,
                            const std::vector<CleanDocument>& known_docs,
                            const ProfileConfig& config);

/// Same mechanics over the unknown split; ground_truth is kept only so
/// results can be scored.
AuthorProfile build_query(const std::vector<CleanDocument>& unknown_docs,
                          const ProfileConfig& config,
                          std::string ground_truth = {});

struct AttributionResult {
    std::string query_author_id;  // ground truth, empty when unknown
    FeatureKind feature;
    MetricKind metric;
    std::vector<std::pair<std::string, double>> ranking;  // ascending score
    std::string predicted;
    bool tie = false;
    std::optional<bool> correct;  // present iff ground truth known
    bool uninformative = false;   // winning overlap comparison had two empty sets
};

/// Distance from the query to every candidate under one feature/metric, in
/// candidate order. Lexical/structural vectors are min-max normalized against
/// the candidate set before measuring. Errors on incompatible feature/metric
/// or on orders missing from a profile.
std::vector<double> score_against(const AuthorProfile& query,
                                  const std::vector<const AuthorProfile*>& candidates,
                                  FeatureKind feature, MetricKind metric);

/// Candidate indices sorted ascending by score. Scores within kTieEpsilon of
/// the minimum form the leading group; the lowest index among them wins the
/// front position so ties always resolve toward the earliest candidate.
struct RankedScores {
    std::vector<std::size_t> order;  // candidate indices, best first
    bool tie = false;                // >= 2 candidates within kTieEpsilon of the best
};

RankedScores rank_ascending(const std::vector<double>& scores);

/// Ranks every profile by score; ties break toward the earliest profile in
/// list order and are flagged, never silently resolved. Requires at least two
/// profiles.
AttributionResult attribute(const AuthorProfile& query,
                            const std::vector<AuthorProfile>& profiles,
                            FeatureKind feature, MetricKind metric);
AttributionResult attribute(const AuthorProfile& query,
                            const std::vector<const AuthorProfile*>& profiles,
                            FeatureKind feature, MetricKind metric);

// --- profile store -----------------------------------------------------------

/// Percent-encodes everything outside [A-Za-z0-9._~-] so any author id maps
/// to a safe, reversible file name.
std::string urlsafe_encode(std::string_view raw);
std::string urlsafe_decode(std::string_view encoded);

struct ProfileStoreMeta {
    std::vector<std::string> authors;  // corpus order; also the tie-break order
    std::vector<int> char_orders;
    std::vector<int> word_orders;
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
    std::string split_mode = "in_order";
    std::string config_hash;  // filled by save_profile_store
};

/// Writes one JSON file per author (<urlsafe author id>.json) plus
/// manifest.json carrying the meta block and a hash of the effective config.
void save_profile_store(const std::filesystem::path& dir,
                        const std::vector<AuthorProfile>& profiles,
                        ProfileStoreMeta meta);

struct ProfileStore {
    std::vector<AuthorProfile> profiles;  // manifest order
    ProfileStoreMeta meta;
};

ProfileStore load_profile_store(const std::filesystem::path& dir);

}  // namespace stylo

#endif  // STYLO_ATTRIBUTION_HPP
