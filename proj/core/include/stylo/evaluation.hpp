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

#ifndef STYLO_EVALUATION_HPP
#define STYLO_EVALUATION_HPP

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/attribution.hpp"
#include "stylo/corpus.hpp"

namespace stylo {

enum class AuthorSelection { in_order, random };

std::string_view to_string(AuthorSelection selection);
AuthorSelection author_selection_from_string(std::string_view name);

struct SweepConfig {
    std::vector<std::size_t> author_counts = {5, 10, 15, 20, 25, 30, 35, 40};
    std::vector<FeatureKind> features = {
        FeatureKind::char_ngram(3), FeatureKind::char_ngram(4),
        FeatureKind::word_ngram(2), FeatureKind::word_ngram(3),
        FeatureKind::lexical(),     FeatureKind::structural(),
        FeatureKind::idiosyncratic(),
    };
    std::vector<MetricKind> metrics = {MetricKind::cosine, MetricKind::euclidean,
                                       MetricKind::manhattan};
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
    AuthorSelection selection = AuthorSelection::in_order;
    SplitMode split_mode = SplitMode::in_order;

    /// Adds a "fused" pseudo-metric per feature: candidate distances are
    /// min-max normalized per metric, then averaged. Kept out of the totals,
    /// which always mean the per-metric accuracies.
    bool include_fused = false;

    // Profile building always performs misspelling detection, so the
    // dictionary must be non-empty; the slang lexicon may be empty.
    std::set<std::string> dictionary;
    std::set<std::string> slang_lexicon;
};

struct TableRow {
    std::string true_author;
    std::string predicted;
    double best_score = 0.0;
    bool tie = false;
    bool correct = false;

    bool operator==(const TableRow&) const = default;
};

struct ReportCell {
    std::string feature;
    std::string metric;
    std::size_t author_count = 0;
    double accuracy = 0.0;

    bool operator==(const ReportCell&) const = default;
};

struct TotalCell {
    std::string feature;
    std::size_t author_count = 0;
    double accuracy = 0.0;  // mean over the metrics evaluated for the feature

    bool operator==(const TotalCell&) const = default;
};

struct ReportTable {
    std::string feature;
    std::string metric;
    std::size_t author_count = 0;
    std::vector<TableRow> rows;  // one per evaluated author, selection order

    bool operator==(const ReportTable&) const = default;
};

struct EvaluationReport {
    std::vector<ReportCell> cells;
    std::vector<TotalCell> totals;
    std::vector<ReportTable> tables;

    bool operator==(const EvaluationReport&) const = default;
};

/// Runs the accuracy sweep: for each author count, selects candidates
/// (corpus order, or a seeded sample), splits each author 70/30 by the
/// configured rule, builds profiles from the known side and one pooled query
/// per author from the unknown side, and attributes every query against the
/// candidate profiles for each feature/metric pairing.
EvaluationReport run_sweep(const Corpus& corpus, const SweepConfig& config);

enum class ReportFormat { json, csv, markdown };

ReportFormat report_format_from_string(std::string_view name);

/// json is lossless; csv is the plot-ready `feature,metric,author_count,
/// accuracy` schema; markdown renders accuracy grids plus the
/// shortest-distance tables with mis-identification and tie markers.
std::string render_report(const EvaluationReport& report, ReportFormat format);

/// Second CSV schema: `feature,metric,author_count,true_author,predicted,
/// best_score,tie,correct`.
std::string render_table_csv(const EvaluationReport& report);

EvaluationReport report_from_json(std::string_view json_text);

}  // namespace stylo

#endif  // STYLO_EVALUATION_HPP
