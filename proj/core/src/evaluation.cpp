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

#include "stylo/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include <nlohmann/json.hpp>

#include "stylo/error.hpp"
#include "stylo/rng.hpp"

namespace stylo {

namespace {

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw Error("cannot format double");
    return std::string(buf, end);
}

std::string format_fixed(double value, int places) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", places, value);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void validate_config(const Corpus& corpus, const SweepConfig& config) {
    if (config.author_counts.empty()) throw Error("sweep: no author counts");
    for (std::size_t i = 0; i < config.author_counts.size(); ++i) {
        if (config.author_counts[i] < 2) {
            throw Error("sweep: author counts must be at least 2");
        }
        if (i > 0 && config.author_counts[i] <= config.author_counts[i - 1]) {
            throw Error("sweep: author counts must be strictly ascending");
        }
    }
    if (config.author_counts.back() > corpus.authors.size()) {
        throw Error("sweep needs " + std::to_string(config.author_counts.back()) +
                    " authors, corpus has " + std::to_string(corpus.authors.size()));
    }
    if (config.features.empty()) throw Error("sweep: no features");
    if (config.metrics.empty()) throw Error("sweep: no metrics");
    if (config.dictionary.empty()) {
        throw Error("sweep: dictionary must be non-empty");
    }
}

}  // namespace

std::string_view to_string(AuthorSelection selection) {
    return selection == AuthorSelection::in_order ? "in_order" : "random";
}

AuthorSelection author_selection_from_string(std::string_view name) {
    if (name == "in_order") return AuthorSelection::in_order;
    if (name == "random") return AuthorSelection::random;
    throw Error("unknown author selection: " + std::string(name));
}

ReportFormat report_format_from_string(std::string_view name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    if (name == "markdown") return ReportFormat::markdown;
    throw Error("unknown report format: " + std::string(name));
}

EvaluationReport run_sweep(const Corpus& corpus, const SweepConfig& config) {
    validate_config(corpus, config);

    // Selection pool: corpus order, or one seeded permutation whose prefixes
    // give the candidate sets (so smaller counts nest inside larger ones).
    std::vector<std::string> pool = corpus.authors;
    if (config.selection == AuthorSelection::random) {
        Rng rng(mix_seed(config.seed, "author-selection"));
        rng.shuffle(pool);
    }
    std::size_t max_count = config.author_counts.back();

    // The universe is the largest candidate set, held in corpus order; every
    // smaller set is a subset of it.
    std::set<std::string> universe_set(pool.begin(),
                                       pool.begin() + static_cast<long>(max_count));
    std::vector<std::string> universe;
    std::map<std::string, std::size_t> universe_pos;
    for (const auto& author : corpus.authors) {
        if (universe_set.contains(author)) {
            universe_pos.emplace(author, universe.size());
            universe.push_back(author);
        }
    }

    ProfileConfig pcfg;
    pcfg.char_orders.clear();
    pcfg.word_orders.clear();
    for (const auto& feature : config.features) {
        auto& orders = feature.family == FeatureKind::Family::char_ngram
                           ? pcfg.char_orders
                           : pcfg.word_orders;
        if (feature.family == FeatureKind::Family::char_ngram ||
            feature.family == FeatureKind::Family::word_ngram) {
            if (std::find(orders.begin(), orders.end(), feature.order) == orders.end()) {
                orders.push_back(feature.order);
            }
        }
    }
    std::sort(pcfg.char_orders.begin(), pcfg.char_orders.end());
    std::sort(pcfg.word_orders.begin(), pcfg.word_orders.end());
    pcfg.dictionary = config.dictionary;
    pcfg.slang_lexicon = config.slang_lexicon;

    SplitCorpus split =
        split_corpus(corpus, config.train_fraction, config.seed, config.split_mode);

    std::vector<AuthorProfile> profiles;
    std::vector<AuthorProfile> queries;
    profiles.reserve(universe.size());
    queries.reserve(universe.size());
    for (const auto& author : universe) {
        profiles.push_back(build_profile(author, split.known.at(author), pcfg));
        queries.push_back(build_query(split.unknown.at(author), pcfg, author));
    }

    // Gram and idiosyncrasy scores do not depend on the candidate set, so the
    // full universe-by-universe matrix is computed once and sliced per count.
    // Lexical/structural scores are normalized against each candidate set and
    // are recomputed per count (they are 6-8 dimensional, so this is cheap).
    std::vector<const AuthorProfile*> universe_ptrs;
    for (const auto& p : profiles) universe_ptrs.push_back(&p);
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<double>>>
        pairwise_cache;
    auto pairwise = [&](std::size_t fi, FeatureKind feature, std::size_t mi,
                        MetricKind metric) -> const std::vector<std::vector<double>>& {
        auto key = std::make_pair(fi, mi);
        auto it = pairwise_cache.find(key);
        if (it != pairwise_cache.end()) return it->second;
        std::vector<std::vector<double>> matrix;
        matrix.reserve(universe.size());
        for (const auto& query : queries) {
            matrix.push_back(score_against(query, universe_ptrs, feature, metric));
        }
        return pairwise_cache.emplace(key, std::move(matrix)).first->second;
    };

    struct KeyedCell {
        std::size_t fi;
        std::size_t mi;
        ReportCell cell;
    };
    struct KeyedTotal {
        std::size_t fi;
        TotalCell total;
    };
    struct KeyedTable {
        std::size_t fi;
        std::size_t mi;
        ReportTable table;
    };
    std::vector<KeyedCell> cells;
    std::vector<KeyedTotal> totals;
    std::vector<KeyedTable> tables;

    for (std::size_t count : config.author_counts) {
        // Candidate authors for this count, in corpus order.
        std::set<std::string> selected(pool.begin(),
                                       pool.begin() + static_cast<long>(count));
        std::vector<std::size_t> cand;  // universe indices, ascending
        for (std::size_t i = 0; i < universe.size(); ++i) {
            if (selected.contains(universe[i])) cand.push_back(i);
        }
        std::vector<const AuthorProfile*> cand_ptrs;
        for (std::size_t i : cand) cand_ptrs.push_back(&profiles[i]);

        for (std::size_t fi = 0; fi < config.features.size(); ++fi) {
            FeatureKind feature = config.features[fi];
            bool idiosyncratic =
                feature.family == FeatureKind::Family::idiosyncratic;
            bool set_independent =
                idiosyncratic || feature.family == FeatureKind::Family::char_ngram ||
                feature.family == FeatureKind::Family::word_ngram;
            std::vector<MetricKind> metrics =
                idiosyncratic ? std::vector<MetricKind>{MetricKind::overlap}
                              : config.metrics;

            // scores[mi][q][c]: distance of candidate c from query q.
            std::vector<std::vector<std::vector<double>>> scores(metrics.size());
            for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
                scores[mi].resize(cand.size());
                if (set_independent) {
                    const auto& matrix = pairwise(fi, feature, mi, metrics[mi]);
                    for (std::size_t q = 0; q < cand.size(); ++q) {
                        for (std::size_t c : cand) {
                            scores[mi][q].push_back(matrix[cand[q]][c]);
                        }
                    }
                } else {
                    for (std::size_t q = 0; q < cand.size(); ++q) {
                        scores[mi][q] = score_against(queries[cand[q]], cand_ptrs,
                                                      feature, metrics[mi]);
                    }
                }
            }

            auto record = [&](std::size_t mi, std::string metric_name,
                              const std::vector<std::vector<double>>& per_query,
                              bool into_totals, double* total_sum) {
                ReportTable table;
                table.feature = feature.name();
                table.metric = metric_name;
                table.author_count = count;
                std::size_t correct = 0;
                for (std::size_t q = 0; q < cand.size(); ++q) {
                    RankedScores ranked = rank_ascending(per_query[q]);
                    TableRow row;
                    row.true_author = universe[cand[q]];
                    row.predicted = universe[cand[ranked.order.front()]];
                    row.best_score = per_query[q][ranked.order.front()];
                    row.tie = ranked.tie;
                    row.correct = row.predicted == row.true_author;
                    if (row.correct) ++correct;
                    table.rows.push_back(std::move(row));
                }
                double accuracy =
                    static_cast<double>(correct) / static_cast<double>(count);
                cells.push_back(
                    {fi, mi, {table.feature, metric_name, count, accuracy}});
                tables.push_back({fi, mi, std::move(table)});
                if (into_totals) *total_sum += accuracy;
            };

            double total_sum = 0.0;
            for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
                record(mi, std::string(to_string(metrics[mi])), scores[mi], true,
                       &total_sum);
            }
            totals.push_back(
                {fi,
                 {feature.name(), count,
                  total_sum / static_cast<double>(metrics.size())}});

            if (config.include_fused && !idiosyncratic && metrics.size() > 1) {
                // Per query: min-max normalize each metric's scores over the
                // candidates, then average the metrics. Not part of totals.
                std::vector<std::vector<double>> fused(cand.size());
                for (std::size_t q = 0; q < cand.size(); ++q) {
                    fused[q].assign(cand.size(), 0.0);
                    for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
                        const auto& row = scores[mi][q];
                        double lo = *std::min_element(row.begin(), row.end());
                        double hi = *std::max_element(row.begin(), row.end());
                        for (std::size_t c = 0; c < row.size(); ++c) {
                            double scaled =
                                hi == lo ? 0.0 : (row[c] - lo) / (hi - lo);
                            fused[q][c] += scaled;
                        }
                    }
                    for (auto& v : fused[q]) {
                        v /= static_cast<double>(metrics.size());
                    }
                }
                record(metrics.size(), "fused", fused, false, &total_sum);
            }
        }
    }

    auto cell_key = [](const KeyedCell& c) {
        return std::make_tuple(c.fi, c.mi, c.cell.author_count);
    };
    std::sort(cells.begin(), cells.end(),
              [&](const KeyedCell& a, const KeyedCell& b) {
                  return cell_key(a) < cell_key(b);
              });
    std::sort(totals.begin(), totals.end(),
              [](const KeyedTotal& a, const KeyedTotal& b) {
                  return std::make_tuple(a.fi, a.total.author_count) <
                         std::make_tuple(b.fi, b.total.author_count);
              });
    std::sort(tables.begin(), tables.end(),
              [](const KeyedTable& a, const KeyedTable& b) {
                  return std::make_tuple(a.fi, a.mi, a.table.author_count) <
                         std::make_tuple(b.fi, b.mi, b.table.author_count);
              });

    EvaluationReport report;
    for (auto& c : cells) report.cells.push_back(std::move(c.cell));
    for (auto& t : totals) report.totals.push_back(std::move(t.total));
    for (auto& t : tables) report.tables.push_back(std::move(t.table));
    return report;
}

namespace {

nlohmann::ordered_json report_to_json(const EvaluationReport& report) {
    nlohmann::ordered_json root;
    auto& cells = root["cells"] = nlohmann::ordered_json::array();
    for (const auto& cell : report.cells) {
        cells.push_back({{"feature", cell.feature},
                         {"metric", cell.metric},
                         {"author_count", cell.author_count},
                         {"accuracy", cell.accuracy}});
    }
    auto& totals = root["totals"] = nlohmann::ordered_json::array();
    for (const auto& total : report.totals) {
        totals.push_back({{"feature", total.feature},
                          {"author_count", total.author_count},
                          {"accuracy", total.accuracy}});
    }
    auto& tables = root["tables"] = nlohmann::ordered_json::array();
    for (const auto& table : report.tables) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            rows.push_back({{"true_author", row.true_author},
                            {"predicted", row.predicted},
                            {"best_score", row.best_score},
                            {"tie", row.tie},
                            {"correct", row.correct}});
        }
        tables.push_back({{"feature", table.feature},
                          {"metric", table.metric},
                          {"author_count", table.author_count},
                          {"rows", std::move(rows)}});
    }
    return root;
}

std::string render_csv(const EvaluationReport& report) {
    std::string out = "feature,metric,author_count,accuracy\n";
    for (const auto& cell : report.cells) {
        out += csv_escape(cell.feature) + "," + csv_escape(cell.metric) + "," +
               std::to_string(cell.author_count) + "," +
               format_double(cell.accuracy) + "\n";
    }
    return out;
}

std::string render_markdown(const EvaluationReport& report) {
    std::string out = "# Attribution accuracy\n";

    // Feature order as it appears in the cells.
    std::vector<std::string> features;
    for (const auto& cell : report.cells) {
        if (std::find(features.begin(), features.end(), cell.feature) ==
            features.end()) {
            features.push_back(cell.feature);
        }
    }

    for (const auto& feature : features) {
        std::vector<std::string> metrics;
        std::vector<std::size_t> counts;
        for (const auto& cell : report.cells) {
            if (cell.feature != feature) continue;
            if (std::find(metrics.begin(), metrics.end(), cell.metric) ==
                metrics.end()) {
                metrics.push_back(cell.metric);
            }
            if (std::find(counts.begin(), counts.end(), cell.author_count) ==
                counts.end()) {
                counts.push_back(cell.author_count);
            }
        }
        std::sort(counts.begin(), counts.end());

        out += "\n## " + feature + "\n\n| metric |";
        for (std::size_t count : counts) {
            out += " " + std::to_string(count) + " |";
        }
        out += "\n|---|";
        for (std::size_t i = 0; i < counts.size(); ++i) out += "---|";
        out += "\n";

        auto cell_at = [&](const std::string& metric,
                           std::size_t count) -> const ReportCell* {
            for (const auto& cell : report.cells) {
                if (cell.feature == feature && cell.metric == metric &&
                    cell.author_count == count) {
                    return &cell;
                }
            }
            return nullptr;
        };
        for (const auto& metric : metrics) {
            out += "| " + metric + " |";
            for (std::size_t count : counts) {
                const ReportCell* cell = cell_at(metric, count);
                out += cell ? " " + format_fixed(cell->accuracy, 3) + " |" : " |";
            }
            out += "\n";
        }
        for (const auto& total : report.totals) {
            if (total.feature != feature) continue;
            if (total.author_count == counts.front()) out += "| total |";
            out += " " + format_fixed(total.accuracy, 3) + " |";
            if (total.author_count == counts.back()) out += "\n";
        }
    }

    if (!report.tables.empty()) out += "\n# Best-score tables\n";
    for (const auto& table : report.tables) {
        out += "\n## " + table.feature + " / " + table.metric + " / " +
               std::to_string(table.author_count) + " authors\n\n";
        out += "| author | predicted | best score |\n|---|---|---|\n";
        for (const auto& row : table.rows) {
            // Mis-identifications render bold, ties carry a "(tie)" marker,
            // so both stay visible after formatting.
            std::string predicted =
                row.correct ? row.predicted : "**" + row.predicted + "**";
            std::string score = format_fixed(row.best_score, 6);
            if (row.tie) score += " (tie)";
            out += "| " + row.true_author + " | " + predicted + " | " + score +
                   " |\n";
        }
    }
    return out;
}

}  // namespace

std::string render_report(const EvaluationReport& report, ReportFormat format) {
    if (report.cells.empty()) throw Error("render_report: empty report");
    switch (format) {
        case ReportFormat::json: return report_to_json(report).dump(2) + "\n";
        case ReportFormat::csv: return render_csv(report);
        case ReportFormat::markdown: return render_markdown(report);
    }
    throw Error("invalid report format");
}

std::string render_table_csv(const EvaluationReport& report) {
    std::string out =
        "feature,metric,author_count,true_author,predicted,best_score,tie,correct\n";
    for (const auto& table : report.tables) {
        for (const auto& row : table.rows) {
            out += csv_escape(table.feature) + "," + csv_escape(table.metric) + "," +
                   std::to_string(table.author_count) + "," +
                   csv_escape(row.true_author) + "," + csv_escape(row.predicted) +
                   "," + format_double(row.best_score) + "," +
                   (row.tie ? "true" : "false") + "," +
                   (row.correct ? "true" : "false") + "\n";
        }
    }
    return out;
}

EvaluationReport report_from_json(std::string_view json_text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid report JSON: ") + e.what());
    }

    EvaluationReport report;
    try {
        for (const auto& cell : root.at("cells")) {
            report.cells.push_back({cell.at("feature").get<std::string>(),
                                    cell.at("metric").get<std::string>(),
                                    cell.at("author_count").get<std::size_t>(),
                                    cell.at("accuracy").get<double>()});
        }
        for (const auto& total : root.at("totals")) {
            report.totals.push_back({total.at("feature").get<std::string>(),
                                     total.at("author_count").get<std::size_t>(),
                                     total.at("accuracy").get<double>()});
        }
        for (const auto& table : root.at("tables")) {
            ReportTable t;
            t.feature = table.at("feature").get<std::string>();
            t.metric = table.at("metric").get<std::string>();
            t.author_count = table.at("author_count").get<std::size_t>();
            for (const auto& row : table.at("rows")) {
                t.rows.push_back({row.at("true_author").get<std::string>(),
                                  row.at("predicted").get<std::string>(),
                                  row.at("best_score").get<double>(),
                                  row.at("tie").get<bool>(),
                                  row.at("correct").get<bool>()});
            }
            report.tables.push_back(std::move(t));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid report JSON: ") + e.what());
    }
    return report;
}

}  // namespace stylo
