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

// Command-line front end. Standard output carries machine-readable JSON
// only; diagnostics go to standard error, reports to files. Exit codes:
// 0 success, 2 usage or validation error, 1 internal error.

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "stylo/attribution.hpp"
#include "stylo/corpus.hpp"
#include "stylo/error.hpp"
#include "stylo/evaluation.hpp"
#include "stylo/stylometry.hpp"
#include "stylo/synthgen.hpp"
#include "stylo/unicode.hpp"

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_dir;
    bool out_given = false;
};

stylo::CorpusFormat parse_format(const std::string& name) {
    if (name == "jsonl") return stylo::CorpusFormat::jsonl;
    if (name == "csv") return stylo::CorpusFormat::csv;
    throw stylo::Error("unknown corpus format: " + name);
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw stylo::Error("cannot write " + path.string());
    out << content;
    if (!out) throw stylo::Error("write failed: " + path.string());
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw stylo::Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path prepare_out_dir(const GlobalOptions& global, const char* fallback) {
    fs::path dir = global.out_given ? fs::path(global.out_dir) : fs::path(fallback);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw stylo::Error("cannot create output directory " + dir.string());
    return dir;
}

std::set<std::string> lexicon_or_default(const std::string& path,
                                         const std::vector<std::string>& fallback) {
    if (!path.empty()) return stylo::load_lexicon(path);
    return {fallback.begin(), fallback.end()};
}

void emit(const nlohmann::ordered_json& payload) {
    std::cout << payload.dump(2) << "\n";
}

// --- ingest ------------------------------------------------------------------

struct IngestOptions {
    std::string input;
    std::string format = "jsonl";
    bool strict_length = false;
};

int cmd_ingest(const IngestOptions& opt, const GlobalOptions& global) {
    std::vector<stylo::RawDocument> docs =
        stylo::load_raw_documents(opt.input, parse_format(opt.format),
                                  opt.strict_length);

    fs::path dir = prepare_out_dir(global, ".");
    stylo::write_jsonl(dir / "corpus.jsonl", docs);

    std::map<std::string, std::size_t> per_author;
    std::vector<std::string> authors;
    for (const auto& doc : docs) {
        auto [it, inserted] = per_author.try_emplace(doc.author_id, 0);
        if (inserted) authors.push_back(doc.author_id);
        ++it->second;
    }
    std::vector<std::size_t> counts;
    for (const auto& author : authors) counts.push_back(per_author[author]);
    std::sort(counts.begin(), counts.end());
    double median = counts.size() % 2 == 1
                        ? static_cast<double>(counts[counts.size() / 2])
                        : (static_cast<double>(counts[counts.size() / 2 - 1]) +
                           static_cast<double>(counts[counts.size() / 2])) /
                              2.0;

    nlohmann::ordered_json summary;
    summary["authors"] = authors;
    summary["author_count"] = authors.size();
    summary["document_count"] = docs.size();
    summary["docs_per_author"] = {
        {"min", counts.front()}, {"median", median}, {"max", counts.back()}};
    emit(summary);
    return 0;
}

// --- profile -----------------------------------------------------------------

struct ProfileOptions {
    std::string corpus;
    std::string format = "jsonl";
    std::string dictionary;
    std::string slang;
    double train_fraction = 0.7;
    std::string split_mode = "in_order";
    std::vector<int> char_orders = {3, 4};
    std::vector<int> word_orders = {2, 3};
    bool strict_length = false;
};

int cmd_profile(const ProfileOptions& opt, const GlobalOptions& global) {
    stylo::Corpus corpus =
        stylo::load_corpus(opt.corpus, parse_format(opt.format), opt.strict_length);
    stylo::SplitCorpus split =
        stylo::split_corpus(corpus, opt.train_fraction, global.seed,
                            stylo::split_mode_from_string(opt.split_mode));

    stylo::ProfileConfig pcfg;
    pcfg.char_orders = opt.char_orders;
    pcfg.word_orders = opt.word_orders;
    pcfg.dictionary = lexicon_or_default(opt.dictionary, stylo::base_vocabulary());
    pcfg.slang_lexicon = lexicon_or_default(opt.slang, stylo::base_slang());

    std::vector<stylo::AuthorProfile> profiles;
    for (const auto& author : corpus.authors) {
        profiles.push_back(
            stylo::build_profile(author, split.known.at(author), pcfg));
    }

    stylo::ProfileStoreMeta meta;
    meta.authors = corpus.authors;
    meta.char_orders = opt.char_orders;
    meta.word_orders = opt.word_orders;
    meta.train_fraction = opt.train_fraction;
    meta.seed = global.seed;
    meta.split_mode = opt.split_mode;

    fs::path dir = prepare_out_dir(global, "profiles");
    stylo::save_profile_store(dir, profiles, meta);
    stylo::ProfileStore reloaded = stylo::load_profile_store(dir);

    nlohmann::ordered_json summary;
    summary["author_count"] = profiles.size();
    summary["char_orders"] = opt.char_orders;
    summary["word_orders"] = opt.word_orders;
    summary["config_hash"] = reloaded.meta.config_hash;
    emit(summary);
    return 0;
}

// --- attribute ---------------------------------------------------------------

struct AttributeOptions {
    std::string store = "profiles";
    std::string text;
    std::string file;
    std::string feature = "char3";
    std::string metric;
    std::string truth;
    std::string dictionary;
    std::string slang;
};

int cmd_attribute(const AttributeOptions& opt) {
    if (opt.text.empty() == opt.file.empty()) {
        throw stylo::Error("provide exactly one of --text or --file");
    }

    stylo::ProfileStore store = stylo::load_profile_store(opt.store);
    stylo::FeatureKind feature = stylo::FeatureKind::parse(opt.feature);
    stylo::MetricKind metric =
        opt.metric.empty()
            ? (feature.family == stylo::FeatureKind::Family::idiosyncratic
                   ? stylo::MetricKind::overlap
                   : stylo::MetricKind::cosine)
            : stylo::metric_kind_from_string(opt.metric);

    std::string raw = opt.text.empty() ? read_text_file(opt.file) : opt.text;
    stylo::PreprocessResult pre = stylo::preprocess(stylo::uni::nfc(raw));
    stylo::CleanDocument doc{"query", opt.truth, pre.clean_text, pre.removed};

    stylo::ProfileConfig pcfg;
    pcfg.char_orders = store.meta.char_orders;
    pcfg.word_orders = store.meta.word_orders;
    pcfg.dictionary = lexicon_or_default(opt.dictionary, stylo::base_vocabulary());
    pcfg.slang_lexicon = lexicon_or_default(opt.slang, stylo::base_slang());
    stylo::AuthorProfile query = stylo::build_query({doc}, pcfg, opt.truth);

    stylo::AttributionResult result =
        stylo::attribute(query, store.profiles, feature, metric);

    nlohmann::ordered_json payload;
    payload["feature"] = result.feature.name();
    payload["metric"] = std::string(stylo::to_string(result.metric));
    payload["predicted"] = result.predicted;
    payload["tie"] = result.tie;
    if (result.correct.has_value()) payload["correct"] = *result.correct;
    if (result.uninformative) payload["uninformative"] = true;
    auto& ranking = payload["ranking"] = nlohmann::ordered_json::array();
    for (const auto& [author, score] : result.ranking) {
        ranking.push_back({{"author", author}, {"score", score}});
    }
    emit(payload);
    return 0;
}

// --- evaluate ----------------------------------------------------------------

struct EvaluateOptions {
    std::string corpus;
    std::string format = "jsonl";
    std::string dictionary;
    std::string slang;
    std::vector<std::size_t> counts = {5, 10, 15, 20, 25, 30, 35, 40};
    std::vector<std::string> features = {"char3",   "char4",      "word2",
                                         "word3",   "lexical",    "structural",
                                         "idiosyncratic"};
    std::vector<std::string> metrics = {"cosine", "euclidean", "manhattan"};
    double train_fraction = 0.7;
    std::string split_mode = "in_order";
    std::string selection = "in_order";
    bool include_fused = false;
    bool strict_length = false;
};

int cmd_evaluate(const EvaluateOptions& opt, const GlobalOptions& global) {
    stylo::Corpus corpus =
        stylo::load_corpus(opt.corpus, parse_format(opt.format), opt.strict_length);

    stylo::SweepConfig config;
    config.author_counts = opt.counts;
    config.features.clear();
    for (const auto& name : opt.features) {
        config.features.push_back(stylo::FeatureKind::parse(name));
    }
    config.metrics.clear();
    for (const auto& name : opt.metrics) {
        stylo::MetricKind metric = stylo::metric_kind_from_string(name);
        if (metric == stylo::MetricKind::overlap) {
            throw stylo::Error(
                "--metrics lists vector distances; overlap is implied for the "
                "idiosyncratic feature");
        }
        config.metrics.push_back(metric);
    }
    config.train_fraction = opt.train_fraction;
    config.seed = global.seed;
    config.selection = stylo::author_selection_from_string(opt.selection);
    config.split_mode = stylo::split_mode_from_string(opt.split_mode);
    config.include_fused = opt.include_fused;
    config.dictionary = lexicon_or_default(opt.dictionary, stylo::base_vocabulary());
    config.slang_lexicon = lexicon_or_default(opt.slang, stylo::base_slang());

    stylo::EvaluationReport report = stylo::run_sweep(corpus, config);

    fs::path dir = prepare_out_dir(global, "report");
    write_text_file(dir / "report.json",
                    stylo::render_report(report, stylo::ReportFormat::json));
    write_text_file(dir / "accuracy.csv",
                    stylo::render_report(report, stylo::ReportFormat::csv));
    write_text_file(dir / "tables.csv", stylo::render_table_csv(report));
    write_text_file(dir / "report.md",
                    stylo::render_report(report, stylo::ReportFormat::markdown));

    nlohmann::ordered_json summary;
    summary["author_counts"] = opt.counts;
    summary["features"] = opt.features;
    summary["metrics"] = opt.metrics;
    summary["cells"] = report.cells.size();
    summary["artifacts"] = {"report.json", "accuracy.csv", "tables.csv",
                            "report.md"};
    emit(summary);
    return 0;
}

// --- synth -------------------------------------------------------------------

struct SynthOptions {
    std::size_t num_authors = 40;
    std::size_t msgs_min = 120;
    std::size_t msgs_max = 200;
    double params_spread = 1.0;
    stylo::StyleParams base;
};

int cmd_synth(const SynthOptions& opt, const GlobalOptions& global) {
    stylo::SynthConfig config;
    config.num_authors = opt.num_authors;
    config.msgs_min = opt.msgs_min;
    config.msgs_max = opt.msgs_max;
    config.params_spread = opt.params_spread;
    config.seed = global.seed_given ? global.seed : config.seed;
    config.base = opt.base;

    std::vector<stylo::RawDocument> docs = stylo::generate_corpus(config);

    fs::path dir = prepare_out_dir(global, ".");
    stylo::write_jsonl(dir / "corpus.jsonl", docs);

    nlohmann::ordered_json manifest;
    manifest["num_authors"] = config.num_authors;
    manifest["msgs_min"] = config.msgs_min;
    manifest["msgs_max"] = config.msgs_max;
    manifest["params_spread"] = config.params_spread;
    manifest["seed"] = config.seed;
    manifest["base"] = {
        {"vocab_seed_words", config.base.vocab_seed_words},
        {"zipf_exponent", config.base.zipf_exponent},
        {"misspelling_rate", config.base.misspelling_rate},
        {"slang_rate", config.base.slang_rate},
        {"mention_rate", config.base.mention_rate},
        {"hashtag_rate", config.base.hashtag_rate},
        {"url_rate", config.base.url_rate},
        {"uppercase_bias", config.base.uppercase_bias},
        {"mean_words_per_message", config.base.mean_words_per_message},
    };
    manifest["document_count"] = docs.size();
    write_text_file(dir / "synth-manifest.json", manifest.dump(2) + "\n");

    nlohmann::ordered_json summary;
    summary["author_count"] = config.num_authors;
    summary["document_count"] = docs.size();
    summary["seed"] = config.seed;
    emit(summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Authorship attribution toolkit for short-message corpora"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Key-value config file; flags override it");

    GlobalOptions global;
    auto* seed_opt =
        app.add_option("--seed", global.seed, "Seed for splits, sampling, synthesis");
    auto* out_opt =
        app.add_option("--out", global.out_dir, "Output directory for artifacts");

    IngestOptions ingest;
    auto* ingest_cmd =
        app.add_subcommand("ingest", "Validate and canonicalize a corpus file");
    ingest_cmd->add_option("input", ingest.input, "Corpus file to ingest")
        ->required()
        ->check(CLI::ExistingFile);
    ingest_cmd->add_option("--format", ingest.format, "Input format: jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    ingest_cmd->add_flag("--strict-length", ingest.strict_length,
                         "Reject messages over 280 scalar values");

    ProfileOptions profile;
    auto* profile_cmd = app.add_subcommand(
        "profile", "Build and persist per-author profiles from the known split");
    profile_cmd->add_option("--corpus", profile.corpus, "Canonical corpus file")
        ->required()
        ->check(CLI::ExistingFile);
    profile_cmd->add_option("--format", profile.format, "Input format")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    profile_cmd->add_option("--dictionary", profile.dictionary,
                            "Dictionary file (default: built-in word list)")
        ->check(CLI::ExistingFile);
    profile_cmd->add_option("--slang", profile.slang,
                            "Slang lexicon file (default: built-in list)")
        ->check(CLI::ExistingFile);
    profile_cmd->add_option("--train-fraction", profile.train_fraction,
                            "Known-split fraction per author");
    profile_cmd->add_option("--split-mode", profile.split_mode,
                            "in_order or shuffled")
        ->check(CLI::IsMember({"in_order", "shuffled"}));
    profile_cmd->add_option("--char-orders", profile.char_orders,
                            "Character n-gram orders");
    profile_cmd->add_option("--word-orders", profile.word_orders,
                            "Word n-gram orders");
    profile_cmd->add_flag("--strict-length", profile.strict_length,
                          "Reject messages over 280 scalar values");

    AttributeOptions attribute;
    auto* attribute_cmd = app.add_subcommand(
        "attribute", "Rank stored profiles against an unknown text");
    attribute_cmd->add_option("--store", attribute.store, "Profile store directory");
    attribute_cmd->add_option("--text", attribute.text, "Unknown text");
    attribute_cmd->add_option("--file", attribute.file,
                              "Plain-text file holding the unknown text")
        ->check(CLI::ExistingFile);
    attribute_cmd->add_option("--feature", attribute.feature,
                              "char2..char4, word2..word4, lexical, structural or "
                              "idiosyncratic");
    attribute_cmd->add_option("--metric", attribute.metric,
                              "cosine, euclidean, manhattan or overlap "
                              "(default fits the feature)");
    attribute_cmd->add_option("--truth", attribute.truth,
                              "Ground-truth author for scoring");
    attribute_cmd->add_option("--dictionary", attribute.dictionary,
                              "Dictionary file (default: built-in word list)")
        ->check(CLI::ExistingFile);
    attribute_cmd->add_option("--slang", attribute.slang,
                              "Slang lexicon file (default: built-in list)")
        ->check(CLI::ExistingFile);

    EvaluateOptions evaluate;
    auto* evaluate_cmd = app.add_subcommand(
        "evaluate", "Run the accuracy sweep and write report artifacts");
    evaluate_cmd->add_option("--corpus", evaluate.corpus, "Corpus file")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--format", evaluate.format, "Input format")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    evaluate_cmd->add_option("--dictionary", evaluate.dictionary,
                             "Dictionary file (default: built-in word list)")
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--slang", evaluate.slang,
                             "Slang lexicon file (default: built-in list)")
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--counts", evaluate.counts,
                             "Ascending candidate author counts");
    evaluate_cmd->add_option("--features", evaluate.features, "Feature families");
    evaluate_cmd->add_option("--metrics", evaluate.metrics, "Vector distances");
    evaluate_cmd->add_option("--train-fraction", evaluate.train_fraction,
                             "Known-split fraction per author");
    evaluate_cmd->add_option("--split-mode", evaluate.split_mode,
                             "in_order or shuffled")
        ->check(CLI::IsMember({"in_order", "shuffled"}));
    evaluate_cmd->add_option("--selection", evaluate.selection,
                             "Candidate selection: in_order or random")
        ->check(CLI::IsMember({"in_order", "random"}));
    evaluate_cmd->add_flag("--include-fused", evaluate.include_fused,
                           "Add the fused pseudo-metric to reports");
    evaluate_cmd->add_flag("--strict-length", evaluate.strict_length,
                           "Reject messages over 280 scalar values");

    SynthOptions synth;
    auto* synth_cmd =
        app.add_subcommand("synth", "Generate a deterministic synthetic corpus");
    synth_cmd->add_option("--authors", synth.num_authors, "Number of authors");
    synth_cmd->add_option("--msgs-min", synth.msgs_min, "Minimum messages per author");
    synth_cmd->add_option("--msgs-max", synth.msgs_max, "Maximum messages per author");
    synth_cmd->add_option("--spread", synth.params_spread,
                          "Inter-author style separation (0 = identical)");
    synth_cmd->add_option("--vocab-words", synth.base.vocab_seed_words,
                          "Vocabulary words per author");
    synth_cmd->add_option("--zipf", synth.base.zipf_exponent,
                          "Vocabulary rank exponent");
    synth_cmd->add_option("--misspelling-rate", synth.base.misspelling_rate,
                          "Habitual misspelling rate per word");
    synth_cmd->add_option("--slang-rate", synth.base.slang_rate,
                          "Slang injection rate per message");
    synth_cmd->add_option("--mention-rate", synth.base.mention_rate,
                          "Mention injection rate per message");
    synth_cmd->add_option("--hashtag-rate", synth.base.hashtag_rate,
                          "Hashtag injection rate per message");
    synth_cmd->add_option("--url-rate", synth.base.url_rate,
                          "URL injection rate per message");
    synth_cmd->add_option("--uppercase-bias", synth.base.uppercase_bias,
                          "Capitalization rate per word");
    synth_cmd->add_option("--mean-words", synth.base.mean_words_per_message,
                          "Mean words per message");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    global.seed_given = seed_opt->count() > 0;
    global.out_given = out_opt->count() > 0;

    try {
        if (ingest_cmd->parsed()) return cmd_ingest(ingest, global);
        if (profile_cmd->parsed()) return cmd_profile(profile, global);
        if (attribute_cmd->parsed()) return cmd_attribute(attribute);
        if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate, global);
        if (synth_cmd->parsed()) return cmd_synth(synth, global);
        std::cerr << "error: no command given\n";
        return 2;
    } catch (const stylo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
