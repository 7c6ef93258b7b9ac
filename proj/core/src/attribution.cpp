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

#include "stylo/attribution.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
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

std::set<std::string> flaw_union(const IdiosyncrasySet& set) {
    std::set<std::string> out = set.misspelt;
    out.insert(set.slang.begin(), set.slang.end());
    return out;
}

const NGramVector& gram_vector(const AuthorProfile& profile, FeatureKind feature) {
    const auto& grams = feature.family == FeatureKind::Family::char_ngram
                            ? profile.char_ngrams
                            : profile.word_ngrams;
    auto it = grams.find(feature.order);
    if (it == grams.end()) {
        throw Error("profile " + profile.author_id + " has no " + feature.name() +
                    " vector");
    }
    return it->second;
}

DistanceKind to_distance_kind(MetricKind metric) {
    switch (metric) {
        case MetricKind::cosine: return DistanceKind::cosine;
        case MetricKind::euclidean: return DistanceKind::euclidean;
        case MetricKind::manhattan: return DistanceKind::manhattan;
        case MetricKind::overlap: break;
    }
    throw Error("overlap is not a vector distance");
}

}  // namespace

std::string FeatureKind::name() const {
    switch (family) {
        case Family::char_ngram: return "char" + std::to_string(order);
        case Family::word_ngram: return "word" + std::to_string(order);
        case Family::lexical: return "lexical";
        case Family::structural: return "structural";
        case Family::idiosyncratic: return "idiosyncratic";
    }
    throw Error("invalid feature kind");
}

FeatureKind FeatureKind::parse(std::string_view name) {
    if (name == "lexical") return lexical();
    if (name == "structural") return structural();
    if (name == "idiosyncratic") return idiosyncratic();
    if (name.size() == 5 && (name.starts_with("char") || name.starts_with("word"))) {
        int order = name[4] - '0';
        if (order >= kMinGramOrder && order <= kMaxGramOrder) {
            return name[0] == 'c' ? char_ngram(order) : word_ngram(order);
        }
    }
    throw Error("unknown feature: " + std::string(name));
}

std::string_view to_string(MetricKind metric) {
    switch (metric) {
        case MetricKind::cosine: return "cosine";
        case MetricKind::euclidean: return "euclidean";
        case MetricKind::manhattan: return "manhattan";
        case MetricKind::overlap: return "overlap";
    }
    throw Error("invalid metric kind");
}

MetricKind metric_kind_from_string(std::string_view name) {
    if (name == "cosine") return MetricKind::cosine;
    if (name == "euclidean") return MetricKind::euclidean;
    if (name == "manhattan") return MetricKind::manhattan;
    if (name == "overlap") return MetricKind::overlap;
    throw Error("unknown metric: " + std::string(name));
}

bool metric_compatible(FeatureKind feature, MetricKind metric) {
    bool set_feature = feature.family == FeatureKind::Family::idiosyncratic;
    return set_feature == (metric == MetricKind::overlap);
}

AuthorProfile build_profile(std::string author_id,
                            const std::vector<CleanDocument>& known_docs,
                            const ProfileConfig& config) {
    if (known_docs.empty()) throw Error("build_profile: no documents");

    AuthorProfile profile;
    profile.author_id = std::move(author_id);
    profile.doc_count = known_docs.size();

    std::vector<TokenSequence> token_lists;
    token_lists.reserve(known_docs.size());
    for (const auto& doc : known_docs) token_lists.push_back(tokenize(doc.clean_text));

    for (int order : config.char_orders) {
        std::vector<NGramVector> per_doc;
        per_doc.reserve(known_docs.size());
        for (const auto& doc : known_docs) {
            per_doc.push_back(extract_char_ngrams(doc.clean_text, order));
        }
        profile.char_ngrams.emplace(order, merge_counts(per_doc));
    }
    for (int order : config.word_orders) {
        std::vector<NGramVector> per_doc;
        per_doc.reserve(known_docs.size());
        for (const auto& tokens : token_lists) {
            per_doc.push_back(extract_word_ngrams(tokens, order));
        }
        profile.word_ngrams.emplace(order, merge_counts(per_doc));
    }

    profile.lexical = lexical_features(known_docs);
    profile.structural = structural_features(known_docs);
    profile.idiosyncrasy =
        idiosyncratic_features(known_docs, config.dictionary, config.slang_lexicon);
    return profile;
}

AuthorProfile build_query(const std::vector<CleanDocument>& unknown_docs,
                          const ProfileConfig& config, std::string ground_truth) {
    if (unknown_docs.empty()) throw Error("build_query: no documents");
    return build_profile(std::move(ground_truth), unknown_docs, config);
}

std::vector<double> score_against(const AuthorProfile& query,
                                  const std::vector<const AuthorProfile*>& candidates,
                                  FeatureKind feature, MetricKind metric) {
    if (!metric_compatible(feature, metric)) {
        throw Error("metric " + std::string(to_string(metric)) +
                    " is incompatible with feature " + feature.name());
    }
    if (candidates.empty()) throw Error("score_against: no candidates");

    std::vector<double> scores;
    scores.reserve(candidates.size());

    switch (feature.family) {
        case FeatureKind::Family::char_ngram:
        case FeatureKind::Family::word_ngram: {
            const NGramVector& q = gram_vector(query, feature);
            DistanceKind kind = to_distance_kind(metric);
            for (const auto* cand : candidates) {
                scores.push_back(distance(q, gram_vector(*cand, feature), kind));
            }
            break;
        }
        case FeatureKind::Family::lexical:
        case FeatureKind::Family::structural: {
            bool lex = feature.family == FeatureKind::Family::lexical;
            std::vector<StyloVector> raw;
            raw.reserve(candidates.size());
            for (const auto* cand : candidates) {
                raw.push_back(lex ? cand->lexical : cand->structural);
            }
            auto [scaled, scaled_query] =
                normalize_features(raw, lex ? query.lexical : query.structural);
            DistanceKind kind = to_distance_kind(metric);
            for (const auto& cand : scaled) {
                scores.push_back(distance(std::span<const double>(scaled_query.values),
                                          std::span<const double>(cand.values), kind));
            }
            break;
        }
        case FeatureKind::Family::idiosyncratic: {
            std::set<std::string> q = flaw_union(query.idiosyncrasy);
            for (const auto* cand : candidates) {
                scores.push_back(
                    1.0 - overlap_similarity(q, flaw_union(cand->idiosyncrasy)));
            }
            break;
        }
    }
    return scores;
}

RankedScores rank_ascending(const std::vector<double>& scores) {
    if (scores.empty()) throw Error("rank_ascending: no scores");

    RankedScores ranked;
    ranked.order.resize(scores.size());
    std::iota(ranked.order.begin(), ranked.order.end(), 0);
    std::sort(ranked.order.begin(), ranked.order.end(),
              [&](std::size_t a, std::size_t b) {
                  if (scores[a] != scores[b]) return scores[a] < scores[b];
                  return a < b;
              });

    // The leading group within the tie margin competes for the prediction;
    // the earliest candidate in list order wins and moves to the front.
    double best = scores[ranked.order[0]];
    std::size_t group_end = 1;
    std::size_t winner_pos = 0;
    while (group_end < ranked.order.size() &&
           scores[ranked.order[group_end]] - best <= kTieEpsilon) {
        if (ranked.order[group_end] < ranked.order[winner_pos]) {
            winner_pos = group_end;
        }
        ++group_end;
    }
    std::rotate(ranked.order.begin(), ranked.order.begin() + winner_pos,
                ranked.order.begin() + winner_pos + 1);
    ranked.tie = group_end >= 2;
    return ranked;
}

AttributionResult attribute(const AuthorProfile& query,
                            const std::vector<const AuthorProfile*>& profiles,
                            FeatureKind feature, MetricKind metric) {
    if (profiles.size() < 2) throw Error("attribute: need at least 2 profiles");
    std::vector<double> scores = score_against(query, profiles, feature, metric);
    RankedScores ranked = rank_ascending(scores);

    AttributionResult result;
    result.query_author_id = query.author_id;
    result.feature = feature;
    result.metric = metric;
    for (std::size_t i : ranked.order) {
        result.ranking.emplace_back(profiles[i]->author_id, scores[i]);
    }
    result.predicted = result.ranking.front().first;
    result.tie = ranked.tie;
    if (!query.author_id.empty()) {
        result.correct = result.predicted == query.author_id;
    }
    if (feature.family == FeatureKind::Family::idiosyncratic) {
        result.uninformative = query.idiosyncrasy.empty() &&
                               profiles[ranked.order[0]]->idiosyncrasy.empty();
    }
    return result;
}

AttributionResult attribute(const AuthorProfile& query,
                            const std::vector<AuthorProfile>& profiles,
                            FeatureKind feature, MetricKind metric) {
    std::vector<const AuthorProfile*> ptrs;
    ptrs.reserve(profiles.size());
    for (const auto& p : profiles) ptrs.push_back(&p);
    return attribute(query, ptrs, feature, metric);
}

// --- serialization -----------------------------------------------------------

namespace {

nlohmann::ordered_json stylo_vector_to_json(const StyloVector& vec) {
    nlohmann::ordered_json obj;
    obj["kind"] = std::string(to_string(vec.kind));
    obj["values"] = vec.values;
    return obj;
}

StyloVector stylo_vector_from_json(const nlohmann::json& obj) {
    StyloVector vec;
    vec.kind = stylo_kind_from_string(obj.at("kind").get<std::string>());
    vec.values = obj.at("values").get<std::vector<double>>();
    std::size_t expected =
        vec.kind == StyloKind::lexical ? kLexicalCatalog.size() : kStructuralCatalog.size();
    if (vec.values.size() != expected) {
        throw Error("feature vector has wrong length for its kind");
    }
    return vec;
}

}  // namespace

std::string AuthorProfile::to_json() const {
    nlohmann::ordered_json root;
    root["author_id"] = author_id;
    root["doc_count"] = doc_count;

    auto& chars = root["char_ngrams"] = nlohmann::ordered_json::object();
    for (const auto& [order, vec] : char_ngrams) {
        chars[std::to_string(order)] = nlohmann::ordered_json::parse(vec.to_json());
    }
    auto& words = root["word_ngrams"] = nlohmann::ordered_json::object();
    for (const auto& [order, vec] : word_ngrams) {
        words[std::to_string(order)] = nlohmann::ordered_json::parse(vec.to_json());
    }
    root["lexical"] = stylo_vector_to_json(lexical);
    root["structural"] = stylo_vector_to_json(structural);
    root["idiosyncrasy"] = {{"misspelt", idiosyncrasy.misspelt},
                            {"slang", idiosyncrasy.slang}};
    return root.dump(2) + "\n";
}

AuthorProfile AuthorProfile::from_json(std::string_view json_text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid profile JSON: ") + e.what());
    }

    AuthorProfile profile;
    try {
        profile.author_id = root.at("author_id").get<std::string>();
        profile.doc_count = root.at("doc_count").get<std::size_t>();
        for (const auto& [key, value] : root.at("char_ngrams").items()) {
            profile.char_ngrams.emplace(std::stoi(key),
                                        NGramVector::from_json(value.dump()));
        }
        for (const auto& [key, value] : root.at("word_ngrams").items()) {
            profile.word_ngrams.emplace(std::stoi(key),
                                        NGramVector::from_json(value.dump()));
        }
        profile.lexical = stylo_vector_from_json(root.at("lexical"));
        profile.structural = stylo_vector_from_json(root.at("structural"));
        const auto& idio = root.at("idiosyncrasy");
        profile.idiosyncrasy.misspelt =
            idio.at("misspelt").get<std::set<std::string>>();
        profile.idiosyncrasy.slang = idio.at("slang").get<std::set<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid profile JSON: ") + e.what());
    }
    return profile;
}

// --- profile store -----------------------------------------------------------

std::string urlsafe_encode(std::string_view raw) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(raw.size());
    for (unsigned char c : raw) {
        bool safe = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' ||
                    c == '~';
        if (safe) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(kHex[c >> 4]);
            out.push_back(kHex[c & 0xF]);
        }
    }
    return out;
}

std::string urlsafe_decode(std::string_view encoded) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        return -1;
    };
    std::string out;
    out.reserve(encoded.size());
    for (std::size_t i = 0; i < encoded.size(); ++i) {
        if (encoded[i] != '%') {
            out.push_back(encoded[i]);
            continue;
        }
        if (i + 2 >= encoded.size()) throw Error("truncated percent escape");
        int hi = nibble(encoded[i + 1]);
        int lo = nibble(encoded[i + 2]);
        if (hi < 0 || lo < 0) throw Error("invalid percent escape");
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
    }
    return out;
}

namespace {

std::string store_config_hash(const ProfileStoreMeta& meta) {
    std::string canon = "authors=";
    for (const auto& a : meta.authors) {
        canon += urlsafe_encode(a);
        canon += ',';
    }
    canon += ";char=";
    for (int n : meta.char_orders) {
        canon += std::to_string(n);
        canon += ',';
    }
    canon += ";word=";
    for (int n : meta.word_orders) {
        canon += std::to_string(n);
        canon += ',';
    }
    canon += ";train=" + format_double(meta.train_fraction);
    canon += ";seed=" + std::to_string(meta.seed);
    canon += ";mode=" + meta.split_mode;

    std::uint64_t h = fnv1a64(canon);
    char buf[17];
    for (int i = 15; i >= 0; --i) {
        buf[i] = "0123456789abcdef"[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

void save_profile_store(const std::filesystem::path& dir,
                        const std::vector<AuthorProfile>& profiles,
                        ProfileStoreMeta meta) {
    if (profiles.size() != meta.authors.size()) {
        throw Error("profile store: profiles and manifest authors differ in count");
    }
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        if (profiles[i].author_id != meta.authors[i]) {
            throw Error("profile store: author order mismatch at index " +
                        std::to_string(i));
        }
    }
    std::filesystem::create_directories(dir);
    meta.config_hash = store_config_hash(meta);

    for (const auto& profile : profiles) {
        write_file(dir / (urlsafe_encode(profile.author_id) + ".json"),
                   profile.to_json());
    }

    nlohmann::ordered_json manifest;
    manifest["authors"] = meta.authors;
    manifest["char_orders"] = meta.char_orders;
    manifest["word_orders"] = meta.word_orders;
    manifest["train_fraction"] = meta.train_fraction;
    manifest["seed"] = meta.seed;
    manifest["split_mode"] = meta.split_mode;
    manifest["config_hash"] = meta.config_hash;
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

ProfileStore load_profile_store(const std::filesystem::path& dir) {
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid manifest JSON: ") + e.what());
    }

    ProfileStore store;
    try {
        store.meta.authors = manifest.at("authors").get<std::vector<std::string>>();
        store.meta.char_orders = manifest.at("char_orders").get<std::vector<int>>();
        store.meta.word_orders = manifest.at("word_orders").get<std::vector<int>>();
        store.meta.train_fraction = manifest.at("train_fraction").get<double>();
        store.meta.seed = manifest.at("seed").get<std::uint64_t>();
        store.meta.split_mode = manifest.at("split_mode").get<std::string>();
        store.meta.config_hash = manifest.at("config_hash").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid manifest JSON: ") + e.what());
    }

    if (store.meta.config_hash != store_config_hash(store.meta)) {
        throw Error("profile store manifest hash mismatch");
    }

    for (const auto& author : store.meta.authors) {
        auto path = dir / (urlsafe_encode(author) + ".json");
        AuthorProfile profile = AuthorProfile::from_json(read_file(path));
        if (profile.author_id != author) {
            throw Error("profile file " + path.string() + " names author " +
                        profile.author_id + ", manifest expects " + author);
        }
        store.profiles.push_back(std::move(profile));
    }
    return store;
}

}  // namespace stylo
