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

#include "stylo/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "stylo/error.hpp"
#include "stylo/rng.hpp"
#include "stylo/unicode.hpp"

namespace stylo {

namespace {

bool is_url_scheme_at(const std::u32string& text, std::size_t pos, std::size_t* scheme_len) {
    auto lower = [](char32_t c) { return c >= U'A' && c <= U'Z' ? c + 32 : c; };
    static const std::u32string http = U"http";
    std::size_t i = pos;
    for (char32_t c : http) {
        if (i >= text.size() || lower(text[i]) != c) return false;
        ++i;
    }
    if (i < text.size() && lower(text[i]) == U's') ++i;
    static const std::u32string tail = U"://";
    for (char32_t c : tail) {
        if (i >= text.size() || text[i] != c) return false;
        ++i;
    }
    *scheme_len = i - pos;
    return true;
}

// Pass 1: `https?://` + non-empty maximal run of non-whitespace.
std::u32string strip_urls(const std::u32string& text, std::uint32_t* count) {
    std::u32string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t scheme_len = 0;
        if (is_url_scheme_at(text, i, &scheme_len)) {
            std::size_t j = i + scheme_len;
            std::size_t run_start = j;
            while (j < text.size() && !uni::is_whitespace(text[j])) ++j;
            if (j > run_start) {
                ++*count;
                i = j;
                continue;
            }
        }
        out.push_back(text[i++]);
    }
    return out;
}

// Passes 2 and 3 share their shape: a marker character at start-of-text or
// after whitespace, followed by a non-empty maximal run. "After whitespace"
// looks at the last kept character, so a removal exposes the next marker
// ("@a@b" loses both) and the result is stable under re-preprocessing.
template <typename RunPred>
std::u32string strip_marked(const std::u32string& text, char32_t marker, RunPred in_run,
                            std::uint32_t* count) {
    std::u32string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        bool at_boundary = out.empty() || uni::is_whitespace(out.back());
        if (text[i] == marker && at_boundary) {
            std::size_t j = i + 1;
            while (j < text.size() && in_run(text[j])) ++j;
            if (j > i + 1) {
                ++*count;
                i = j;
                continue;
            }
        }
        out.push_back(text[i++]);
    }
    return out;
}

std::u32string collapse_whitespace(const std::u32string& text) {
    std::u32string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char32_t c : text) {
        if (uni::is_whitespace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(U' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

}  // namespace

PreprocessResult preprocess(std::string_view text) {
    std::u32string scalars = uni::decode_utf8(text);
    RemovedCounts removed;

    // A removal in a later pass can expose a match for an earlier pattern
    // ("#tag@user" loses the hashtag and leaves "@user" at start-of-text), so
    // the ordered passes repeat until nothing changes. Every removal shrinks
    // the text, which bounds the loop.
    for (;;) {
        std::size_t before = scalars.size();
        scalars = strip_urls(scalars, &removed.urls);
        scalars = strip_marked(scalars, U'@', uni::is_ascii_word, &removed.mentions);
        scalars = strip_marked(
            scalars, U'#',
            [](char32_t c) { return c == U'_' || uni::is_letter(c) || uni::is_digit(c); },
            &removed.hashtags);
        if (scalars.size() == before) break;
    }
    scalars = collapse_whitespace(scalars);

    return {uni::encode_utf8(scalars), removed};
}

const std::vector<CleanDocument>& Corpus::docs(const std::string& author_id) const {
    auto it = documents.find(author_id);
    if (it == documents.end()) throw Error("unknown author: " + author_id);
    return it->second;
}

std::size_t Corpus::total_documents() const {
    std::size_t n = 0;
    for (const auto& [_, docs] : documents) n += docs.size();
    return n;
}

namespace {

struct ParsedRecord {
    RawDocument doc;
    std::size_t line = 0;
};

[[noreturn]] void record_error(std::size_t line, const std::string& what) {
    throw Error("line " + std::to_string(line) + ": " + what);
}

void validate_record(ParsedRecord& rec, bool strict_length) {
    if (rec.doc.doc_id.empty()) record_error(rec.line, "empty \"id\"");
    if (rec.doc.author_id.empty()) record_error(rec.line, "empty \"author\"");

    std::size_t scalars = 0;
    try {
        rec.doc.text = uni::nfc(rec.doc.text);
        scalars = uni::scalar_count(rec.doc.text);
    } catch (const Error& e) {
        record_error(rec.line, e.what());
    }
    if (scalars == 0) record_error(rec.line, "empty \"text\"");
    if (strict_length && scalars > kMaxMessageScalars) {
        record_error(rec.line, "text has " + std::to_string(scalars) +
                                   " scalar values, limit is " +
                                   std::to_string(kMaxMessageScalars));
    }
}

std::vector<ParsedRecord> parse_jsonl(std::istream& in) {
    std::vector<ParsedRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            record_error(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object()) record_error(line_no, "record is not a JSON object");

        ParsedRecord rec;
        rec.line = line_no;
        for (const char* key : {"id", "author", "text"}) {
            if (!obj.contains(key)) {
                record_error(line_no, std::string("missing \"") + key + "\" field");
            }
            if (!obj[key].is_string()) {
                record_error(line_no, std::string("\"") + key + "\" is not a string");
            }
        }
        rec.doc.doc_id = obj["id"].get<std::string>();
        rec.doc.author_id = obj["author"].get<std::string>();
        rec.doc.text = obj["text"].get<std::string>();
        if (obj.contains("created_at")) {
            if (!obj["created_at"].is_string()) {
                record_error(line_no, "\"created_at\" is not a string");
            }
            rec.doc.created_at = obj["created_at"].get<std::string>();
        }
        records.push_back(std::move(rec));
    }
    return records;
}

// Minimal RFC-4180 reader. Quoted fields may contain commas, escaped quotes
// and line breaks; the reported line number is where the record started.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    bool next_record(std::vector<std::string>* fields, std::size_t* start_line) {
        fields->clear();
        int c = in_.peek();
        if (c == EOF) return false;
        *start_line = line_;

        std::string field;
        bool quoted = false;
        bool done = false;
        while (!done) {
            c = in_.get();
            if (quoted) {
                if (c == EOF) record_error(*start_line, "unterminated quoted field");
                if (c == '"') {
                    if (in_.peek() == '"') {
                        field.push_back('"');
                        in_.get();
                    } else {
                        quoted = false;
                    }
                } else {
                    if (c == '\n') ++line_;
                    field.push_back(static_cast<char>(c));
                }
                continue;
            }
            switch (c) {
                case EOF:
                    done = true;
                    break;
                case '"':
                    if (!field.empty()) record_error(line_, "stray quote inside field");
                    quoted = true;
                    break;
                case ',':
                    fields->push_back(std::move(field));
                    field.clear();
                    break;
                case '\r':
                    if (in_.peek() == '\n') in_.get();
                    [[fallthrough]];
                case '\n':
                    ++line_;
                    done = true;
                    break;
                default:
                    field.push_back(static_cast<char>(c));
            }
        }
        fields->push_back(std::move(field));
        return true;
    }

private:
    std::istream& in_;
    std::size_t line_ = 1;
};

std::vector<ParsedRecord> parse_csv(std::istream& in) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    std::size_t line = 0;

    if (!reader.next_record(&fields, &line)) throw Error("empty file");
    const std::vector<std::string> expected = {"id", "author", "text", "created_at"};
    if (fields != expected) {
        record_error(line, "header must be exactly \"id,author,text,created_at\"");
    }

    std::vector<ParsedRecord> records;
    while (reader.next_record(&fields, &line)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != 4) {
            record_error(line, "expected 4 fields, got " + std::to_string(fields.size()));
        }
        ParsedRecord rec;
        rec.line = line;
        rec.doc.doc_id = fields[0];
        rec.doc.author_id = fields[1];
        rec.doc.text = fields[2];
        rec.doc.created_at = fields[3];
        records.push_back(std::move(rec));
    }
    return records;
}

// Validates every record in place (NFC, field and length checks) and errors
// when any author contributes fewer than 2 documents.
void validate_records(std::vector<ParsedRecord>& records, bool strict_length) {
    if (records.empty()) throw Error("empty file: no records");

    std::map<std::string, std::size_t> per_author;
    for (auto& rec : records) {
        validate_record(rec, strict_length);
        ++per_author[rec.doc.author_id];
    }

    std::string offenders;
    for (auto& rec : records) {
        auto it = per_author.find(rec.doc.author_id);
        if (it != per_author.end() && it->second < 2) {
            offenders += " " + rec.doc.author_id;
            per_author.erase(it);  // list each offender once, in file order
        }
    }
    if (!offenders.empty()) {
        throw Error("authors with fewer than 2 documents:" + offenders);
    }
}

Corpus group_records(std::vector<ParsedRecord> records, bool strict_length) {
    validate_records(records, strict_length);

    Corpus corpus;
    for (auto& rec : records) {
        auto [it, inserted] = corpus.documents.try_emplace(rec.doc.author_id);
        if (inserted) corpus.authors.push_back(rec.doc.author_id);

        PreprocessResult pre = preprocess(rec.doc.text);
        it->second.push_back(CleanDocument{rec.doc.doc_id, rec.doc.author_id,
                                           std::move(pre.clean_text), pre.removed});
    }
    return corpus;
}

std::vector<ParsedRecord> parse_file(const std::filesystem::path& path,
                                     CorpusFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return format == CorpusFormat::jsonl ? parse_jsonl(in) : parse_csv(in);
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   bool strict_length) {
    return group_records(parse_file(path, format), strict_length);
}

Corpus corpus_from_raw(const std::vector<RawDocument>& docs, bool strict_length) {
    std::vector<ParsedRecord> records;
    records.reserve(docs.size());
    std::size_t i = 0;
    for (const auto& doc : docs) records.push_back({doc, ++i});
    return group_records(std::move(records), strict_length);
}

std::vector<RawDocument> load_raw_documents(const std::filesystem::path& path,
                                            CorpusFormat format, bool strict_length) {
    std::vector<ParsedRecord> records = parse_file(path, format);
    validate_records(records, strict_length);

    std::vector<RawDocument> docs;
    docs.reserve(records.size());
    for (auto& rec : records) docs.push_back(std::move(rec.doc));
    return docs;
}

std::string_view to_string(SplitMode mode) {
    return mode == SplitMode::in_order ? "in_order" : "shuffled";
}

SplitMode split_mode_from_string(std::string_view name) {
    if (name == "in_order") return SplitMode::in_order;
    if (name == "shuffled") return SplitMode::shuffled;
    throw Error("unknown split mode: " + std::string(name));
}

std::size_t split_known_size(std::size_t doc_count, double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw Error("train_fraction must be in (0,1)");
    }
    // floor(f*N) in integer arithmetic over f rounded to 9 decimals, so that
    // decimal fractions behave exactly (0.7 * 10 == 7).
    constexpr std::uint64_t kScale = 1'000'000'000ULL;
    auto numerator = static_cast<std::uint64_t>(std::llround(train_fraction * kScale));
    auto product = static_cast<unsigned __int128>(numerator) * doc_count;
    return static_cast<std::size_t>(product / kScale);
}

SplitCorpus split_corpus(const Corpus& corpus, double train_fraction,
                         std::uint64_t seed, SplitMode mode) {
    SplitCorpus split;
    split.authors = corpus.authors;
    split.train_fraction = train_fraction;
    split.seed = seed;
    split.mode = mode;

    for (const auto& author : corpus.authors) {
        const auto& docs = corpus.docs(author);
        std::size_t known_size = split_known_size(docs.size(), train_fraction);
        if (known_size == 0 || known_size == docs.size()) {
            throw Error("degenerate split for author " + author + ": " +
                        std::to_string(known_size) + " of " +
                        std::to_string(docs.size()) + " documents would be known");
        }

        std::vector<std::size_t> order(docs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        if (mode == SplitMode::shuffled) {
            // Sub-seed per author id, not per position: the same author gets
            // the same split regardless of which corpus subset it is part of.
            Rng rng(mix_seed(seed, author));
            rng.shuffle(order);
        }

        auto& known = split.known[author];
        auto& unknown = split.unknown[author];
        for (std::size_t i = 0; i < order.size(); ++i) {
            (i < known_size ? known : unknown).push_back(docs[order[i]]);
        }
    }
    return split;
}

std::string SplitCorpus::to_json() const {
    nlohmann::ordered_json root;
    root["train_fraction"] = train_fraction;
    root["seed"] = seed;
    root["mode"] = to_string(mode);
    for (const char* side : {"known", "unknown"}) {
        const auto& groups = side == std::string_view("known") ? known : unknown;
        auto& out = root[side] = nlohmann::ordered_json::object();
        for (const auto& author : authors) {
            auto it = groups.find(author);
            if (it == groups.end()) continue;
            auto& list = out[author] = nlohmann::ordered_json::array();
            for (const auto& doc : it->second) {
                list.push_back({{"doc_id", doc.doc_id},
                                {"author_id", doc.author_id},
                                {"clean_text", doc.clean_text},
                                {"removed_counts",
                                 {{"mentions", doc.removed.mentions},
                                  {"hashtags", doc.removed.hashtags},
                                  {"urls", doc.removed.urls}}}});
            }
        }
    }
    return root.dump(2) + "\n";
}

}  // namespace stylo
