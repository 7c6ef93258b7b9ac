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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "preprocess_fixtures.hpp"
#include "stylo/corpus.hpp"
#include "stylo/error.hpp"
#include "stylo/rng.hpp"
#include "stylo/unicode.hpp"
#include "test_support.hpp"

using namespace stylo;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& content, const char* ext = ".jsonl") {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("stylo_corpus_test_" + std::to_string(++counter) + ext);
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

std::string jsonl_line(const std::string& id, const std::string& author,
                       const std::string& text) {
    nlohmann::ordered_json j{{"id", id}, {"author", author}, {"text", text}};
    return j.dump() + "\n";
}

}  // namespace

TEST_CASE("preprocess golden fixtures") {
    for (const auto& fx : test::preprocess_fixtures()) {
        CAPTURE(fx.input);
        PreprocessResult got = preprocess(fx.input);
        CHECK(got.clean_text == fx.clean);
        CHECK(got.removed.mentions == fx.mentions);
        CHECK(got.removed.hashtags == fx.hashtags);
        CHECK(got.removed.urls == fx.urls);
    }
}

TEST_CASE("preprocess is idempotent on every fixture") {
    for (const auto& fx : test::preprocess_fixtures()) {
        CAPTURE(fx.input);
        PreprocessResult again = preprocess(preprocess(fx.input).clean_text);
        CHECK(again.clean_text == preprocess(fx.input).clean_text);
        CHECK(again.removed == RemovedCounts{});
    }
}

TEST_CASE("preprocess is idempotent on adversarial random text") {
    // Texts stitched from marker-heavy snippets so removals regularly expose
    // new matches.
    const std::vector<std::string> snippets = {
        "@",     "#",      "http://", "https://", "a",  "bc", "_",  "1",
        " ",     "\t",     "é",  "\U0001F600", ".", "!",  "@x", "#y",
        "t.co/", "HtTp://"};
    Rng rng(2024);
    for (int i = 0; i < 3000; ++i) {
        std::string text;
        std::size_t pieces = 1 + rng.next_below(8);
        for (std::size_t k = 0; k < pieces; ++k) {
            text += snippets[rng.next_below(snippets.size())];
        }
        CAPTURE(text);
        PreprocessResult first = preprocess(text);
        PreprocessResult second = preprocess(first.clean_text);
        CHECK(second.clean_text == first.clean_text);
        CHECK(second.removed == RemovedCounts{});
    }
}

TEST_CASE("jsonl corpus loads in first-appearance order") {
    std::string content;
    content += jsonl_line("d1", "a1", "first text one");
    content += jsonl_line("d2", "a2", "second author text");
    content += jsonl_line("d3", "a1", "more from one");
    content += jsonl_line("d4", "a2", "more from two");
    content += jsonl_line("d5", "a1", "third from one");
    content += jsonl_line("d6", "a2", "third from two");
    TempFile file(content);

    Corpus corpus = load_corpus(file.path, CorpusFormat::jsonl);
    CHECK(corpus.authors == std::vector<std::string>{"a1", "a2"});
    CHECK(corpus.total_documents() == 6);
    REQUIRE(corpus.docs("a1").size() == 3);
    CHECK(corpus.docs("a1")[0].doc_id == "d1");
    CHECK(corpus.docs("a1")[1].doc_id == "d3");
    CHECK(corpus.docs("a1")[2].doc_id == "d5");
    CHECK(corpus.docs("a1")[0].clean_text == "first text one");
    CHECK_THROWS_AS(corpus.docs("missing"), Error);
}

TEST_CASE("jsonl texts are preprocessed with counts") {
    std::string content;
    content += jsonl_line("d1", "a", "hi @bob see #fun http://t.co/x");
    content += jsonl_line("d2", "a", "plain");
    TempFile file(content);

    Corpus corpus = load_corpus(file.path, CorpusFormat::jsonl);
    const CleanDocument& doc = corpus.docs("a")[0];
    CHECK(doc.clean_text == "hi see");
    CHECK(doc.removed == RemovedCounts{1, 1, 1});
}

TEST_CASE("jsonl error reporting cites the line") {
    SUBCASE("missing text field") {
        std::string content;
        content += jsonl_line("d1", "a", "one fine text");
        content += jsonl_line("d2", "a", "two fine texts");
        content += jsonl_line("d3", "b", "three fine texts");
        content += jsonl_line("d4", "b", "four fine texts");
        content += "{\"id\":\"d5\",\"author\":\"b\"}\n";
        TempFile file(content);
        CHECK_THROWS_WITH_AS(load_corpus(file.path, CorpusFormat::jsonl),
                             doctest::Contains("line 5"), Error);
    }
    SUBCASE("malformed json") {
        std::string content = jsonl_line("d1", "a", "x y z");
        content += "{not json\n";
        TempFile file(content);
        CHECK_THROWS_WITH_AS(load_corpus(file.path, CorpusFormat::jsonl),
                             doctest::Contains("line 2"), Error);
    }
    SUBCASE("non-string field") {
        std::string content = "{\"id\":7,\"author\":\"a\",\"text\":\"x\"}\n";
        TempFile file(content);
        CHECK_THROWS_WITH_AS(load_corpus(file.path, CorpusFormat::jsonl),
                             doctest::Contains("line 1"), Error);
    }
}

TEST_CASE("jsonl tolerates blank lines and CRLF") {
    std::string content;
    content += jsonl_line("d1", "a", "one two");
    content.insert(content.size() - 1, "\r");  // CRLF line ending
    content += "\n";
    content += jsonl_line("d2", "a", "three four");
    TempFile file(content);
    Corpus corpus = load_corpus(file.path, CorpusFormat::jsonl);
    CHECK(corpus.total_documents() == 2);
    CHECK(corpus.docs("a")[0].clean_text == "one two");
}

TEST_CASE("corpus-wide validation") {
    SUBCASE("empty file") {
        TempFile file("");
        CHECK_THROWS_AS(load_corpus(file.path, CorpusFormat::jsonl), Error);
    }
    SUBCASE("author with fewer than 2 documents") {
        std::string content;
        content += jsonl_line("d1", "solo", "only text");
        content += jsonl_line("d2", "pair", "first");
        content += jsonl_line("d3", "pair", "second");
        TempFile file(content);
        CHECK_THROWS_WITH_AS(load_corpus(file.path, CorpusFormat::jsonl),
                             doctest::Contains("solo"), Error);
    }
    SUBCASE("empty text") {
        std::string content = jsonl_line("d1", "a", "");
        TempFile file(content);
        CHECK_THROWS_AS(load_corpus(file.path, CorpusFormat::jsonl), Error);
    }
    SUBCASE("empty id or author") {
        TempFile f1(jsonl_line("", "a", "x") + jsonl_line("d2", "a", "y"));
        CHECK_THROWS_AS(load_corpus(f1.path, CorpusFormat::jsonl), Error);
        TempFile f2(jsonl_line("d1", "", "x") + jsonl_line("d2", "", "y"));
        CHECK_THROWS_AS(load_corpus(f2.path, CorpusFormat::jsonl), Error);
    }
}

TEST_CASE("texts are NFC-normalized at ingestion") {
    // e + combining acute in the input; the stored text is the composed form.
    std::string content;
    content += jsonl_line("d1", "a", "café");
    content += jsonl_line("d2", "a", "plain");
    TempFile file(content);
    Corpus corpus = load_corpus(file.path, CorpusFormat::jsonl);
    CHECK(corpus.docs("a")[0].clean_text == "café");
}

TEST_CASE("strict length counts scalar values") {
    std::string exactly280(280, 'x');
    std::string over(281, 'x');
    std::string content =
        jsonl_line("d1", "a", exactly280) + jsonl_line("d2", "a", over);
    TempFile file(content);

    // Lenient mode accepts both; strict mode rejects the 281-scalar text.
    CHECK(load_corpus(file.path, CorpusFormat::jsonl).total_documents() == 2);
    CHECK_THROWS_WITH_AS(load_corpus(file.path, CorpusFormat::jsonl, true),
                         doctest::Contains("line 2"), Error);

    // 300 characters in a single text always fails strict validation.
    std::string content300 =
        jsonl_line("d1", "a", std::string(300, 'y')) + jsonl_line("d2", "a", "ok");
    TempFile file300(content300);
    CHECK_THROWS_AS(load_corpus(file300.path, CorpusFormat::jsonl, true), Error);

    // Multi-byte scalars count once each: 280 emoji pass strict validation.
    std::string emoji;
    for (int i = 0; i < 280; ++i) emoji += "\U0001F600";
    TempFile femoji(jsonl_line("d1", "a", emoji) + jsonl_line("d2", "a", "ok"));
    CHECK(load_corpus(femoji.path, CorpusFormat::jsonl, true).total_documents() == 2);
}

TEST_CASE("csv parsing follows RFC-4180") {
    std::string content =
        "id,author,text,created_at\n"
        "d1,a,\"comma, inside\",2026-01-02T03:04:05Z\n"
        "d2,a,\"quote \"\" inside\",\n"
        "d3,b,\"line\nbreak\",\n"
        "d4,b,plain,\n";
    TempFile file(content, ".csv");

    Corpus corpus = load_corpus(file.path, CorpusFormat::csv);
    CHECK(corpus.authors == std::vector<std::string>{"a", "b"});
    CHECK(corpus.docs("a")[0].clean_text == "comma, inside");
    CHECK(corpus.docs("a")[1].clean_text == "quote \" inside");
    CHECK(corpus.docs("b")[0].clean_text == "line break");  // newline collapses
    CHECK(corpus.docs("b")[1].clean_text == "plain");
}

TEST_CASE("csv error reporting") {
    SUBCASE("wrong header") {
        TempFile file("id,user,text,created_at\nd1,a,x,\n", ".csv");
        CHECK_THROWS_AS(load_corpus(file.path, CorpusFormat::csv), Error);
    }
    SUBCASE("wrong field count") {
        TempFile file("id,author,text,created_at\nd1,a,x\nd2,a,y\n", ".csv");
        CHECK_THROWS_WITH_AS(load_corpus(file.path, CorpusFormat::csv),
                             doctest::Contains("line 2"), Error);
    }
    SUBCASE("unterminated quote") {
        TempFile file("id,author,text,created_at\nd1,a,\"open,\n", ".csv");
        CHECK_THROWS_AS(load_corpus(file.path, CorpusFormat::csv), Error);
    }
    SUBCASE("stray quote") {
        TempFile file("id,author,text,created_at\nd1,a,br\"oken,\nd2,a,y,\n", ".csv");
        CHECK_THROWS_AS(load_corpus(file.path, CorpusFormat::csv), Error);
    }
}

TEST_CASE("load_raw_documents keeps raw text in file order") {
    std::string content;
    content += jsonl_line("d1", "a", "hi @bob there");
    content += jsonl_line("d2", "b", "café stop");
    content += jsonl_line("d3", "a", "more");
    content += jsonl_line("d4", "b", "words");
    TempFile file(content);

    std::vector<RawDocument> docs = load_raw_documents(file.path, CorpusFormat::jsonl);
    REQUIRE(docs.size() == 4);
    CHECK(docs[0].doc_id == "d1");
    CHECK(docs[0].text == "hi @bob there");      // mention kept
    CHECK(docs[1].text == "café stop");     // but NFC applied
    CHECK(docs[2].doc_id == "d3");
    CHECK(docs[3].author_id == "b");
}

TEST_CASE("corpus_from_raw applies the same validation") {
    std::vector<RawDocument> ok = test::docs_for({{"a", {"one x", "two y"}}});
    CHECK(corpus_from_raw(ok).total_documents() == 2);

    std::vector<RawDocument> solo = test::docs_for({{"a", {"only"}}});
    CHECK_THROWS_AS(corpus_from_raw(solo), Error);
}

TEST_CASE("split known sizes follow the floor rule exactly") {
    CHECK(split_known_size(150, 0.7) == 105);
    CHECK(split_known_size(10, 0.7) == 7);  // the classic 0.7 * 10 != 6.999... case
    CHECK(split_known_size(2, 0.7) == 1);
    CHECK(split_known_size(3, 0.5) == 1);

    // Exact rational oracles: floor(p/q * n) computed in integers.
    struct Fraction { double f; std::uint64_t p, q; };
    for (const Fraction& fr :
         {Fraction{0.7, 7, 10}, Fraction{0.5, 1, 2}, Fraction{0.25, 1, 4},
          Fraction{0.66, 33, 50}, Fraction{0.9, 9, 10}, Fraction{0.1, 1, 10}}) {
        for (std::size_t n = 2; n <= 500; ++n) {
            CAPTURE(fr.f);
            CAPTURE(n);
            CHECK(split_known_size(n, fr.f) == (fr.p * n) / fr.q);
        }
    }
}

TEST_CASE("in-order split takes the leading documents") {
    std::vector<std::string> texts;
    for (int i = 1; i <= 10; ++i) texts.push_back("text number " + std::to_string(i));
    Corpus corpus = corpus_from_raw(test::docs_for({{"a", texts}}));

    SplitCorpus split = split_corpus(corpus, 0.7, 0, SplitMode::in_order);
    REQUIRE(split.known.at("a").size() == 7);
    REQUIRE(split.unknown.at("a").size() == 3);
    for (int i = 0; i < 7; ++i) {
        CHECK(split.known.at("a")[i].doc_id == "a-" + std::to_string(i + 1));
    }
    for (int i = 0; i < 3; ++i) {
        CHECK(split.unknown.at("a")[i].doc_id == "a-" + std::to_string(i + 8));
    }
}

TEST_CASE("shuffled split is reproducible and partitions the documents") {
    std::vector<std::string> texts;
    for (int i = 1; i <= 20; ++i) texts.push_back("msg " + std::to_string(i) + " body");
    Corpus corpus = corpus_from_raw(
        test::docs_for({{"a", texts}, {"b", texts}}));

    SplitCorpus s1 = split_corpus(corpus, 0.7, 99, SplitMode::shuffled);
    SplitCorpus s2 = split_corpus(corpus, 0.7, 99, SplitMode::shuffled);
    SplitCorpus s3 = split_corpus(corpus, 0.7, 100, SplitMode::shuffled);

    auto ids = [](const std::vector<CleanDocument>& docs) {
        std::vector<std::string> out;
        for (const auto& d : docs) out.push_back(d.doc_id);
        return out;
    };

    CHECK(ids(s1.known.at("a")) == ids(s2.known.at("a")));
    CHECK(ids(s1.unknown.at("b")) == ids(s2.unknown.at("b")));
    CHECK(ids(s1.known.at("a")) != ids(s3.known.at("a")));
    CHECK(s1.to_json() == s2.to_json());

    // Partition: known and unknown are disjoint and cover all documents.
    std::vector<std::string> all = ids(s1.known.at("a"));
    for (const auto& id : ids(s1.unknown.at("a"))) all.push_back(id);
    std::sort(all.begin(), all.end());
    std::vector<std::string> expected = ids(corpus.docs("a"));
    std::sort(expected.begin(), expected.end());
    CHECK(all == expected);
    CHECK(s1.known.at("a").size() == 14);
}

TEST_CASE("split rejects degenerate configurations") {
    Corpus corpus = corpus_from_raw(test::docs_for({{"a", {"one x", "two y"}}}));
    // floor(0.3 * 2) = 0 known documents.
    CHECK_THROWS_AS(split_corpus(corpus, 0.3, 0, SplitMode::in_order), Error);
    CHECK_THROWS_AS(split_corpus(corpus, 0.0, 0, SplitMode::in_order), Error);
    CHECK_THROWS_AS(split_corpus(corpus, 1.0, 0, SplitMode::in_order), Error);
    CHECK_THROWS_AS(split_corpus(corpus, -0.1, 0, SplitMode::in_order), Error);
    CHECK(split_corpus(corpus, 0.7, 0, SplitMode::in_order).known.at("a").size() == 1);
}

TEST_CASE("split serialization carries the configuration") {
    Corpus corpus = corpus_from_raw(
        test::docs_for({{"a", {"hi @x one", "two words", "three full words"}}}));
    SplitCorpus split = split_corpus(corpus, 0.7, 5, SplitMode::shuffled);

    nlohmann::json j = nlohmann::json::parse(split.to_json());
    CHECK(j.at("train_fraction").get<double>() == 0.7);
    CHECK(j.at("seed").get<std::uint64_t>() == 5);
    CHECK(j.at("mode").get<std::string>() == "shuffled");
    CHECK(j.at("known").at("a").size() == 2);
    CHECK(j.at("unknown").at("a").size() == 1);
    const auto& doc = j.at("known").at("a")[0];
    CHECK(doc.contains("doc_id"));
    CHECK(doc.contains("clean_text"));
    CHECK(doc.at("removed_counts").contains("mentions"));
}

TEST_CASE("split mode names round trip") {
    CHECK(to_string(SplitMode::in_order) == "in_order");
    CHECK(to_string(SplitMode::shuffled) == "shuffled");
    CHECK(split_mode_from_string("in_order") == SplitMode::in_order);
    CHECK(split_mode_from_string("shuffled") == SplitMode::shuffled);
    CHECK_THROWS_AS(split_mode_from_string("sorted"), Error);
}
