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

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "stylo/error.hpp"
#include "stylo/stylometry.hpp"
#include "test_support.hpp"

using namespace stylo;

namespace {

CleanDocument doc(std::string text, RemovedCounts removed = {}) {
    static int counter = 0;
    return CleanDocument{"d" + std::to_string(++counter), "a", std::move(text),
                         removed};
}

// Catalog indices, named so expectations below stay readable.
constexpr std::size_t kUppercase = 0;
constexpr std::size_t kDigit = 1;
constexpr std::size_t kSpecial = 2;
constexpr std::size_t kWhitespace = 3;
constexpr std::size_t kAvgWordLen = 4;
constexpr std::size_t kTypeToken = 5;
constexpr std::size_t kHapax = 6;
constexpr std::size_t kWordsPerSentence = 7;

}  // namespace

TEST_CASE("sentence counting") {
    CHECK(count_sentences("") == 0);
    CHECK(count_sentences("   ") == 0);
    CHECK(count_sentences("Hi") == 1);            // trailing content counts
    CHECK(count_sentences("Hi.") == 1);
    CHECK(count_sentences("Hi.   ") == 1);
    CHECK(count_sentences("Hi. Bye") == 2);
    CHECK(count_sentences("A. B! C?") == 3);
    CHECK(count_sentences("Wow!!!") == 1);        // a run closes one sentence
    CHECK(count_sentences("Really?! Yes.") == 2);
    CHECK(count_sentences("a.b.") == 2);
    CHECK(count_sentences("...") == 1);
}

TEST_CASE("uppercase ratio over a two-character document") {
    StyloVector vec = lexical_features({doc("Ab")});
    CHECK(vec.kind == StyloKind::lexical);
    REQUIRE(vec.values.size() == kLexicalCatalog.size());
    CHECK(vec.values[kUppercase] == 0.5);
}

TEST_CASE("single-word document statistics") {
    StyloVector vec = lexical_features({doc("aaaa")});
    CHECK(vec.values[kAvgWordLen] == 4.0);
    CHECK(vec.values[kTypeToken] == 1.0);
    CHECK(vec.values[kHapax] == 1.0);
    CHECK(vec.values[kUppercase] == 0.0);
    CHECK(vec.values[kWhitespace] == 0.0);
}

TEST_CASE("type-token and hapax ratios over repeated tokens") {
    // Tokens a, a, b: 2 distinct of 3 total; one type occurs exactly once.
    StyloVector vec = lexical_features({doc("a a b")});
    CHECK(vec.values[kTypeToken] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(vec.values[kHapax] == 0.5);
}

TEST_CASE("character class ratios") {
    // Scalars: 'A' 'b' '1' ' ' 'c' '.' -> 6 total, 1 uppercase, 1 digit,
    // 1 whitespace, 1 special ('.').
    StyloVector vec = lexical_features({doc("Ab1 c.")});
    CHECK(vec.values[kUppercase] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(vec.values[kDigit] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(vec.values[kWhitespace] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(vec.values[kSpecial] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("words per sentence pools across documents") {
    // 4 tokens over 2 sentences in one doc plus 2 tokens in 1 sentence.
    StyloVector vec =
        lexical_features({doc("one two. three four!"), doc("five six")});
    CHECK(vec.values[kWordsPerSentence] == 2.0);
}

TEST_CASE("lexical features pool all documents") {
    // "AB" + "cd" pooled: 4 scalars, 2 uppercase.
    StyloVector vec = lexical_features({doc("AB"), doc("cd")});
    CHECK(vec.values[kUppercase] == 0.5);

    // Empty documents contribute nothing but are tolerated.
    StyloVector with_empty = lexical_features({doc(""), doc("AB"), doc("cd")});
    CHECK(with_empty.values == vec.values);
}

TEST_CASE("lexical features error when every document is empty") {
    CHECK_THROWS_AS(lexical_features({doc(""), doc("")}), Error);
    CHECK_THROWS_AS(lexical_features({}), Error);
}

TEST_CASE("structural features are per-document averages") {
    std::vector<CleanDocument> docs = {
        doc("ab cd", RemovedCounts{1, 0, 0}),  // 5 scalars, 2 words, 1 sentence
        doc("x", RemovedCounts{0, 2, 1}),      // 1 scalar, 1 word, 1 sentence
    };
    StyloVector vec = structural_features(docs);
    CHECK(vec.kind == StyloKind::structural);
    REQUIRE(vec.values.size() == kStructuralCatalog.size());
    CHECK(vec.values[0] == 3.0);   // avg chars
    CHECK(vec.values[1] == 1.5);   // avg words
    CHECK(vec.values[2] == 1.0);   // avg sentences
    CHECK(vec.values[3] == 0.5);   // avg mentions
    CHECK(vec.values[4] == 1.0);   // avg hashtags
    CHECK(vec.values[5] == 0.5);   // avg urls
}

TEST_CASE("structural features count scalars, not bytes") {
    StyloVector vec = structural_features({doc("\U0001F600\U0001F600")});
    CHECK(vec.values[0] == 2.0);
}

TEST_CASE("structural features accept empty texts but not empty lists") {
    StyloVector vec = structural_features({doc("", RemovedCounts{3, 0, 1})});
    CHECK(vec.values[0] == 0.0);
    CHECK(vec.values[3] == 3.0);
    CHECK(vec.values[5] == 1.0);
    CHECK_THROWS_AS(structural_features({}), Error);
}

TEST_CASE("idiosyncratic classification") {
    std::set<std::string> dict = {"the", "quick", "brown", "fox", "a", "i"};
    std::set<std::string> slang = {"lol"};

    IdiosyncrasySet set = idiosyncratic_features(
        {doc("Teh quick brwn fox lol 123 b2 I a")}, dict, slang);
    CHECK(set.misspelt == std::set<std::string>{"teh", "brwn"});
    CHECK(set.slang == std::set<std::string>{"lol"});
}

TEST_CASE("idiosyncratic rules") {
    std::set<std::string> dict = {"word", "lol"};
    std::set<std::string> slang = {"lol"};

    SUBCASE("slang wins over the dictionary") {
        IdiosyncrasySet set = idiosyncratic_features({doc("lol word")}, dict, slang);
        CHECK(set.slang == std::set<std::string>{"lol"});
        CHECK(set.misspelt.empty());
    }
    SUBCASE("single letters and non-alphabetic tokens are skipped") {
        IdiosyncrasySet set =
            idiosyncratic_features({doc("x 9 a1 :-) word")}, dict, slang);
        CHECK(set.misspelt.empty());
        CHECK(set.slang.empty());
    }
    SUBCASE("case folds before lookup") {
        IdiosyncrasySet set = idiosyncratic_features({doc("WORD LOL ZZZZ")}, dict, slang);
        CHECK(set.slang == std::set<std::string>{"lol"});
        CHECK(set.misspelt == std::set<std::string>{"zzzz"});
    }
    SUBCASE("accented letters count as letters") {
        IdiosyncrasySet set = idiosyncratic_features({doc("cafés word")}, dict, slang);
        CHECK(set.misspelt == std::set<std::string>{"cafés"});
    }
    SUBCASE("empty dictionary is an error") {
        CHECK_THROWS_AS(idiosyncratic_features({doc("word")}, {}, slang), Error);
    }
    SUBCASE("empty slang lexicon is fine") {
        IdiosyncrasySet set = idiosyncratic_features({doc("word zzzz")}, dict, {});
        CHECK(set.misspelt == std::set<std::string>{"zzzz"});
        CHECK(set.slang.empty());
    }
}

TEST_CASE("min-max normalization against the candidate set") {
    auto lex = [](std::vector<double> values) {
        return StyloVector{StyloKind::lexical, std::move(values)};
    };
    // The catalogs are longer, but normalization only requires consistent
    // dimensionality, so two-dimensional vectors keep the math readable.
    std::vector<StyloVector> profiles = {lex({0, 10}), lex({5, 20}), lex({10, 30})};
    StyloVector query = lex({5, 40});

    auto [scaled, scaled_query] = normalize_features(profiles, query);
    CHECK(scaled[0].values == std::vector<double>{0.0, 0.0});
    CHECK(scaled[1].values == std::vector<double>{0.5, 0.5});
    CHECK(scaled[2].values == std::vector<double>{1.0, 1.0});
    CHECK(scaled_query.values[0] == 0.5);
    CHECK(scaled_query.values[1] == 1.0);  // 40 is above the fit range: clipped
}

TEST_CASE("normalization maps constant dimensions to zero") {
    auto lex = [](std::vector<double> values) {
        return StyloVector{StyloKind::lexical, std::move(values)};
    };
    std::vector<StyloVector> profiles = {lex({3, 1}), lex({3, 2})};
    auto [scaled, query] = normalize_features(profiles, lex({99, 1.5}));
    CHECK(scaled[0].values[0] == 0.0);
    CHECK(scaled[1].values[0] == 0.0);
    CHECK(query.values[0] == 0.0);
    CHECK(query.values[1] == 0.5);
}

TEST_CASE("normalization clips the query below the range too") {
    auto lex = [](std::vector<double> values) {
        return StyloVector{StyloKind::lexical, std::move(values)};
    };
    auto [_, query] = normalize_features({lex({10}), lex({20})}, lex({-5}));
    CHECK(query.values[0] == 0.0);
}

TEST_CASE("normalization validates its inputs") {
    auto lex = [](std::vector<double> values) {
        return StyloVector{StyloKind::lexical, std::move(values)};
    };
    StyloVector structural{StyloKind::structural, {1.0}};
    CHECK_THROWS_AS(normalize_features({lex({1})}, lex({1})), Error);  // < 2 profiles
    CHECK_THROWS_AS(normalize_features({lex({1}), structural}, lex({1})), Error);
    CHECK_THROWS_AS(normalize_features({lex({1}), lex({1, 2})}, lex({1})), Error);
    CHECK_THROWS_AS(normalize_features({lex({1}), lex({2})}, lex({1, 2})), Error);
}

TEST_CASE("lexicon parsing") {
    std::set<std::string> words =
        parse_lexicon("apple\nbanana\r\n\n  cherry  \napple\n");
    CHECK(words == std::set<std::string>{"apple", "banana", "cherry"});
    CHECK(parse_lexicon("").empty());
    CHECK(parse_lexicon("\n\n").empty());
}

TEST_CASE("lexicon loading from disk") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "stylo_lexicon_test.txt";
    {
        std::ofstream out(path, std::ios::binary);
        out << "left\nright\n";
    }
    CHECK(load_lexicon(path) == std::set<std::string>{"left", "right"});
    fs::remove(path);
    CHECK_THROWS_AS(load_lexicon(path), Error);
}

TEST_CASE("stylo kind names round trip") {
    CHECK(to_string(StyloKind::lexical) == "lexical");
    CHECK(to_string(StyloKind::structural) == "structural");
    CHECK(stylo_kind_from_string("lexical") == StyloKind::lexical);
    CHECK(stylo_kind_from_string("structural") == StyloKind::structural);
    CHECK_THROWS_AS(stylo_kind_from_string("syntactic"), Error);
}
