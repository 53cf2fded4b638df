#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "scitweet/corpus.hpp"

#include "support.hpp"

using namespace scitweet;
using testsupport::TempDir;

TEST_CASE("load_corpus reads records in file order") {
    TempDir dir;
    testsupport::write_file(dir.file("c.jsonl"),
                            R"({"id":"t1","text":"first"})"
                            "\n"
                            R"({"id":"t2","text":"second","doi":"10.1/a"})"
                            "\n"
                            R"({"id":"t3","text":"third","gold":"positive"})"
                            "\n");
    const Corpus corpus = load_corpus(dir.file("c.jsonl"));
    REQUIRE(corpus.size() == 3);
    CHECK(corpus.tweets()[0].id == "t1");
    CHECK(corpus.tweets()[1].id == "t2");
    CHECK(corpus.tweets()[2].id == "t3");
    CHECK(corpus.tweets()[1].doi == "10.1/a");
    CHECK_FALSE(corpus.tweets()[0].gold.has_value());
    CHECK(corpus.tweets()[2].gold == SentimentLabel::positive);
}

TEST_CASE("load_corpus handles the empty file") {
    TempDir dir;
    testsupport::write_file(dir.file("empty.jsonl"), "");
    CHECK(load_corpus(dir.file("empty.jsonl")).empty());
}

TEST_CASE("load_corpus rejects unknown gold labels with the line number") {
    TempDir dir;
    testsupport::write_file(dir.file("bad.jsonl"),
                            R"({"id":"t1","text":"ok","gold":"neutral"})"
                            "\n"
                            R"({"id":"t2","text":"typo","gold":"positve"})"
                            "\n");
    CHECK_THROWS_MATCHES(load_corpus(dir.file("bad.jsonl")), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("bad.jsonl:2") &&
                             Catch::Matchers::ContainsSubstring("positve")));
}

TEST_CASE("load_corpus rejects duplicate ids by name") {
    TempDir dir;
    testsupport::write_file(dir.file("dup.jsonl"),
                            R"({"id":"t9","text":"a"})"
                            "\n"
                            R"({"id":"t9","text":"b"})"
                            "\n");
    CHECK_THROWS_MATCHES(load_corpus(dir.file("dup.jsonl")), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("t9")));
}

TEST_CASE("load_corpus reports malformed lines") {
    TempDir dir;
    testsupport::write_file(dir.file("bad.jsonl"), "{\"id\":\"t1\",\"text\":\"ok\"}\nnot json\n");
    CHECK_THROWS_MATCHES(load_corpus(dir.file("bad.jsonl")), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("bad.jsonl:2")));
    testsupport::write_file(dir.file("noid.jsonl"), "{\"text\":\"ok\"}\n");
    CHECK_THROWS_AS(load_corpus(dir.file("noid.jsonl")), ValidationError);
    testsupport::write_file(dir.file("notobj.jsonl"), "[1,2]\n");
    CHECK_THROWS_AS(load_corpus(dir.file("notobj.jsonl")), ValidationError);
}

TEST_CASE("save then load round-trips the corpus") {
    TempDir dir;
    Corpus corpus(std::vector<Tweet>{
        {"t1", "plain text", std::nullopt, std::nullopt, std::nullopt},
        {"t2", "with gold", "10.1/x", SentimentLabel::negative, std::nullopt},
        {"t3", "Emoji \xF0\x9F\xA7\xAA and caf\xC3\xA9 \"quoted\" back\\slash", "10.2/y",
         SentimentLabel::neutral, std::string("A Title")},
    });
    save_corpus(corpus, dir.file("out.jsonl"));
    CHECK(load_corpus(dir.file("out.jsonl")) == corpus);
}

TEST_CASE("save omits absent optional fields") {
    Corpus corpus(std::vector<Tweet>{{"t1", "no extras", std::nullopt, std::nullopt, std::nullopt}});
    const std::string serialized = serialize_corpus(corpus);
    CHECK(serialized.find("gold") == std::string::npos);
    CHECK(serialized.find("doi") == std::string::npos);
    CHECK(serialized.find("title") == std::string::npos);
}

TEST_CASE("canonical corpus files survive save(load(...)) byte-exactly") {
    TempDir dir;
    Corpus corpus(std::vector<Tweet>{
        {"a", "text \xE2\x9C\x93", "10.1/z", SentimentLabel::positive, std::string("T")},
        {"b", "tab\tand newline\n", std::nullopt, std::nullopt, std::nullopt},
    });
    save_corpus(corpus, dir.file("c.jsonl"));
    const std::string first = testsupport::read_file(dir.file("c.jsonl"));
    save_corpus(load_corpus(dir.file("c.jsonl")), dir.file("c2.jsonl"));
    CHECK(testsupport::read_file(dir.file("c2.jsonl")) == first);
}

TEST_CASE("round-trip holds for randomized corpora") {
    std::mt19937 rng(20260809);
    const std::vector<std::string> pieces = {
        "word", "caf\xC3\xA9", "\xF0\x9F\x94\xAC", "\"", "\\", "\n", "\t", " ", "#tag", "@who",
        "http://t.co/x", "10.1234/ab.cd", "'", "{", "}",
    };
    std::uniform_int_distribution<std::size_t> piece(0, pieces.size() - 1);
    std::uniform_int_distribution<int> count(0, 12);
    std::uniform_int_distribution<int> coin(0, 1);
    TempDir dir;
    for (int round = 0; round < 50; ++round) {
        std::vector<Tweet> tweets;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            Tweet tweet;
            tweet.id = "id" + std::to_string(i);
            for (int k = count(rng); k > 0; --k) tweet.text += pieces[piece(rng)];
            if (coin(rng)) tweet.doi = "10." + std::to_string(i) + "/x";
            if (coin(rng)) tweet.gold = all_labels[static_cast<std::size_t>(count(rng)) % 3];
            if (coin(rng)) tweet.title = pieces[piece(rng)];
            tweets.push_back(std::move(tweet));
        }
        Corpus corpus(std::move(tweets));
        save_corpus(corpus, dir.file("r.jsonl"));
        REQUIRE(load_corpus(dir.file("r.jsonl")) == corpus);
    }
}

TEST_CASE("class_shares reproduces the reference distributions") {
    std::vector<SentimentLabel> labels;
    labels.insert(labels.end(), 43, SentimentLabel::positive);
    labels.insert(labels.end(), 9, SentimentLabel::negative);
    labels.insert(labels.end(), 948, SentimentLabel::neutral);
    ClassShares shares = class_shares(labels);
    CHECK(shares.positive == Catch::Approx(4.3));
    CHECK(shares.negative == Catch::Approx(0.9));
    CHECK(shares.neutral == Catch::Approx(94.8));

    labels.clear();
    labels.insert(labels.end(), 41, SentimentLabel::positive);
    labels.insert(labels.end(), 6, SentimentLabel::negative);
    labels.insert(labels.end(), 953, SentimentLabel::neutral);
    shares = class_shares(labels);
    CHECK(shares.positive == Catch::Approx(4.1));
    CHECK(shares.negative == Catch::Approx(0.6));
    CHECK(shares.neutral == Catch::Approx(95.3));
}

TEST_CASE("class_shares covers the degenerate distribution and empty input") {
    const std::vector<SentimentLabel> all_neutral(7, SentimentLabel::neutral);
    const ClassShares shares = class_shares(all_neutral);
    CHECK(shares.positive == 0.0);
    CHECK(shares.negative == 0.0);
    CHECK(shares.neutral == 100.0);
    CHECK_THROWS_MATCHES(class_shares({}), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("no labels")));
}

TEST_CASE("class_shares sums to 100 within one-decimal rounding slack") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> size(1, 2000);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int round = 0; round < 500; ++round) {
        std::vector<SentimentLabel> labels;
        const int n = size(rng);
        labels.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) labels.push_back(all_labels[pick(rng)]);
        const ClassShares shares = class_shares(labels);
        const double exact = shares.positive + shares.negative + shares.neutral;
        CHECK(exact == Catch::Approx(100.0).margin(1e-9));
        const double rounded = round_to_decimals(shares.positive, 1) +
                               round_to_decimals(shares.negative, 1) +
                               round_to_decimals(shares.neutral, 1);
        CHECK(std::abs(rounded - 100.0) <= 0.11);
    }
}

TEST_CASE("the parser throws cleanly on arbitrary junk, never crashes") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> length(0, 200);
    for (int round = 0; round < 300; ++round) {
        std::string junk;
        for (int i = length(rng); i > 0; --i) junk.push_back(static_cast<char>(byte(rng)));
        try {
            parse_corpus(junk, "junk");
        } catch (const ValidationError&) {
            // expected for almost every input
        }
    }
}

TEST_CASE("corpus construction enforces unique non-empty ids") {
    CHECK_THROWS_AS(Corpus(std::vector<Tweet>{{"", "x", {}, {}, {}}}), ValidationError);
    CHECK_THROWS_AS(Corpus(std::vector<Tweet>{{"a", "x", {}, {}, {}}, {"a", "y", {}, {}, {}}}),
                    ValidationError);
}
