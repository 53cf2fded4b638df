#include <catch2/catch_amalgamated.hpp>

#include "scitweet/pipeline.hpp"

#include "support.hpp"

using namespace scitweet;
using testsupport::TempDir;

namespace {

const std::filesystem::path data_dir = SCITWEET_DATA_DIR;

RunConfig fixture_config() { return load_run_config(data_dir / "run.toml"); }

void check_against_expected(const EvalReport& report, const nlohmann::json& expected) {
    CHECK(report.percent_agreement ==
          Catch::Approx(expected["percent_agreement"].get<double>()).margin(1e-9));
    CHECK(report.kappa == Catch::Approx(expected["kappa"].get<double>()).margin(1e-9));
    CHECK(report.band == expected["band"].get<std::string>());
    CHECK(report.shares_predicted.positive ==
          Catch::Approx(expected["shares_predicted"]["positive"].get<double>()).margin(1e-9));
    CHECK(report.shares_predicted.negative ==
          Catch::Approx(expected["shares_predicted"]["negative"].get<double>()).margin(1e-9));
    CHECK(report.shares_predicted.neutral ==
          Catch::Approx(expected["shares_predicted"]["neutral"].get<double>()).margin(1e-9));
    const auto check_recall = [&](const std::optional<double>& actual, const char* key) {
        const nlohmann::json& want = expected["per_class_recall"][key];
        if (want.is_null()) {
            CHECK_FALSE(actual.has_value());
        } else {
            REQUIRE(actual.has_value());
            CHECK(*actual == Catch::Approx(want.get<double>()).margin(1e-9));
        }
    };
    check_recall(report.recall.positive, "positive");
    check_recall(report.recall.negative, "negative");
    check_recall(report.recall.neutral, "neutral");
}

} // namespace

TEST_CASE("run_experiment reproduces the oracle values on the fixture") {
    const ExperimentReport report = run_experiment(fixture_config());
    const nlohmann::json expected =
        nlohmann::json::parse(testsupport::read_file(data_dir / "fixture_expected.json"));
    REQUIRE(report.rows.size() == 3);
    for (const ExperimentRow& row : report.rows) {
        const std::string name = to_string(row.condition);
        INFO("condition " << name);
        REQUIRE(expected["conditions"].contains(name));
        check_against_expected(row.report, expected["conditions"][name]);
        CHECK(row.report.n == expected["n"].get<long long>());
    }
    // The tweets without a DOI pass through and get flagged.
    CHECK(report.missing_title_ids == std::vector<std::string>{"e15", "e16", "e17"});
}

TEST_CASE("fixture agreement increases strictly along the pipeline") {
    const ExperimentReport report = run_experiment(fixture_config());
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].report.percent_agreement < report.rows[1].report.percent_agreement);
    CHECK(report.rows[1].report.percent_agreement < report.rows[2].report.percent_agreement);
    REQUIRE(report.rows[1].report.recall.negative.has_value());
    REQUIRE(report.rows[2].report.recall.negative.has_value());
    CHECK(*report.rows[2].report.recall.negative <= *report.rows[1].report.recall.negative);
}

TEST_CASE("run_experiment output is deterministic") {
    const std::string first = experiment_to_json(run_experiment(fixture_config())).dump(2);
    const std::string second = experiment_to_json(run_experiment(fixture_config())).dump(2);
    CHECK(first == second);
}

TEST_CASE("run_experiment equals the hand-chained pipeline") {
    const RunConfig config = fixture_config();
    const Corpus corpus = load_corpus(config.corpus_path);
    const Lexicon lexicon = load_lexicon(config.lexicon_path);
    const auto gold = gold_labels(corpus);

    const Corpus t0 = clean_corpus(corpus);
    std::map<std::string, std::string> no_titles;
    const Corpus ta = scrub_corpus(t0, no_titles).corpus; // inline titles drive scrubbing

    const auto report_for = [&](const Corpus& staged, const Lexicon& lex) {
        std::vector<std::pair<std::string, SentimentLabel>> predicted;
        for (const Prediction& p : score_corpus(staged, lex)) predicted.emplace_back(p.id, p.label);
        auto [g, p] = align_by_id(gold, predicted);
        return build_report(g, p);
    };

    const ExperimentReport experiment = run_experiment(config);
    CHECK(report_for(t0, lexicon) == experiment.rows[0].report);
    CHECK(report_for(ta, lexicon) == experiment.rows[1].report);
    CHECK(report_for(ta, apply_patch(lexicon, load_patch(*config.patch_path))) ==
          experiment.rows[2].report);
}

TEST_CASE("run_experiment validates its configuration") {
    RunConfig config = fixture_config();
    config.conditions.clear();
    CHECK_THROWS_MATCHES(run_experiment(config), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("no conditions")));

    RunConfig no_patch = fixture_config();
    no_patch.patch_path.reset();
    CHECK_THROWS_AS(run_experiment(no_patch), ValidationError);
}

TEST_CASE("run_experiment insists on gold labels and names offenders") {
    TempDir dir;
    testsupport::write_file(dir.file("c.jsonl"),
                            "{\"id\":\"g1\",\"text\":\"x\",\"gold\":\"neutral\"}\n"
                            "{\"id\":\"g2\",\"text\":\"y\"}\n");
    testsupport::write_file(dir.file("lex.tsv"), "good\t3\n");
    RunConfig config;
    config.corpus_path = dir.file("c.jsonl");
    config.lexicon_path = dir.file("lex.tsv");
    config.conditions = {parse_condition("t0:pair")};
    CHECK_THROWS_MATCHES(run_experiment(config), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("g2")));
}

TEST_CASE("ta conditions fail on unresolved titles unless explicitly allowed") {
    TempDir dir;
    testsupport::write_file(dir.file("c.jsonl"),
                            "{\"id\":\"t1\",\"text\":\"plain words\",\"gold\":\"neutral\"}\n"
                            "{\"id\":\"t2\",\"text\":\"good stuff\",\"gold\":\"positive\","
                            "\"doi\":\"10.1/t2\",\"title\":\"Unrelated Title\"}\n");
    testsupport::write_file(dir.file("lex.tsv"), "good\t3\n");
    RunConfig config;
    config.corpus_path = dir.file("c.jsonl");
    config.lexicon_path = dir.file("lex.tsv");
    config.conditions = {parse_condition("ta:pair")};
    config.meta_cache = dir.file("cache");
    CHECK_THROWS_MATCHES(run_experiment(config), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("t1")));
    config.allow_missing_titles = true;
    const ExperimentReport report = run_experiment(config);
    CHECK(report.missing_title_ids == std::vector<std::string>{"t1"});
    CHECK(report.rows[0].report.percent_agreement == 100.0);
}

TEST_CASE("scale conditions read the external scores file") {
    TempDir dir;
    testsupport::write_file(dir.file("c.jsonl"),
                            "{\"id\":\"s1\",\"text\":\"a\",\"gold\":\"negative\"}\n"
                            "{\"id\":\"s2\",\"text\":\"b\",\"gold\":\"neutral\"}\n"
                            "{\"id\":\"s3\",\"text\":\"c\",\"gold\":\"positive\"}\n");
    testsupport::write_file(dir.file("lex.tsv"), "good\t3\n");
    testsupport::write_file(dir.file("scores.tsv"), "s1\t0\ns2\t2\ns3\t4\n");
    RunConfig config;
    config.corpus_path = dir.file("c.jsonl");
    config.lexicon_path = dir.file("lex.tsv");
    config.conditions = {parse_condition("t0:scale")};
    config.scores_t0 = dir.file("scores.tsv");
    const ExperimentReport report = run_experiment(config);
    CHECK(report.rows[0].report.percent_agreement == 100.0);

    config.conditions = {parse_condition("ta:scale")};
    config.allow_missing_titles = true;
    CHECK_THROWS_MATCHES(run_experiment(config), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("scores_ta")));
}

TEST_CASE("load_run_config parses the bundled file and rejects unknown keys") {
    const RunConfig config = fixture_config();
    CHECK(config.corpus_path == data_dir / "fixture_corpus.jsonl");
    CHECK(config.lexicon_path == data_dir / "fixture_lexicon.tsv");
    REQUIRE(config.patch_path.has_value());
    CHECK(config.conditions.size() == 3);
    CHECK(config.allow_missing_titles);
    CHECK(config.format == "json");

    TempDir dir;
    testsupport::write_file(dir.file("bad.toml"), "corpus = \"c\"\nlexicon = \"l\"\nwat = 1\n");
    CHECK_THROWS_MATCHES(load_run_config(dir.file("bad.toml")), ValidationError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("wat")));
    testsupport::write_file(dir.file("types.toml"), "corpus = 3\n");
    CHECK_THROWS_AS(load_run_config(dir.file("types.toml")), ValidationError);
    testsupport::write_file(dir.file("dup.toml"), "corpus = \"a\"\ncorpus = \"b\"\n");
    CHECK_THROWS_AS(load_run_config(dir.file("dup.toml")), ValidationError);
}

TEST_CASE("load_run_config accepts every documented key") {
    TempDir dir;
    testsupport::write_file(dir.file("full.toml"),
                            "corpus = \"c.jsonl\"\n"
                            "lexicon = \"l.tsv\"\n"
                            "patch = \"p.txt\"\n"
                            "conditions = [\"t0:pair\", \"ta:scale\"]\n"
                            "scores_t0 = \"s0.tsv\"\n"
                            "scores_ta = \"sa.tsv\"\n"
                            "stopwords = \"stop.txt\"\n"
                            "min_token_length = 4\n"
                            "threshold = 3\n"
                            "phrase = true\n"
                            "negation = true\n"
                            "allow_missing_titles = true\n"
                            "meta_endpoint = \"http://x/works/{doi}\"\n"
                            "meta_title_path = \"title\"\n"
                            "meta_cache = \"cache\"\n"
                            "format = \"table\"\n"
                            "out = \"report.txt\"  # trailing comment\n");
    const RunConfig config = load_run_config(dir.file("full.toml"));
    CHECK(config.corpus_path == dir.file("c.jsonl"));
    CHECK(config.lexicon_path == dir.file("l.tsv"));
    CHECK(config.patch_path == dir.file("p.txt"));
    CHECK(config.conditions.size() == 2);
    CHECK(config.scores_t0 == dir.file("s0.tsv"));
    CHECK(config.scores_ta == dir.file("sa.tsv"));
    CHECK(config.stopwords_path == dir.file("stop.txt"));
    CHECK(config.min_token_length == 4);
    CHECK(config.threshold == 3);
    CHECK(config.phrase);
    CHECK(config.negation);
    CHECK(config.allow_missing_titles);
    CHECK(config.meta_endpoint == "http://x/works/{doi}");
    CHECK(config.meta_title_path == "title");
    CHECK(config.meta_cache == dir.file("cache"));
    CHECK(config.format == "table");
    CHECK(config.out == dir.file("report.txt"));
}

TEST_CASE("condition names round-trip") {
    for (const char* name : {"t0:pair", "ta:pair", "t0:pair-patched", "ta:pair-patched",
                             "t0:scale", "ta:scale"}) {
        CHECK(to_string(parse_condition(name)) == name);
    }
    CHECK_THROWS_AS(parse_condition("t1:pair"), ValidationError);
    CHECK_THROWS_AS(parse_condition("t0-pair"), ValidationError);
    CHECK_THROWS_AS(parse_condition("t0:fancy"), ValidationError);
}

TEST_CASE("experiment rendering is stable and table-shaped") {
    const ExperimentReport report = run_experiment(fixture_config());
    const std::string table = experiment_to_table(report);
    CHECK(table.find("t0:pair") != std::string::npos);
    CHECK(table.find("ta:pair-patched") != std::string::npos);
    const nlohmann::json json = experiment_to_json(report);
    CHECK(json["conditions"].size() == 3);
    CHECK(json["conditions"][0]["condition"] == "t0:pair");
    CHECK(json["missing_title_ids"].size() == 3);
}
