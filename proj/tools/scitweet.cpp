// scitweet: sentiment pipeline for tweets that link to scientific papers.
//
// Subcommands mirror the pipeline stages; every stage reads and writes
// plain files so intermediate corpora stay inspectable:
//
//   clean  strip tweet affordances (mentions, URLs, '#')
//   scrub  remove linked-paper title terms
//   score  classify with the strength-pair model or adapt 0..4 scale scores
//   eval   compare predictions against gold labels
//   adapt  propose a lexicon patch from prediction/gold disagreements
//   run    execute a whole multi-condition experiment from a config file

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scitweet/adaptation.hpp"
#include "scitweet/corpus.hpp"
#include "scitweet/evaluator.hpp"
#include "scitweet/lexicon.hpp"
#include "scitweet/metadata.hpp"
#include "scitweet/normalizer.hpp"
#include "scitweet/pipeline.hpp"
#include "scitweet/predictions.hpp"
#include "scitweet/runconfig.hpp"
#include "scitweet/scorer.hpp"
#include "scitweet/scrubber.hpp"

namespace {

using namespace scitweet;

std::string read_stream_or_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Corpus read_corpus_arg(const std::string& path) {
    return parse_corpus(read_stream_or_file(path), path == "-" ? "<stdin>" : path);
}

void write_text_arg(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

struct MetaFlags {
    std::string endpoint;
    std::string cache_dir;
    std::string title_path = "message.title[0]";
    int parallelism = 4;

    MetaClientConfig client_config() const {
        MetaClientConfig config;
        config.endpoint = !endpoint.empty() ? endpoint : env_or("SCITWEET_META_ENDPOINT", "");
        config.title_path = title_path;
        config.parallelism = parallelism;
        return config;
    }

    std::filesystem::path cache_path() const {
        return !cache_dir.empty() ? std::filesystem::path(cache_dir)
                                  : std::filesystem::path(env_or("SCITWEET_META_CACHE", ".meta-cache"));
    }
};

void add_meta_flags(CLI::App* cmd, MetaFlags& flags) {
    cmd->add_option("--meta-endpoint", flags.endpoint,
                    "metadata endpoint URL template with a {doi} placeholder "
                    "(default: $SCITWEET_META_ENDPOINT)");
    cmd->add_option("--meta-cache", flags.cache_dir,
                    "title cache directory (default: $SCITWEET_META_CACHE or ./.meta-cache)");
    cmd->add_option("--meta-title-path", flags.title_path,
                    "field path of the title inside the JSON response");
    cmd->add_option("--meta-parallel", flags.parallelism, "max concurrent metadata lookups")
        ->check(CLI::PositiveNumber);
}

int run_cli(int argc, char** argv) {
    CLI::App app{"sentiment analysis pipeline for tweets linking to scientific papers"};
    app.require_subcommand(1);

    // clean
    auto* clean_cmd = app.add_subcommand("clean", "strip mentions, URLs and '#' from tweet text");
    std::string clean_in, clean_out;
    clean_cmd->add_option("--in", clean_in, "input corpus (JSONL, - for stdin)")->required();
    clean_cmd->add_option("--out", clean_out, "output corpus (- for stdout)")->required();
    clean_cmd->callback([&] {
        write_text_arg(clean_out, serialize_corpus(clean_corpus(read_corpus_arg(clean_in))));
    });

    // scrub
    auto* scrub_cmd = app.add_subcommand("scrub", "remove linked-paper title terms from tweets");
    std::string scrub_in, scrub_out, scrub_stopwords;
    int scrub_min_len = 3;
    bool scrub_phrase = false;
    MetaFlags scrub_meta;
    scrub_cmd->add_option("--in", scrub_in, "input corpus of cleaned tweets (- for stdin)")->required();
    scrub_cmd->add_option("--out", scrub_out, "output corpus (- for stdout)")->required();
    scrub_cmd->add_option("--min-token-length", scrub_min_len,
                          "shortest title token that may be removed");
    scrub_cmd->add_option("--stopwords", scrub_stopwords,
                          "stopword file (one word per line) replacing the bundled list; "
                          "negation words are always protected");
    scrub_cmd->add_flag("--phrase", scrub_phrase, "match the title as one contiguous phrase");
    add_meta_flags(scrub_cmd, scrub_meta);
    scrub_cmd->callback([&] {
        const Corpus corpus = read_corpus_arg(scrub_in);
        MetaCache cache(scrub_meta.cache_path());
        BulkResult resolved = bulk_resolve(corpus, cache, scrub_meta.client_config());
        const RemovalPolicy policy = make_removal_policy(
            scrub_min_len,
            scrub_stopwords.empty() ? std::nullopt
                                    : std::optional<std::filesystem::path>(scrub_stopwords),
            scrub_phrase);
        ScrubOutcome outcome = scrub_corpus(corpus, resolved.titles, policy);
        write_text_arg(scrub_out, serialize_corpus(outcome.corpus));
        std::cerr << "scrubbed " << (outcome.corpus.size() - outcome.missing_title_ids.size())
                  << " of " << outcome.corpus.size() << " tweets\n";
        for (const auto& failure : resolved.failures)
            std::cerr << "title lookup failed: " << failure.message << "\n";
        if (!outcome.missing_title_ids.empty()) {
            std::cerr << "passed through without a title:";
            for (const std::string& id : outcome.missing_title_ids) std::cerr << ' ' << id;
            std::cerr << "\n";
        }
    });

    // score
    auto* score_cmd = app.add_subcommand("score", "classify tweets into positive/negative/neutral");
    std::string score_model = "pair", score_in, score_out, score_lexicon, score_patch, score_scores;
    bool score_negation = false;
    score_cmd->add_option("--model", score_model, "pair (lexicon) or scale (external 0..4 scores)")
        ->check(CLI::IsMember({"pair", "scale"}));
    score_cmd->add_option("--in", score_in, "input corpus (- for stdin; pair model)");
    score_cmd->add_option("--out", score_out, "output predictions id<TAB>label (- for stdout)")
        ->required();
    score_cmd->add_option("--lexicon", score_lexicon, "lexicon TSV (pair model)");
    score_cmd->add_option("--patch", score_patch, "removal patch applied to the lexicon");
    score_cmd->add_option("--scores", score_scores, "external id<TAB>value file (scale model)");
    score_cmd->add_flag("--negation", score_negation,
                        "flip a term's sign when a negation word immediately precedes it");
    score_cmd->callback([&] {
        if (score_model == "pair") {
            if (score_in.empty()) throw ValidationError("--model pair requires --in");
            if (score_lexicon.empty()) throw ValidationError("--model pair requires --lexicon");
            Lexicon lexicon = load_lexicon(score_lexicon);
            if (!score_patch.empty()) lexicon = apply_patch(lexicon, load_patch(score_patch));
            const std::vector<Prediction> predictions =
                score_corpus(read_corpus_arg(score_in), lexicon, ScoreOptions{score_negation});
            write_text_arg(score_out, serialize_predictions(predictions));
        } else {
            if (score_scores.empty()) throw ValidationError("--model scale requires --scores");
            std::string out;
            const std::string content = read_stream_or_file(score_scores);
            const std::string origin = score_scores == "-" ? "<stdin>" : score_scores;
            for (const auto& [id, value] : parse_scale_scores(content, origin)) {
                out += id;
                out += '\t';
                out += to_string(convert_scale(value));
                out += '\n';
            }
            write_text_arg(score_out, out);
        }
    });

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "compare predictions against gold labels");
    std::string eval_gold, eval_pred, eval_out;
    bool eval_table = false;
    eval_cmd->add_option("--gold", eval_gold, "corpus with gold labels")->required();
    eval_cmd->add_option("--pred", eval_pred, "predictions file id<TAB>label (- for stdin)")
        ->required();
    eval_cmd->add_flag("--table", eval_table, "also print the plain-text table");
    eval_cmd->add_option("--out", eval_out, "write the JSON report here instead of stdout");
    eval_cmd->callback([&] {
        const Corpus corpus = read_corpus_arg(eval_gold);
        const auto gold = gold_labels(corpus);
        const auto predicted = parse_predictions(read_stream_or_file(eval_pred),
                                                 eval_pred == "-" ? "<stdin>" : eval_pred);
        auto [gold_aligned, predicted_aligned] = align_by_id(gold, predicted);
        const EvalReport report = build_report(gold_aligned, predicted_aligned);
        const std::string json = report_to_json(report).dump(2) + "\n";
        if (eval_out.empty()) std::cout << json;
        else write_text_arg(eval_out, json);
        if (eval_table) std::cout << render_table({{"predictions", report}});
    });

    // adapt
    auto* adapt_cmd = app.add_subcommand("adapt", "propose a lexicon patch from disagreements");
    std::string adapt_gold, adapt_in, adapt_lexicon, adapt_patch_out, adapt_report_out;
    int adapt_threshold = 2;
    bool adapt_negation = false;
    adapt_cmd->add_option("--gold", adapt_gold, "corpus with gold labels")->required();
    adapt_cmd->add_option("--in", adapt_in, "processed corpus to score (- for stdin)")->required();
    adapt_cmd->add_option("--lexicon", adapt_lexicon, "lexicon TSV")->required();
    adapt_cmd->add_option("--threshold", adapt_threshold,
                          "minimum wrong-trigger count for a term to enter the patch")
        ->check(CLI::PositiveNumber);
    adapt_cmd->add_option("--emit-patch", adapt_patch_out, "write the proposed patch here")
        ->required();
    adapt_cmd->add_option("--report", adapt_report_out, "write the before/after JSON report here");
    adapt_cmd->add_flag("--negation", adapt_negation, "enable the negation scoring rule");
    adapt_cmd->callback([&] {
        const Corpus gold_corpus = read_corpus_arg(adapt_gold);
        const Corpus processed = read_corpus_arg(adapt_in);
        const Lexicon lexicon = load_lexicon(adapt_lexicon);
        const AdaptOutcome outcome =
            adapt_and_compare(processed, lexicon, gold_labels(gold_corpus), adapt_threshold,
                              adapt_in == "-" ? "<stdin>" : adapt_in, ScoreOptions{adapt_negation});
        save_patch(outcome.patch, adapt_patch_out);

        nlohmann::json attributions = nlohmann::json::array();
        for (const DisagreementAttribution& a : outcome.attributions) {
            attributions.push_back(nlohmann::json{{"term", a.term},
                                                  {"wrong_trigger_count", a.wrong_trigger_count},
                                                  {"tweet_ids", a.affected_tweet_ids}});
        }
        const nlohmann::json report{
            {"before", report_to_json(outcome.before)},
            {"after", report_to_json(outcome.after)},
            {"patch",
             {{"removed_terms", outcome.patch.removed_terms},
              {"provenance", outcome.patch.provenance}}},
            {"attributions", attributions},
        };
        const std::string json = report.dump(2) + "\n";
        if (adapt_report_out.empty()) std::cout << json;
        else write_text_arg(adapt_report_out, json);
    });

    // run
    auto* run_cmd = app.add_subcommand("run", "run a multi-condition experiment from a config file");
    std::string run_config_path, run_format;
    bool run_allow_missing = false;
    run_cmd->add_option("--config", run_config_path, "run configuration (TOML)")->required();
    run_cmd->add_option("--format", run_format, "json or table (overrides the config)")
        ->check(CLI::IsMember({"json", "table"}));
    run_cmd->add_flag("--allow-missing-titles", run_allow_missing,
                      "score tweets without a resolved title unscrubbed instead of failing");
    run_cmd->callback([&] {
        RunConfig config = load_run_config(run_config_path);
        if (!run_format.empty()) config.format = run_format;
        if (run_allow_missing) config.allow_missing_titles = true;
        const ExperimentReport report = run_experiment(config);
        const std::string rendered = config.format == "table"
                                         ? experiment_to_table(report)
                                         : experiment_to_json(report).dump(2) + "\n";
        if (config.out) write_text_arg(config.out->string(), rendered);
        else std::cout << rendered;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const scitweet::ValidationError& e) {
        std::cerr << "scitweet: error: " << e.what() << "\n";
        return 1;
    } catch (const scitweet::IoError& e) {
        std::cerr << "scitweet: error: " << e.what() << "\n";
        return 2;
    } catch (const scitweet::MetaError& e) {
        std::cerr << "scitweet: error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "scitweet: unexpected error: " << e.what() << "\n";
        return 2;
    }
}
