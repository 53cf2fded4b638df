#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scitweet/adaptation.hpp"
#include "scitweet/common.hpp"
#include "scitweet/corpus.hpp"
#include "scitweet/evaluator.hpp"
#include "scitweet/lexicon.hpp"
#include "scitweet/metadata.hpp"
#include "scitweet/normalizer.hpp"
#include "scitweet/predictions.hpp"
#include "scitweet/runconfig.hpp"
#include "scitweet/scorer.hpp"
#include "scitweet/scrubber.hpp"

namespace scitweet {

inline std::string env_or(const char* name, const std::string& fallback) {
    const char* value = std::getenv(name);
    return value != nullptr ? std::string(value) : fallback;
}

inline std::vector<std::string> load_stopword_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open stopword file " + path.string());
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        words.push_back(ascii_lower_copy(line));
    }
    return words;
}

inline RemovalPolicy make_removal_policy(int min_token_length,
                                         const std::optional<std::filesystem::path>& stopwords_path,
                                         bool phrase) {
    RemovalPolicy policy = stopwords_path
                               ? RemovalPolicy::with_stopwords(load_stopword_file(*stopwords_path))
                               : RemovalPolicy{};
    policy.min_token_length = min_token_length;
    policy.phrase_mode = phrase;
    return policy;
}

// Gold labels in corpus order. Errors list every tweet that lacks one.
inline std::vector<std::pair<std::string, SentimentLabel>> gold_labels(const Corpus& corpus) {
    std::vector<std::pair<std::string, SentimentLabel>> gold;
    std::string missing;
    for (const Tweet& tweet : corpus) {
        if (tweet.gold) {
            gold.emplace_back(tweet.id, *tweet.gold);
        } else {
            if (!missing.empty()) missing += ", ";
            missing += tweet.id;
        }
    }
    if (!missing.empty())
        throw ValidationError("tweets without gold labels: " + missing);
    return gold;
}

// Resolves the title for every tweet that needs one: inline titles first,
// then the metadata client (when an endpoint or warm cache is available).
struct TitleResolution {
    std::map<std::string, std::string> titles_by_doi;
    std::vector<BulkResult::Failure> failures;
};

inline TitleResolution resolve_titles(const Corpus& corpus, const MetaClientConfig& config,
                                      const std::filesystem::path& cache_dir) {
    const bool any_lookup_needed =
        std::any_of(corpus.begin(), corpus.end(),
                    [](const Tweet& t) { return t.doi.has_value() && !t.title.has_value(); });
    if (!any_lookup_needed) return {};
    MetaCache cache(cache_dir);
    BulkResult bulk = bulk_resolve(corpus, cache, config);
    return TitleResolution{std::move(bulk.titles), std::move(bulk.failures)};
}

struct ExperimentRow {
    Condition condition;
    EvalReport report;
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;
    std::vector<std::string> missing_title_ids; // pass-through tweets under ta
};

inline nlohmann::json experiment_to_json(const ExperimentReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ExperimentRow& row : report.rows) {
        rows.push_back(nlohmann::json{{"condition", to_string(row.condition)},
                                      {"report", report_to_json(row.report)}});
    }
    nlohmann::json out{{"conditions", rows}};
    if (!report.missing_title_ids.empty()) out["missing_title_ids"] = report.missing_title_ids;
    return out;
}

inline std::string experiment_to_table(const ExperimentReport& report) {
    std::vector<std::pair<std::string, EvalReport>> rows;
    rows.reserve(report.rows.size());
    for (const ExperimentRow& row : report.rows)
        rows.emplace_back(to_string(row.condition), row.report);
    return render_table(rows);
}

// Runs every configured condition over one corpus: clean, optionally scrub,
// score under the condition's model, evaluate against gold.
inline ExperimentReport run_experiment(const RunConfig& config) {
    if (config.conditions.empty())
        throw ValidationError("no conditions selected (e.g. conditions = [\"t0:pair\"])");

    const Corpus corpus = load_corpus(config.corpus_path);
    const auto gold = gold_labels(corpus);
    const Lexicon lexicon = load_lexicon(config.lexicon_path);

    bool need_patched = false;
    bool need_ta = false;
    for (const Condition& condition : config.conditions) {
        need_patched = need_patched || condition.model == ScoreModel::pair_patched;
        need_ta = need_ta || condition.stage == TextStage::ta;
    }

    Lexicon patched;
    if (need_patched) {
        if (!config.patch_path)
            throw ValidationError("a pair-patched condition requires a patch file");
        patched = apply_patch(lexicon, load_patch(*config.patch_path));
    }

    const Corpus t0 = clean_corpus(corpus);

    ExperimentReport report;
    Corpus ta;
    if (need_ta) {
        const std::string endpoint = !config.meta_endpoint.empty()
                                         ? config.meta_endpoint
                                         : env_or("SCITWEET_META_ENDPOINT", "");
        MetaClientConfig meta_config;
        meta_config.endpoint = endpoint;
        meta_config.title_path = config.meta_title_path;
        const std::filesystem::path cache_dir =
            config.meta_cache ? *config.meta_cache
                              : std::filesystem::path(env_or("SCITWEET_META_CACHE", ".meta-cache"));
        TitleResolution titles = resolve_titles(t0, meta_config, cache_dir);

        const RemovalPolicy policy =
            make_removal_policy(config.min_token_length, config.stopwords_path, config.phrase);
        ScrubOutcome outcome = scrub_corpus(t0, titles.titles_by_doi, policy);
        if (!outcome.missing_title_ids.empty() && !config.allow_missing_titles) {
            std::string ids;
            for (const std::string& id : outcome.missing_title_ids) {
                if (!ids.empty()) ids += ", ";
                ids += id;
            }
            throw ValidationError("unresolved titles for tweets: " + ids +
                                  " (pass --allow-missing-titles to score them unscrubbed)");
        }
        report.missing_title_ids = std::move(outcome.missing_title_ids);
        ta = std::move(outcome.corpus);
    }

    const ScoreOptions options{config.negation};
    for (const Condition& condition : config.conditions) {
        const Corpus& staged = condition.stage == TextStage::t0 ? t0 : ta;
        std::vector<std::pair<std::string, SentimentLabel>> predicted;
        switch (condition.model) {
        case ScoreModel::pair:
        case ScoreModel::pair_patched: {
            const Lexicon& active = condition.model == ScoreModel::pair ? lexicon : patched;
            for (const Prediction& p : score_corpus(staged, active, options))
                predicted.emplace_back(p.id, p.label);
            break;
        }
        case ScoreModel::scale: {
            const auto& scores_path =
                condition.stage == TextStage::t0 ? config.scores_t0 : config.scores_ta;
            if (!scores_path)
                throw ValidationError("condition " + to_string(condition) +
                                      " requires an external scores file (scores_" +
                                      (condition.stage == TextStage::t0 ? "t0" : "ta") + ")");
            for (const auto& [id, value] : load_scale_scores(*scores_path))
                predicted.emplace_back(id, convert_scale(value));
            break;
        }
        }
        auto [gold_aligned, predicted_aligned] = align_by_id(gold, predicted);
        report.rows.push_back({condition, build_report(gold_aligned, predicted_aligned)});
    }
    return report;
}

} // namespace scitweet
