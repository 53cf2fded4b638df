#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "scitweet/common.hpp"
#include "scitweet/corpus.hpp"
#include "scitweet/evaluator.hpp"
#include "scitweet/lexicon.hpp"
#include "scitweet/scorer.hpp"

namespace scitweet {

// One lexicon term charged with misclassifications: the number of wrong
// predictions where it supplied the winning polarity, and which tweets.
struct DisagreementAttribution {
    std::string term;
    int wrong_trigger_count = 0;
    std::vector<std::string> affected_tweet_ids;

    bool operator==(const DisagreementAttribution&) const = default;
};

// Charges the winning-polarity trigger terms of every misclassified,
// non-neutral prediction. Neutral mispredictions carry no removable cause.
// Results are sorted by count descending, ties broken by term.
inline std::vector<DisagreementAttribution>
attribute(const std::vector<std::pair<std::string, SentimentLabel>>& gold,
          const std::vector<Prediction>& predictions) {
    std::map<std::string, SentimentLabel> gold_by_id;
    for (const auto& [id, label] : gold) {
        if (!gold_by_id.emplace(id, label).second)
            throw ValidationError("duplicate gold label for id \"" + id + "\"");
    }
    if (gold.size() != predictions.size())
        throw ValidationError("label count mismatch: " + std::to_string(gold.size()) +
                              " gold vs " + std::to_string(predictions.size()) + " predictions");

    std::map<std::string, std::vector<std::string>> affected;
    for (const Prediction& prediction : predictions) {
        if (!prediction.pair)
            throw ValidationError("prediction for \"" + prediction.id +
                                  "\" lacks trigger data (not produced by the pair model)");
        auto it = gold_by_id.find(prediction.id);
        if (it == gold_by_id.end())
            throw ValidationError("no gold label for tweet id \"" + prediction.id + "\"");
        if (prediction.label == it->second || prediction.label == SentimentLabel::neutral)
            continue;
        const auto& triggers = prediction.label == SentimentLabel::positive
                                   ? prediction.positive_triggers
                                   : prediction.negative_triggers;
        for (const std::string& term : triggers) affected[term].push_back(prediction.id);
    }

    std::vector<DisagreementAttribution> attributions;
    attributions.reserve(affected.size());
    for (auto& [term, ids] : affected)
        attributions.push_back({term, static_cast<int>(ids.size()), std::move(ids)});
    std::sort(attributions.begin(), attributions.end(), [](const auto& a, const auto& b) {
        if (a.wrong_trigger_count != b.wrong_trigger_count)
            return a.wrong_trigger_count > b.wrong_trigger_count;
        return a.term < b.term;
    });
    return attributions;
}

inline LexiconPatch propose_patch(const std::vector<DisagreementAttribution>& attributions,
                                  int threshold, const std::string& corpus_id = "corpus") {
    if (threshold < 1) throw ValidationError("threshold must be >= 1");
    LexiconPatch patch;
    for (const DisagreementAttribution& attribution : attributions) {
        if (attribution.wrong_trigger_count >= threshold)
            patch.removed_terms.push_back(attribution.term);
    }
    std::sort(patch.removed_terms.begin(), patch.removed_terms.end());
    patch.provenance = "threshold=" + std::to_string(threshold) + " corpus=" + corpus_id;
    return patch;
}

struct AdaptOutcome {
    EvalReport before;
    EvalReport after;
    LexiconPatch patch;
    std::vector<DisagreementAttribution> attributions;
};

// Score, attribute, propose, re-score. The patch is returned for review;
// nothing is written back to the base lexicon.
inline AdaptOutcome adapt_and_compare(const Corpus& processed, const Lexicon& lexicon,
                                      const std::vector<std::pair<std::string, SentimentLabel>>& gold,
                                      int threshold, const std::string& corpus_id = "corpus",
                                      const ScoreOptions& options = {}) {
    const std::vector<Prediction> base_predictions = score_corpus(processed, lexicon, options);

    std::vector<std::pair<std::string, SentimentLabel>> predicted_pairs;
    predicted_pairs.reserve(base_predictions.size());
    for (const Prediction& p : base_predictions) predicted_pairs.emplace_back(p.id, p.label);

    AdaptOutcome outcome;
    {
        auto [gold_labels, predicted_labels] = align_by_id(gold, predicted_pairs);
        outcome.before = build_report(gold_labels, predicted_labels);
    }
    outcome.attributions = attribute(gold, base_predictions);
    outcome.patch = propose_patch(outcome.attributions, threshold, corpus_id);

    const Lexicon patched = apply_patch(lexicon, outcome.patch);
    const std::vector<Prediction> patched_predictions = score_corpus(processed, patched, options);
    predicted_pairs.clear();
    for (const Prediction& p : patched_predictions) predicted_pairs.emplace_back(p.id, p.label);
    {
        auto [gold_labels, predicted_labels] = align_by_id(gold, predicted_pairs);
        outcome.after = build_report(gold_labels, predicted_labels);
    }
    return outcome;
}

} // namespace scitweet
