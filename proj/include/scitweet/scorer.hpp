#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scitweet/common.hpp"
#include "scitweet/corpus.hpp"
#include "scitweet/lexicon.hpp"
#include "scitweet/normalizer.hpp"
#include "scitweet/wordlists.hpp"

namespace scitweet {

// Per-tweet intensity pair. pos stays in [1,5], neg in [-5,-1]; (1,-1) is
// the baseline when no lexicon term matches.
struct StrengthPair {
    int pos = 1;
    int neg = -1;

    bool operator==(const StrengthPair&) const = default;
};

// External classifier output on the 0 (negative) .. 4 (positive) scale.
class ScaleScore {
public:
    explicit ScaleScore(int value) : value_(value) {
        if (value < 0 || value > 4)
            throw ValidationError("scale score out of range: " + std::to_string(value) +
                                  " (expected 0..4)");
    }

    int value() const { return value_; }

private:
    int value_;
};

struct ScoreOptions {
    // When set, a negation word directly before a lexicon term flips the
    // term's sign. Off by default.
    bool negation = false;
};

struct Prediction {
    std::string id;
    SentimentLabel label = SentimentLabel::neutral;
    std::optional<StrengthPair> pair;
    // Terms whose (effective) strength attained the pair components, sorted;
    // empty when the component sits at the baseline.
    std::vector<std::string> positive_triggers;
    std::vector<std::string> negative_triggers;

    bool operator==(const Prediction&) const = default;
};

inline StrengthPair strength_pair(std::string_view text, const Lexicon& lexicon,
                                  const ScoreOptions& options = {}) {
    StrengthPair pair;
    const std::vector<std::string> tokens = tokenize(text);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::optional<int> strength = lexicon.strength(tokens[i]);
        if (!strength) continue;
        int s = *strength;
        if (options.negation && i > 0 && negation_words().count(tokens[i - 1])) s = -s;
        if (s > 0) pair.pos = std::max(pair.pos, s);
        else pair.neg = std::min(pair.neg, s);
    }
    return pair;
}

// The stronger magnitude wins; equal magnitudes are neutral.
inline SentimentLabel classify_pair(StrengthPair pair) {
    if (pair.pos > -pair.neg) return SentimentLabel::positive;
    if (-pair.neg > pair.pos) return SentimentLabel::negative;
    return SentimentLabel::neutral;
}

inline Prediction classify_text(const std::string& id, std::string_view text,
                                const Lexicon& lexicon, const ScoreOptions& options = {}) {
    Prediction prediction;
    prediction.id = id;
    prediction.pair = strength_pair(text, lexicon, options);
    prediction.label = classify_pair(*prediction.pair);

    std::set<std::string> pos_terms;
    std::set<std::string> neg_terms;
    const std::vector<std::string> tokens = tokenize(text);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::optional<int> strength = lexicon.strength(tokens[i]);
        if (!strength) continue;
        int s = *strength;
        if (options.negation && i > 0 && negation_words().count(tokens[i - 1])) s = -s;
        if (s >= 2 && s == prediction.pair->pos) pos_terms.insert(tokens[i]);
        if (s <= -2 && s == prediction.pair->neg) neg_terms.insert(tokens[i]);
    }
    prediction.positive_triggers.assign(pos_terms.begin(), pos_terms.end());
    prediction.negative_triggers.assign(neg_terms.begin(), neg_terms.end());
    return prediction;
}

// 0,1 -> negative; 2 -> neutral; 3,4 -> positive.
inline SentimentLabel convert_scale(ScaleScore score) {
    if (score.value() <= 1) return SentimentLabel::negative;
    if (score.value() == 2) return SentimentLabel::neutral;
    return SentimentLabel::positive;
}

inline SentimentLabel convert_scale(int value) { return convert_scale(ScaleScore(value)); }

inline std::vector<Prediction> score_corpus(const Corpus& corpus, const Lexicon& lexicon,
                                            const ScoreOptions& options = {}) {
    std::vector<Prediction> predictions;
    predictions.reserve(corpus.size());
    for (const Tweet& tweet : corpus)
        predictions.push_back(classify_text(tweet.id, tweet.text, lexicon, options));
    return predictions;
}

} // namespace scitweet
