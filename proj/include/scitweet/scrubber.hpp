#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scitweet/common.hpp"
#include "scitweet/corpus.hpp"
#include "scitweet/normalizer.hpp"
#include "scitweet/wordlists.hpp"

namespace scitweet {

// Controls which title tokens may be deleted from a tweet. Stopwords and
// short tokens stay, and negation words stay no matter what the caller puts
// in the list, so scrubbing cannot invert the meaning of a sentence.
struct RemovalPolicy {
    int min_token_length = 3;
    std::set<std::string> protected_words;
    // Match the title as one contiguous phrase instead of token-wise.
    bool phrase_mode = false;

    RemovalPolicy() {
        protected_words.insert(default_stopwords().begin(), default_stopwords().end());
        protected_words.insert(negation_words().begin(), negation_words().end());
    }

    // Replaces the stopword bundle with a custom list; negation words are
    // re-added unconditionally.
    static RemovalPolicy with_stopwords(const std::vector<std::string>& words) {
        RemovalPolicy policy;
        policy.protected_words.clear();
        policy.protected_words.insert(words.begin(), words.end());
        policy.protected_words.insert(negation_words().begin(), negation_words().end());
        return policy;
    }
};

struct ScrubbedTweet {
    std::string id;
    std::string text_ta;
    // What was deleted, term -> occurrence count, sorted by term.
    std::vector<std::pair<std::string, int>> removed_terms;

    bool operator==(const ScrubbedTweet&) const = default;
};

namespace detail {

// Title tokens that the policy allows to be removed. Negation words are
// excluded even if a caller hands in a protected set without them.
inline std::set<std::string> removable_title_tokens(std::string_view title,
                                                    const RemovalPolicy& policy) {
    std::set<std::string> removable;
    for (std::string& token : tokenize(title)) {
        if (static_cast<int>(token.size()) < policy.min_token_length) continue;
        if (policy.protected_words.count(token)) continue;
        if (negation_words().count(token)) continue;
        removable.insert(std::move(token));
    }
    return removable;
}

struct WordRun {
    std::size_t begin;
    std::size_t end;
    std::string folded;
};

inline std::vector<WordRun> word_runs(std::string_view text) {
    std::vector<WordRun> runs;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_word_byte(text[i])) {
            ++i;
            continue;
        }
        std::size_t begin = i;
        std::string folded;
        while (i < text.size()) {
            if (is_word_byte(text[i])) {
                folded.push_back(ascii_lower(text[i]));
                ++i;
            } else if (text[i] == '\'' && i + 1 < text.size() && is_word_byte(text[i + 1])) {
                folded.push_back('\'');
                ++i;
            } else {
                break;
            }
        }
        runs.push_back(WordRun{begin, i, std::move(folded)});
    }
    return runs;
}

inline ScrubbedTweet scrub_tokenwise(const CleanTweet& clean, const std::set<std::string>& removable) {
    std::map<std::string, int> removed;
    std::string out;
    out.reserve(clean.text_t0.size());
    std::size_t cursor = 0;
    for (const WordRun& run : word_runs(clean.text_t0)) {
        if (!removable.count(run.folded)) continue;
        out.append(clean.text_t0, cursor, run.begin - cursor);
        cursor = run.end;
        ++removed[run.folded];
    }
    out.append(clean.text_t0, cursor, clean.text_t0.size() - cursor);

    ScrubbedTweet scrubbed;
    scrubbed.id = clean.id;
    // Identity when nothing matched: the text comes back byte-exact.
    scrubbed.text_ta = removed.empty() ? clean.text_t0 : collapse_whitespace(out);
    scrubbed.removed_terms.assign(removed.begin(), removed.end());
    return scrubbed;
}

// Deletes contiguous occurrences of the full title token sequence. Rescans
// from the start after every deletion: removing a span can make two
// fragments adjacent and form the phrase again.
inline ScrubbedTweet scrub_phrase(const CleanTweet& clean, const std::vector<std::string>& title_tokens) {
    std::string text = clean.text_t0;
    std::string phrase;
    for (const std::string& token : title_tokens) {
        if (!phrase.empty()) phrase += ' ';
        phrase += token;
    }
    int count = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        const std::vector<WordRun> runs = word_runs(text);
        if (runs.size() < title_tokens.size()) break;
        for (std::size_t i = 0; i + title_tokens.size() <= runs.size(); ++i) {
            bool match = true;
            for (std::size_t j = 0; j < title_tokens.size(); ++j) {
                if (runs[i + j].folded != title_tokens[j]) {
                    match = false;
                    break;
                }
            }
            if (!match) continue;
            text.erase(runs[i].begin, runs[i + title_tokens.size() - 1].end - runs[i].begin);
            ++count;
            changed = true;
            break;
        }
    }
    ScrubbedTweet scrubbed;
    scrubbed.id = clean.id;
    scrubbed.text_ta = count > 0 ? collapse_whitespace(text) : clean.text_t0;
    if (count > 0) scrubbed.removed_terms.emplace_back(phrase, count);
    return scrubbed;
}

} // namespace detail

// Removes the linked paper's title terms from t_0 text. Matching is
// case-insensitive on whole words; an empty title is the identity.
inline ScrubbedTweet scrub(const CleanTweet& clean, std::string_view title,
                           const RemovalPolicy& policy = {}) {
    if (policy.phrase_mode) {
        const std::vector<std::string> title_tokens = tokenize(title);
        if (title_tokens.empty()) {
            ScrubbedTweet identity;
            identity.id = clean.id;
            identity.text_ta = clean.text_t0;
            return identity;
        }
        return detail::scrub_phrase(clean, title_tokens);
    }
    return detail::scrub_tokenwise(clean, detail::removable_title_tokens(title, policy));
}

struct ScrubOutcome {
    Corpus corpus; // texts replaced by t_a, other fields carried through
    // Tweets that passed through unchanged because no title was available.
    std::vector<std::string> missing_title_ids;
    std::map<std::string, int> removed_term_totals;
};

// Scrubs a whole t_0 corpus. Title resolution order per tweet: inline title
// field first, then the DOI in `titles_by_doi`. Missing titles are flagged,
// never fatal.
inline ScrubOutcome scrub_corpus(const Corpus& t0,
                                 const std::map<std::string, std::string>& titles_by_doi,
                                 const RemovalPolicy& policy = {}) {
    ScrubOutcome outcome;
    std::vector<Tweet> tweets;
    tweets.reserve(t0.size());
    for (const Tweet& tweet : t0) {
        const std::string* title = nullptr;
        if (tweet.title) {
            title = &*tweet.title;
        } else if (tweet.doi) {
            auto it = titles_by_doi.find(*tweet.doi);
            if (it != titles_by_doi.end()) title = &it->second;
        }
        Tweet out = tweet;
        if (title) {
            ScrubbedTweet scrubbed = scrub(CleanTweet{tweet.id, tweet.text, tweet.id}, *title, policy);
            out.text = std::move(scrubbed.text_ta);
            for (const auto& [term, count] : scrubbed.removed_terms)
                outcome.removed_term_totals[term] += count;
        } else {
            outcome.missing_title_ids.push_back(tweet.id);
        }
        tweets.push_back(std::move(out));
    }
    outcome.corpus = Corpus(std::move(tweets));
    return outcome;
}

} // namespace scitweet
