#pragma once

#include <set>
#include <string>
#include <vector>

namespace scitweet {

// Negation words are protected everywhere: scrubbing must never delete them,
// and the optional negation scoring rule keys off them.
inline const std::set<std::string>& negation_words() {
    static const std::set<std::string> words = {"cannot", "never", "no", "none", "not"};
    return words;
}

// Bundled English stopword list (~50 entries). These never count as
// removable title terms.
inline const std::vector<std::string>& default_stopwords() {
    static const std::vector<std::string> words = {
        "a",    "an",    "and",   "are",  "as",    "at",    "be",    "been",
        "but",  "by",    "can",   "could", "do",   "for",   "from",  "had",
        "has",  "have",  "if",    "in",   "into",  "is",    "it",    "its",
        "may",  "of",    "on",    "or",   "our",   "so",    "than",  "that",
        "the",  "their", "there", "these", "they", "this",  "to",    "was",
        "we",   "were",  "what",  "when", "which", "will",  "with",  "would",
        "you",  "your",
    };
    return words;
}

} // namespace scitweet
