#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scitweet/common.hpp"
#include "scitweet/corpus.hpp"

namespace scitweet {

// Tweet text with platform affordances stripped: no @-mentions, no URLs,
// no '#' characters (hashtag bodies are kept as plain words).
struct CleanTweet {
    std::string id;
    std::string text_t0;
    std::string source_id;

    bool operator==(const CleanTweet&) const = default;
};

namespace detail {

inline bool is_mention_body_char(char c) {
    return is_ascii_alnum(c) || c == '_';
}

// Matches a URL span starting at `pos`: "http://", "https://" or "www."
// (ASCII case-insensitive) at a word boundary, extending to the next
// whitespace. Returns the end of the span, or npos if no match.
inline std::size_t match_url_span(std::string_view s, std::size_t pos) {
    static constexpr std::string_view prefixes[] = {"http://", "https://", "www."};
    bool at_boundary = pos == 0 || !is_word_byte(s[pos - 1]);
    if (!at_boundary) return std::string_view::npos;
    bool matched = false;
    for (std::string_view prefix : prefixes) {
        if (pos + prefix.size() > s.size()) continue;
        bool equal = true;
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            if (ascii_lower(s[pos + i]) != prefix[i]) {
                equal = false;
                break;
            }
        }
        if (equal) {
            matched = true;
            break;
        }
    }
    if (!matched) return std::string_view::npos;
    std::size_t end = pos;
    while (end < s.size() && !is_ascii_space(s[end])) ++end;
    return end;
}

// One removal sweep: URL spans, then @-mentions, then every '#' character.
inline std::string strip_affordances_once(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        std::size_t url_end = match_url_span(s, i);
        if (url_end != std::string_view::npos) {
            i = url_end;
            continue;
        }
        if (s[i] == '@' && i + 1 < s.size() && is_mention_body_char(s[i + 1])) {
            ++i;
            while (i < s.size() && is_mention_body_char(s[i])) ++i;
            continue;
        }
        if (s[i] == '#') {
            ++i;
            continue;
        }
        out.push_back(s[i]);
        ++i;
    }
    return out;
}

} // namespace detail

// Derives t_0 text: affordances removed, whitespace collapsed and trimmed.
// Removal passes repeat until the text is stable, so deletions that splice
// two fragments into a fresh mention or URL cannot leave residue behind.
inline std::string clean_text(std::string_view text) {
    std::string current(text);
    for (;;) {
        std::string next = detail::strip_affordances_once(current);
        if (next == current) break;
        current = std::move(next);
    }
    return collapse_whitespace(current);
}

inline CleanTweet clean(const Tweet& tweet) {
    return CleanTweet{tweet.id, clean_text(tweet.text), tweet.id};
}

// Corpus-level cleaning for the file pipeline: text becomes t_0, every other
// field (doi, gold, inline title) is carried through.
inline Corpus clean_corpus(const Corpus& corpus) {
    std::vector<Tweet> out;
    out.reserve(corpus.size());
    for (const Tweet& tweet : corpus) {
        Tweet cleaned = tweet;
        cleaned.text = clean_text(tweet.text);
        out.push_back(std::move(cleaned));
    }
    return Corpus(std::move(out));
}

// Word tokens: maximal runs of letters/digits (bytes >= 0x80 count as
// letters) with internal apostrophes, ASCII case-folded. "Don't stop" ->
// ["don't", "stop"]; hyphens split.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (is_word_byte(c)) {
            current.push_back(ascii_lower(c));
        } else if (c == '\'' && !current.empty() && i + 1 < text.size() &&
                   is_word_byte(text[i + 1])) {
            current.push_back(c);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

} // namespace scitweet
