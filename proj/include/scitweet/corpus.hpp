#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "scitweet/common.hpp"

namespace scitweet {

// Three-way sentiment category. The underlying order (negative < neutral <
// positive) is relied on by the monotonicity checks.
enum class SentimentLabel : int {
    negative = 0,
    neutral = 1,
    positive = 2,
};

inline constexpr SentimentLabel all_labels[] = {
    SentimentLabel::negative, SentimentLabel::neutral, SentimentLabel::positive};

inline std::string to_string(SentimentLabel label) {
    switch (label) {
    case SentimentLabel::negative: return "negative";
    case SentimentLabel::neutral: return "neutral";
    case SentimentLabel::positive: return "positive";
    }
    throw ValidationError("invalid sentiment label value");
}

inline SentimentLabel parse_sentiment_label(std::string_view text) {
    if (text == "negative") return SentimentLabel::negative;
    if (text == "neutral") return SentimentLabel::neutral;
    if (text == "positive") return SentimentLabel::positive;
    throw ValidationError("unknown sentiment label \"" + std::string(text) +
                          "\" (expected positive, negative, or neutral)");
}

// One corpus record. `text` is kept byte-exact as ingested; `title` is an
// optional inline paper title that overrides any metadata lookup.
struct Tweet {
    std::string id;
    std::string text;
    std::optional<std::string> doi;
    std::optional<SentimentLabel> gold;
    std::optional<std::string> title;

    bool operator==(const Tweet&) const = default;
};

// Ordered, immutable-after-construction tweet collection. Iteration order is
// file order; ids are unique.
class Corpus {
public:
    Corpus() = default;

    explicit Corpus(std::vector<Tweet> tweets) : tweets_(std::move(tweets)) {
        std::unordered_set<std::string_view> seen;
        for (const Tweet& tweet : tweets_) {
            if (tweet.id.empty()) throw ValidationError("tweet with empty id");
            if (!seen.insert(tweet.id).second)
                throw ValidationError("duplicate tweet id \"" + tweet.id + "\"");
        }
    }

    const std::vector<Tweet>& tweets() const { return tweets_; }
    std::size_t size() const { return tweets_.size(); }
    bool empty() const { return tweets_.empty(); }
    auto begin() const { return tweets_.begin(); }
    auto end() const { return tweets_.end(); }

    bool operator==(const Corpus&) const = default;

private:
    std::vector<Tweet> tweets_;
};

namespace detail {

inline Tweet parse_corpus_line(const std::string& line, const std::string& origin,
                               std::size_t line_no) {
    const auto fail = [&](const std::string& what) -> ValidationError {
        return ValidationError(origin + ":" + std::to_string(line_no) + ": " + what);
    };

    nlohmann::json record;
    try {
        record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw fail(std::string("malformed record: ") + e.what());
    }
    if (!record.is_object()) throw fail("record is not a JSON object");

    Tweet tweet;
    if (!record.contains("id") || !record["id"].is_string())
        throw fail("missing or non-string \"id\" field");
    tweet.id = record["id"].get<std::string>();
    if (tweet.id.empty()) throw fail("empty \"id\" field");

    if (!record.contains("text") || !record["text"].is_string())
        throw fail("missing or non-string \"text\" field");
    tweet.text = record["text"].get<std::string>();

    if (record.contains("doi")) {
        if (!record["doi"].is_string()) throw fail("non-string \"doi\" field");
        tweet.doi = record["doi"].get<std::string>();
    }
    if (record.contains("title")) {
        if (!record["title"].is_string()) throw fail("non-string \"title\" field");
        tweet.title = record["title"].get<std::string>();
    }
    if (record.contains("gold")) {
        if (!record["gold"].is_string()) throw fail("non-string \"gold\" field");
        try {
            tweet.gold = parse_sentiment_label(record["gold"].get<std::string>());
        } catch (const ValidationError& e) {
            throw fail(e.what());
        }
    }
    return tweet;
}

} // namespace detail

// Parses JSON Lines corpus text. `origin` names the source in error messages.
inline Corpus parse_corpus(std::string_view content, const std::string& origin) {
    std::vector<Tweet> tweets;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string_view::npos) end = content.size();
        std::string line(content.substr(pos, end - pos));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_no;
        pos = end + 1;
        if (line.empty()) continue;
        Tweet tweet = detail::parse_corpus_line(line, origin, line_no);
        if (!seen.insert(tweet.id).second)
            throw ValidationError(origin + ":" + std::to_string(line_no) +
                                  ": duplicate tweet id \"" + tweet.id + "\"");
        tweets.push_back(std::move(tweet));
    }
    return Corpus(std::move(tweets));
}

inline Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_corpus(buffer.str(), path.filename().string());
}

// Canonical serialization: one compact JSON object per line, keys in
// alphabetical order, absent optionals omitted, LF line endings.
inline std::string serialize_corpus(const Corpus& corpus) {
    std::string out;
    for (const Tweet& tweet : corpus) {
        nlohmann::json record;
        record["id"] = tweet.id;
        record["text"] = tweet.text;
        if (tweet.doi) record["doi"] = *tweet.doi;
        if (tweet.gold) record["gold"] = to_string(*tweet.gold);
        if (tweet.title) record["title"] = *tweet.title;
        out += record.dump();
        out += '\n';
    }
    return out;
}

inline void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write corpus file " + path.string());
    out << serialize_corpus(corpus);
    if (!out) throw IoError("write failed for corpus file " + path.string());
}

// Percentage of each category, out of 100. Full precision; rounding happens
// only when a report is rendered.
struct ClassShares {
    double positive = 0.0;
    double negative = 0.0;
    double neutral = 0.0;

    bool operator==(const ClassShares&) const = default;
};

inline ClassShares class_shares(const std::vector<SentimentLabel>& labels) {
    if (labels.empty()) throw ValidationError("no labels");
    long long pos = 0, neg = 0, neu = 0;
    for (SentimentLabel label : labels) {
        switch (label) {
        case SentimentLabel::positive: ++pos; break;
        case SentimentLabel::negative: ++neg; break;
        case SentimentLabel::neutral: ++neu; break;
        }
    }
    const double n = static_cast<double>(labels.size());
    return ClassShares{100.0 * static_cast<double>(pos) / n,
                       100.0 * static_cast<double>(neg) / n,
                       100.0 * static_cast<double>(neu) / n};
}

} // namespace scitweet
