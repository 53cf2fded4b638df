#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "scitweet/common.hpp"
#include "scitweet/corpus.hpp"
#include "scitweet/scorer.hpp"

namespace scitweet {

// Predictions file: id<TAB>label, UTF-8, LF endings.
inline std::string serialize_predictions(const std::vector<Prediction>& predictions) {
    std::string out;
    for (const Prediction& p : predictions) {
        out += p.id;
        out += '\t';
        out += to_string(p.label);
        out += '\n';
    }
    return out;
}

inline void save_predictions(const std::vector<Prediction>& predictions,
                             const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write predictions file " + path.string());
    out << serialize_predictions(predictions);
    if (!out) throw IoError("write failed for predictions file " + path.string());
}

inline std::vector<std::pair<std::string, SentimentLabel>>
parse_predictions(std::string_view content, const std::string& origin) {
    std::vector<std::pair<std::string, SentimentLabel>> out;
    std::istringstream in{std::string(content)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw ValidationError(origin + ":" + std::to_string(line_no) +
                                  ": expected id<TAB>label");
        try {
            out.emplace_back(line.substr(0, tab), parse_sentiment_label(line.substr(tab + 1)));
        } catch (const ValidationError& e) {
            throw ValidationError(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

inline std::vector<std::pair<std::string, SentimentLabel>>
load_predictions(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open predictions file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_predictions(buffer.str(), path.filename().string());
}

// External classifier scores: id<TAB>value with value on the 0..4 scale.
inline std::vector<std::pair<std::string, int>>
parse_scale_scores(std::string_view content, const std::string& origin) {
    std::vector<std::pair<std::string, int>> out;
    std::istringstream in{std::string(content)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw ValidationError(origin + ":" + std::to_string(line_no) +
                                  ": expected id<TAB>value");
        const std::string value = line.substr(tab + 1);
        int score = 0;
        std::size_t consumed = 0;
        try {
            score = std::stoi(value, &consumed);
        } catch (const std::exception&) {
            consumed = std::string::npos;
        }
        if (consumed != value.size())
            throw ValidationError(origin + ":" + std::to_string(line_no) +
                                  ": invalid scale value \"" + value + "\"");
        if (score < 0 || score > 4)
            throw ValidationError(origin + ":" + std::to_string(line_no) +
                                  ": scale value out of range 0..4: " + value);
        out.emplace_back(line.substr(0, tab), score);
    }
    return out;
}

inline std::vector<std::pair<std::string, int>>
load_scale_scores(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scores file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scale_scores(buffer.str(), path.filename().string());
}

} // namespace scitweet
