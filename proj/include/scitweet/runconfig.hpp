#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "scitweet/common.hpp"

namespace scitweet {

enum class TextStage { t0, ta };
enum class ScoreModel { pair, pair_patched, scale };

// One experiment row: which text stage is scored by which model.
struct Condition {
    TextStage stage = TextStage::t0;
    ScoreModel model = ScoreModel::pair;

    bool operator==(const Condition&) const = default;
};

inline std::string to_string(Condition condition) {
    std::string out = condition.stage == TextStage::t0 ? "t0" : "ta";
    out += ':';
    switch (condition.model) {
    case ScoreModel::pair: out += "pair"; break;
    case ScoreModel::pair_patched: out += "pair-patched"; break;
    case ScoreModel::scale: out += "scale"; break;
    }
    return out;
}

inline Condition parse_condition(std::string_view text) {
    std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ValidationError("bad condition \"" + std::string(text) +
                              "\" (expected <stage>:<model>, e.g. t0:pair)");
    std::string_view stage = text.substr(0, colon);
    std::string_view model = text.substr(colon + 1);
    Condition condition;
    if (stage == "t0") condition.stage = TextStage::t0;
    else if (stage == "ta") condition.stage = TextStage::ta;
    else throw ValidationError("unknown stage \"" + std::string(stage) + "\" (expected t0 or ta)");
    if (model == "pair") condition.model = ScoreModel::pair;
    else if (model == "pair-patched") condition.model = ScoreModel::pair_patched;
    else if (model == "scale") condition.model = ScoreModel::scale;
    else
        throw ValidationError("unknown model \"" + std::string(model) +
                              "\" (expected pair, pair-patched, or scale)");
    return condition;
}

struct RunConfig {
    std::filesystem::path corpus_path;
    std::filesystem::path lexicon_path;
    std::optional<std::filesystem::path> patch_path;
    std::vector<Condition> conditions;
    // External 0..4 scale scores per text stage, for scale conditions.
    std::optional<std::filesystem::path> scores_t0;
    std::optional<std::filesystem::path> scores_ta;
    // Scrub policy knobs.
    int min_token_length = 3;
    std::optional<std::filesystem::path> stopwords_path;
    bool phrase = false;
    // Adaptation threshold, kept alongside the other policy knobs so one
    // config file can drive both `run` and `adapt`.
    int threshold = 2;
    bool negation = false;
    bool allow_missing_titles = false;
    std::string meta_endpoint;
    std::string meta_title_path = "message.title[0]";
    std::optional<std::filesystem::path> meta_cache;
    std::string format = "json";
    std::optional<std::filesystem::path> out;
};

namespace detail {

// Minimal TOML reader covering what RunConfig needs: flat `key = value`
// lines with strings, integers, booleans, single-line string arrays, and
// '#' comments.
struct TomlValue {
    enum class Type { string, integer, boolean, string_array };
    Type type;
    std::string string_value;
    long long int_value = 0;
    bool bool_value = false;
    std::vector<std::string> array_value;
};

inline std::string parse_toml_string(std::string_view text, std::size_t& pos,
                                     const std::string& where) {
    if (pos >= text.size() || text[pos] != '"')
        throw ValidationError(where + ": expected a double-quoted string");
    ++pos;
    std::string out;
    while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\' && pos + 1 < text.size()) {
            char next = text[pos + 1];
            if (next == '"' || next == '\\') {
                out.push_back(next);
                pos += 2;
                continue;
            }
        }
        out.push_back(text[pos]);
        ++pos;
    }
    if (pos >= text.size()) throw ValidationError(where + ": unterminated string");
    ++pos;
    return out;
}

inline void skip_spaces(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
}

inline TomlValue parse_toml_value(std::string_view text, const std::string& where) {
    std::size_t pos = 0;
    skip_spaces(text, pos);
    TomlValue value;
    if (pos >= text.size()) throw ValidationError(where + ": missing value");
    if (text[pos] == '"') {
        value.type = TomlValue::Type::string;
        value.string_value = parse_toml_string(text, pos, where);
    } else if (text[pos] == '[') {
        value.type = TomlValue::Type::string_array;
        ++pos;
        skip_spaces(text, pos);
        while (pos < text.size() && text[pos] != ']') {
            value.array_value.push_back(parse_toml_string(text, pos, where));
            skip_spaces(text, pos);
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                skip_spaces(text, pos);
            }
        }
        if (pos >= text.size()) throw ValidationError(where + ": unterminated array");
        ++pos;
    } else if (text.compare(pos, 4, "true") == 0) {
        value.type = TomlValue::Type::boolean;
        value.bool_value = true;
        pos += 4;
    } else if (text.compare(pos, 5, "false") == 0) {
        value.type = TomlValue::Type::boolean;
        value.bool_value = false;
        pos += 5;
    } else {
        value.type = TomlValue::Type::integer;
        bool negative = text[pos] == '-';
        if (negative) ++pos;
        std::size_t digits_start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            value.int_value = value.int_value * 10 + (text[pos] - '0');
            ++pos;
        }
        if (pos == digits_start) throw ValidationError(where + ": unrecognized value");
        if (negative) value.int_value = -value.int_value;
    }
    skip_spaces(text, pos);
    if (pos < text.size() && text[pos] != '#')
        throw ValidationError(where + ": trailing characters after value");
    return value;
}

inline std::map<std::string, TomlValue> parse_toml(std::string_view content,
                                                   const std::string& origin) {
    std::map<std::string, TomlValue> values;
    std::istringstream in{std::string(content)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string where = origin + ":" + std::to_string(line_no);
        std::size_t pos = 0;
        skip_spaces(line, pos);
        if (pos >= line.size() || line[pos] == '#') continue;
        std::size_t eq = line.find('=', pos);
        if (eq == std::string::npos) throw ValidationError(where + ": expected key = value");
        std::string key = line.substr(pos, eq - pos);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        if (key.empty()) throw ValidationError(where + ": empty key");
        if (!values.emplace(key, parse_toml_value(line.substr(eq + 1), where)).second)
            throw ValidationError(where + ": duplicate key \"" + key + "\"");
    }
    return values;
}

} // namespace detail

// Loads a run configuration. Relative paths are resolved against the
// directory containing the config file.
inline RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string origin = path.filename().string();
    auto values = detail::parse_toml(buffer.str(), origin);

    const std::filesystem::path base = path.parent_path();
    const auto resolve = [&base](const std::string& p) -> std::filesystem::path {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };

    RunConfig config;
    const auto take = [&values](const std::string& key) -> std::optional<detail::TomlValue> {
        auto it = values.find(key);
        if (it == values.end()) return std::nullopt;
        detail::TomlValue value = it->second;
        values.erase(it);
        return value;
    };
    const auto need_string = [&origin](const std::string& key, const detail::TomlValue& v) {
        if (v.type != detail::TomlValue::Type::string)
            throw ValidationError(origin + ": key \"" + key + "\" must be a string");
        return v.string_value;
    };

    if (auto v = take("corpus")) config.corpus_path = resolve(need_string("corpus", *v));
    else throw ValidationError(origin + ": missing required key \"corpus\"");
    if (auto v = take("lexicon")) config.lexicon_path = resolve(need_string("lexicon", *v));
    else throw ValidationError(origin + ": missing required key \"lexicon\"");
    if (auto v = take("patch")) config.patch_path = resolve(need_string("patch", *v));
    if (auto v = take("conditions")) {
        if (v->type != detail::TomlValue::Type::string_array)
            throw ValidationError(origin + ": \"conditions\" must be an array of strings");
        for (const std::string& c : v->array_value) config.conditions.push_back(parse_condition(c));
    }
    if (auto v = take("scores_t0")) config.scores_t0 = resolve(need_string("scores_t0", *v));
    if (auto v = take("scores_ta")) config.scores_ta = resolve(need_string("scores_ta", *v));
    if (auto v = take("stopwords")) config.stopwords_path = resolve(need_string("stopwords", *v));
    if (auto v = take("min_token_length")) {
        if (v->type != detail::TomlValue::Type::integer)
            throw ValidationError(origin + ": \"min_token_length\" must be an integer");
        config.min_token_length = static_cast<int>(v->int_value);
    }
    if (auto v = take("threshold")) {
        if (v->type != detail::TomlValue::Type::integer)
            throw ValidationError(origin + ": \"threshold\" must be an integer");
        config.threshold = static_cast<int>(v->int_value);
    }
    const auto take_bool = [&](const std::string& key, bool& target) {
        if (auto v = take(key)) {
            if (v->type != detail::TomlValue::Type::boolean)
                throw ValidationError(origin + ": \"" + key + "\" must be true or false");
            target = v->bool_value;
        }
    };
    take_bool("phrase", config.phrase);
    take_bool("negation", config.negation);
    take_bool("allow_missing_titles", config.allow_missing_titles);
    if (auto v = take("meta_endpoint")) config.meta_endpoint = need_string("meta_endpoint", *v);
    if (auto v = take("meta_title_path"))
        config.meta_title_path = need_string("meta_title_path", *v);
    if (auto v = take("meta_cache")) config.meta_cache = resolve(need_string("meta_cache", *v));
    if (auto v = take("format")) {
        config.format = need_string("format", *v);
        if (config.format != "json" && config.format != "table")
            throw ValidationError(origin + ": \"format\" must be \"json\" or \"table\"");
    }
    if (auto v = take("out")) config.out = resolve(need_string("out", *v));

    if (!values.empty())
        throw ValidationError(origin + ": unknown key \"" + values.begin()->first + "\"");
    return config;
}

} // namespace scitweet
