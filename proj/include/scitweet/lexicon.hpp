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
#include "scitweet/normalizer.hpp"

namespace scitweet {

inline bool strength_in_range(int strength) {
    return (strength >= -5 && strength <= -2) || (strength >= 2 && strength <= 5);
}

// Term -> signed strength. Sign is polarity, magnitude is intensity in
// [2,5]; magnitude 1 is the implicit per-tweet baseline and is never stored.
class Lexicon {
public:
    Lexicon() = default;

    explicit Lexicon(std::map<std::string, int, std::less<>> entries)
        : entries_(std::move(entries)) {
        for (const auto& [term, strength] : entries_) {
            validate_term(term);
            if (!strength_in_range(strength))
                throw ValidationError("strength out of range for term \"" + term +
                                      "\": " + std::to_string(strength));
        }
    }

    const std::map<std::string, int, std::less<>>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    std::optional<int> strength(std::string_view term) const {
        auto it = entries_.find(term);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(std::string_view term) const { return entries_.count(term) > 0; }

    bool operator==(const Lexicon&) const = default;

    static void validate_term(const std::string& term) {
        std::vector<std::string> tokens = tokenize(term);
        if (tokens.size() != 1 || tokens[0] != term)
            throw ValidationError("lexicon term \"" + term +
                                  "\" is not a single lowercase word token");
    }

private:
    std::map<std::string, int, std::less<>> entries_;
};

// A reviewed removal set for adapting the lexicon to a domain. Patches are
// removal-only; every term must exist in the base lexicon when applied.
struct LexiconPatch {
    std::vector<std::string> removed_terms;
    std::string provenance;

    bool operator==(const LexiconPatch&) const = default;
};

// Format: UTF-8 TSV, term<TAB>strength, '#'-prefixed comment lines allowed.
inline Lexicon parse_lexicon(std::string_view content, const std::string& origin) {
    std::map<std::string, int, std::less<>> entries;
    std::istringstream in{std::string(content)};
    std::string line;
    std::size_t line_no = 0;
    const auto fail = [&](const std::string& what) -> ValidationError {
        return ValidationError(origin + ":" + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) throw fail("expected term<TAB>strength");
        std::string term = line.substr(0, tab);
        std::string value = line.substr(tab + 1);
        try {
            Lexicon::validate_term(term);
        } catch (const ValidationError& e) {
            throw fail(e.what());
        }
        int strength = 0;
        std::size_t consumed = 0;
        try {
            strength = std::stoi(value, &consumed);
        } catch (const std::exception&) {
            throw fail("invalid strength \"" + value + "\"");
        }
        if (consumed != value.size()) throw fail("invalid strength \"" + value + "\"");
        if (!strength_in_range(strength))
            throw fail("strength out of range: " + std::to_string(strength) +
                       " (allowed: -5..-2 and 2..5)");
        if (!entries.emplace(std::move(term), strength).second)
            throw fail("duplicate term \"" + line.substr(0, tab) + "\"");
    }
    return Lexicon(std::move(entries));
}

inline Lexicon load_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_lexicon(buffer.str(), path.filename().string());
}

inline std::string serialize_lexicon(const Lexicon& lexicon) {
    std::string out;
    for (const auto& [term, strength] : lexicon.entries()) {
        out += term;
        out += '\t';
        out += std::to_string(strength);
        out += '\n';
    }
    return out;
}

inline void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write lexicon file " + path.string());
    out << serialize_lexicon(lexicon);
    if (!out) throw IoError("write failed for lexicon file " + path.string());
}

// Patch file: one term per line, '#' comments allowed.
inline LexiconPatch parse_patch(std::string_view content, const std::string& origin) {
    LexiconPatch patch;
    std::istringstream in{std::string(content)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        try {
            Lexicon::validate_term(line);
        } catch (const ValidationError& e) {
            throw ValidationError(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
        patch.removed_terms.push_back(line);
    }
    return patch;
}

inline LexiconPatch load_patch(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open patch file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_patch(buffer.str(), path.filename().string());
}

inline void save_patch(const LexiconPatch& patch, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write patch file " + path.string());
    if (!patch.provenance.empty()) out << "# " << patch.provenance << '\n';
    for (const std::string& term : patch.removed_terms) out << term << '\n';
    if (!out) throw IoError("write failed for patch file " + path.string());
}

// Returns base minus the patch terms; the base is left untouched. An unknown
// term is an error so that a typo cannot silently remove nothing.
inline Lexicon apply_patch(const Lexicon& base, const LexiconPatch& patch) {
    std::map<std::string, int, std::less<>> entries = base.entries();
    for (const std::string& term : patch.removed_terms) {
        if (entries.erase(term) == 0)
            throw ValidationError("patch term \"" + term + "\" not present in lexicon");
    }
    return Lexicon(std::move(entries));
}

} // namespace scitweet
