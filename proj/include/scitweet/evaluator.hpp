#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scitweet/common.hpp"
#include "scitweet/corpus.hpp"

namespace scitweet {

// 3x3 gold-vs-predicted counts. Rows are gold, columns are predicted.
class ConfusionMatrix {
public:
    ConfusionMatrix() { counts_ = {}; }

    long long at(SentimentLabel gold, SentimentLabel predicted) const {
        return counts_[index(gold)][index(predicted)];
    }

    void add(SentimentLabel gold, SentimentLabel predicted, long long count = 1) {
        if (count < 0) throw ValidationError("negative confusion count");
        counts_[index(gold)][index(predicted)] += count;
    }

    long long total() const {
        long long n = 0;
        for (const auto& row : counts_)
            for (long long cell : row) n += cell;
        return n;
    }

    long long trace() const {
        return counts_[0][0] + counts_[1][1] + counts_[2][2];
    }

    long long row_sum(SentimentLabel gold) const {
        long long n = 0;
        for (long long cell : counts_[index(gold)]) n += cell;
        return n;
    }

    long long col_sum(SentimentLabel predicted) const {
        long long n = 0;
        for (const auto& row : counts_) n += row[index(predicted)];
        return n;
    }

    bool operator==(const ConfusionMatrix&) const = default;

private:
    static std::size_t index(SentimentLabel label) { return static_cast<std::size_t>(label); }

    std::array<std::array<long long, 3>, 3> counts_;
};

inline ConfusionMatrix confusion(const std::vector<SentimentLabel>& gold,
                                 const std::vector<SentimentLabel>& predicted) {
    if (gold.size() != predicted.size())
        throw ValidationError("label count mismatch: " + std::to_string(gold.size()) +
                              " gold vs " + std::to_string(predicted.size()) + " predicted");
    if (gold.empty()) throw ValidationError("no labels to compare");
    ConfusionMatrix matrix;
    for (std::size_t i = 0; i < gold.size(); ++i) matrix.add(gold[i], predicted[i]);
    return matrix;
}

// Pairs (id, label) aligned by tweet id, returned in the gold ordering.
// Every gold id must have exactly one prediction and vice versa.
inline std::pair<std::vector<SentimentLabel>, std::vector<SentimentLabel>>
align_by_id(const std::vector<std::pair<std::string, SentimentLabel>>& gold,
            const std::vector<std::pair<std::string, SentimentLabel>>& predicted) {
    std::map<std::string, SentimentLabel> by_id;
    for (const auto& [id, label] : predicted) {
        if (!by_id.emplace(id, label).second)
            throw ValidationError("duplicate prediction for id \"" + id + "\"");
    }
    if (gold.size() != predicted.size())
        throw ValidationError("label count mismatch: " + std::to_string(gold.size()) +
                              " gold vs " + std::to_string(predicted.size()) + " predicted");
    std::vector<SentimentLabel> gold_labels;
    std::vector<SentimentLabel> predicted_labels;
    gold_labels.reserve(gold.size());
    predicted_labels.reserve(gold.size());
    for (const auto& [id, label] : gold) {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw ValidationError("no prediction for tweet id \"" + id + "\"");
        gold_labels.push_back(label);
        predicted_labels.push_back(it->second);
    }
    return {std::move(gold_labels), std::move(predicted_labels)};
}

inline double percent_agreement(const ConfusionMatrix& m) {
    const long long n = m.total();
    if (n == 0) throw ValidationError("empty confusion matrix");
    return 100.0 * static_cast<double>(m.trace()) / static_cast<double>(n);
}

// kappa = (p_o - p_e) / (1 - p_e) with p_e from the marginal products.
inline double cohens_kappa(const ConfusionMatrix& m) {
    const long long n = m.total();
    if (n == 0) throw ValidationError("empty confusion matrix");
    long long marginal_products = 0;
    for (SentimentLabel c : all_labels) marginal_products += m.row_sum(c) * m.col_sum(c);
    const double p_o = static_cast<double>(m.trace()) / static_cast<double>(n);
    const double p_e = static_cast<double>(marginal_products) / (static_cast<double>(n) * static_cast<double>(n));
    if (marginal_products == n * n)
        throw ValidationError("degenerate marginals: both labelings are constant on the "
                              "same class, kappa is undefined");
    return (p_o - p_e) / (1.0 - p_e);
}

// Landis-Koch interpretation bands.
inline std::string kappa_band(double kappa) {
    if (kappa < -1.0 || kappa > 1.0)
        throw ValidationError("kappa out of range [-1,1]: " + std::to_string(kappa));
    if (kappa <= 0.0) return "poor";
    if (kappa <= 0.20) return "slight";
    if (kappa <= 0.40) return "fair";
    if (kappa <= 0.60) return "moderate";
    if (kappa <= 0.80) return "substantial";
    return "almost perfect";
}

// Recall per gold class, in percent. A class with no gold instances is
// undefined rather than fabricated.
struct PerClassRecall {
    std::optional<double> positive;
    std::optional<double> negative;
    std::optional<double> neutral;

    bool operator==(const PerClassRecall&) const = default;
};

inline PerClassRecall per_class_recall(const ConfusionMatrix& m) {
    const auto recall_of = [&m](SentimentLabel c) -> std::optional<double> {
        const long long row = m.row_sum(c);
        if (row == 0) return std::nullopt;
        return 100.0 * static_cast<double>(m.at(c, c)) / static_cast<double>(row);
    };
    return PerClassRecall{recall_of(SentimentLabel::positive),
                          recall_of(SentimentLabel::negative),
                          recall_of(SentimentLabel::neutral)};
}

struct EvalReport {
    ClassShares shares_predicted;
    double percent_agreement = 0.0;
    double kappa = 0.0;
    std::string band;
    PerClassRecall recall;
    long long n = 0;

    bool operator==(const EvalReport&) const = default;
};

inline EvalReport build_report(const std::vector<SentimentLabel>& gold,
                               const std::vector<SentimentLabel>& predicted) {
    const ConfusionMatrix m = confusion(gold, predicted);
    EvalReport report;
    report.shares_predicted = class_shares(predicted);
    report.percent_agreement = percent_agreement(m);
    report.kappa = cohens_kappa(m);
    report.band = kappa_band(report.kappa);
    report.recall = per_class_recall(m);
    report.n = m.total();
    return report;
}

inline nlohmann::json report_to_json(const EvalReport& report) {
    const auto recall_value = [](const std::optional<double>& r) -> nlohmann::json {
        if (!r) return nullptr;
        return *r;
    };
    return nlohmann::json{
        {"n", report.n},
        {"shares_predicted",
         {{"positive", report.shares_predicted.positive},
          {"negative", report.shares_predicted.negative},
          {"neutral", report.shares_predicted.neutral}}},
        {"percent_agreement", report.percent_agreement},
        {"kappa", report.kappa},
        {"band", report.band},
        {"per_class_recall",
         {{"positive", recall_value(report.recall.positive)},
          {"negative", recall_value(report.recall.negative)},
          {"neutral", recall_value(report.recall.neutral)}}},
    };
}

// Plain-text table with the columns +, -, n, %, K. Percent columns are
// rendered to one decimal, kappa to two.
inline std::string render_table(const std::vector<std::pair<std::string, EvalReport>>& rows) {
    std::size_t name_width = std::string("condition").size();
    for (const auto& [name, report] : rows) name_width = std::max(name_width, name.size());

    const auto pad_left = [](const std::string& s, std::size_t width) {
        return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
    };
    const auto pad_right = [](const std::string& s, std::size_t width) {
        return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
    };

    constexpr std::size_t col = 7;
    std::string out = pad_right("condition", name_width);
    for (const char* header : {"+", "-", "n", "%", "K"}) out += pad_left(header, col);
    out += '\n';
    for (const auto& [name, report] : rows) {
        out += pad_right(name, name_width);
        out += pad_left(format_fixed(report.shares_predicted.positive, 1), col);
        out += pad_left(format_fixed(report.shares_predicted.negative, 1), col);
        out += pad_left(format_fixed(report.shares_predicted.neutral, 1), col);
        out += pad_left(format_fixed(report.percent_agreement, 1), col);
        out += pad_left(format_fixed(report.kappa, 2), col);
        out += '\n';
    }
    return out;
}

} // namespace scitweet
