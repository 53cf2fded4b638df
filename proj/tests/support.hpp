#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "scitweet/corpus.hpp"
#include "scitweet/evaluator.hpp"

namespace testsupport {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        auto base = std::filesystem::temp_directory_path();
        path_ = base / ("scitweet_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Independent kappa oracle: expands the matrix back into label vectors and
// counts chance agreement over all n^2 independent (gold_i, predicted_j)
// pairs, instead of using the marginal-product formula.
inline double kappa_pair_counting_oracle(const scitweet::ConfusionMatrix& m) {
    using scitweet::SentimentLabel;
    std::vector<SentimentLabel> gold;
    std::vector<SentimentLabel> predicted;
    for (SentimentLabel g : scitweet::all_labels) {
        for (SentimentLabel p : scitweet::all_labels) {
            for (long long k = 0; k < m.at(g, p); ++k) {
                gold.push_back(g);
                predicted.push_back(p);
            }
        }
    }
    const std::size_t n = gold.size();
    long long agreements = 0;
    long long chance_pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (gold[i] == predicted[i]) ++agreements;
        for (std::size_t j = 0; j < n; ++j)
            if (gold[i] == predicted[j]) ++chance_pairs;
    }
    const double p_o = static_cast<double>(agreements) / static_cast<double>(n);
    const double p_e =
        static_cast<double>(chance_pairs) / (static_cast<double>(n) * static_cast<double>(n));
    return (p_o - p_e) / (1.0 - p_e);
}

// Exact integer chance-pair count, for comparing against the marginal
// products without any floating point.
inline long long chance_pair_count(const scitweet::ConfusionMatrix& m) {
    using scitweet::SentimentLabel;
    std::vector<SentimentLabel> gold;
    std::vector<SentimentLabel> predicted;
    for (SentimentLabel g : scitweet::all_labels) {
        for (SentimentLabel p : scitweet::all_labels) {
            for (long long k = 0; k < m.at(g, p); ++k) {
                gold.push_back(g);
                predicted.push_back(p);
            }
        }
    }
    long long pairs = 0;
    for (scitweet::SentimentLabel g : gold)
        for (scitweet::SentimentLabel p : predicted)
            if (g == p) ++pairs;
    return pairs;
}

// Crossref-shaped stub endpoint on the loopback interface. Counts every
// request it serves.
class StubEndpoint {
public:
    StubEndpoint() {
        server_.Get(R"(/works/(.*))", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits_;
            const std::string doi = req.matches[1];
            auto it = titles_.find(doi);
            if (it == titles_.end()) {
                res.status = 404;
                res.set_content("{\"status\":\"error\"}", "application/json");
                return;
            }
            const nlohmann::json body{{"message", {{"title", {it->second}}}}};
            res.set_content(body.dump(), "application/json");
        });
        server_.Get("/broken/(.*)", [this](const httplib::Request&, httplib::Response& res) {
            ++hits_;
            res.set_content("{\"message\":{}}", "application/json");
        });
        // Same lookup table, response shaped as a flat {"title": ...} object.
        server_.Get("/flat/(.*)", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits_;
            const std::string doi = req.matches[1];
            auto it = titles_.find(doi);
            if (it == titles_.end()) {
                res.status = 404;
                return;
            }
            res.set_content(nlohmann::json{{"title", it->second}}.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~StubEndpoint() {
        server_.stop();
        thread_.join();
    }

    StubEndpoint(const StubEndpoint&) = delete;
    StubEndpoint& operator=(const StubEndpoint&) = delete;

    void add(const std::string& doi, const std::string& title) { titles_[doi] = title; }

    std::string endpoint() const {
        return "http://127.0.0.1:" + std::to_string(port_) + "/works/{doi}";
    }

    std::string broken_endpoint() const {
        return "http://127.0.0.1:" + std::to_string(port_) + "/broken/{doi}";
    }

    std::string flat_endpoint() const {
        return "http://127.0.0.1:" + std::to_string(port_) + "/flat/{doi}";
    }

    int hits() const { return hits_; }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::map<std::string, std::string> titles_;
    std::atomic<int> hits_{0};
};

// Random 3x3 matrix with n <= 50 and non-degenerate marginals.
inline scitweet::ConfusionMatrix random_confusion(std::mt19937& rng) {
    std::uniform_int_distribution<int> cell(0, 5);
    for (;;) {
        scitweet::ConfusionMatrix m;
        for (scitweet::SentimentLabel g : scitweet::all_labels)
            for (scitweet::SentimentLabel p : scitweet::all_labels)
                m.add(g, p, cell(rng));
        if (m.total() == 0) continue;
        long long marginal_products = 0;
        for (scitweet::SentimentLabel c : scitweet::all_labels)
            marginal_products += m.row_sum(c) * m.col_sum(c);
        if (marginal_products == m.total() * m.total()) continue; // kappa undefined
        return m;
    }
}

} // namespace testsupport
