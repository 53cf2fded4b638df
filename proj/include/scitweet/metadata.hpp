#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "scitweet/common.hpp"
#include "scitweet/corpus.hpp"

namespace scitweet {

struct PaperMeta {
    std::string doi;
    std::string title;

    bool operator==(const PaperMeta&) const = default;
};

class MetaError : public std::runtime_error {
public:
    enum class Kind {
        network,     // retryable: connection trouble, timeouts, 5xx
        unknown_doi, // the endpoint said 404; negative-cached
        malformed,   // response did not carry a title where expected
        offline,     // no endpoint configured and the cache had no answer
    };

    MetaError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

namespace detail {

inline bool is_unreserved_url_byte(char c) {
    return is_ascii_alnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
}

inline std::string percent_encode(std::string_view s, bool keep_slash) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (is_unreserved_url_byte(c) || (keep_slash && c == '/')) {
            out.push_back(c);
        } else {
            unsigned char u = static_cast<unsigned char>(c);
            out.push_back('%');
            out.push_back(hex[u >> 4]);
            out.push_back(hex[u & 0xF]);
        }
    }
    return out;
}

// Splits an absolute URL into the httplib client base ("scheme://host:port")
// and the request path.
inline std::pair<std::string, std::string> split_url(const std::string& url) {
    std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ValidationError("endpoint URL must be absolute: " + url);
    std::size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

// Walks a dotted field path like "message.title[0]" through a JSON value.
inline const nlohmann::json* walk_field_path(const nlohmann::json& root, std::string_view path) {
    const nlohmann::json* node = &root;
    std::size_t pos = 0;
    while (pos < path.size()) {
        std::size_t dot = path.find('.', pos);
        std::string_view segment = path.substr(pos, dot == std::string_view::npos ? path.size() - pos : dot - pos);
        pos = dot == std::string_view::npos ? path.size() : dot + 1;

        std::size_t bracket = segment.find('[');
        std::string_view name = segment.substr(0, bracket);
        if (!name.empty()) {
            if (!node->is_object()) return nullptr;
            auto it = node->find(std::string(name));
            if (it == node->end()) return nullptr;
            node = &*it;
        }
        while (bracket != std::string_view::npos) {
            std::size_t close = segment.find(']', bracket);
            if (close == std::string_view::npos)
                throw ValidationError("bad field path segment: " + std::string(segment));
            std::size_t index = 0;
            auto digits = segment.substr(bracket + 1, close - bracket - 1);
            for (char c : digits) {
                if (c < '0' || c > '9')
                    throw ValidationError("bad field path index: " + std::string(segment));
                index = index * 10 + static_cast<std::size_t>(c - '0');
            }
            if (!node->is_array() || index >= node->size()) return nullptr;
            node = &(*node)[index];
            bracket = segment.find('[', close);
        }
    }
    return node;
}

} // namespace detail

// On-disk title cache, one file per DOI (percent-encoded name + ".title");
// a ".missing" sentinel records a negative answer. Writes go through a
// temp file and a rename, and the same DOI always writes the same bytes.
class MetaCache {
public:
    explicit MetaCache(std::filesystem::path directory) : directory_(std::move(directory)) {
        std::error_code ec;
        std::filesystem::create_directories(directory_, ec);
        if (ec) throw IoError("cannot create cache directory " + directory_.string());
    }

    const std::filesystem::path& directory() const { return directory_; }

    std::optional<std::string> lookup_title(const std::string& doi) const {
        std::ifstream in(title_path(doi), std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    bool is_negative(const std::string& doi) const {
        return std::filesystem::exists(negative_path(doi));
    }

    void store_title(const std::string& doi, const std::string& title) {
        write_atomic(title_path(doi), title);
    }

    void store_negative(const std::string& doi) { write_atomic(negative_path(doi), ""); }

private:
    std::filesystem::path title_path(const std::string& doi) const {
        return directory_ / (detail::percent_encode(doi, false) + ".title");
    }

    std::filesystem::path negative_path(const std::string& doi) const {
        return directory_ / (detail::percent_encode(doi, false) + ".missing");
    }

    void write_atomic(const std::filesystem::path& target, const std::string& content) {
        static std::atomic<unsigned> counter{0};
        std::ostringstream suffix;
        suffix << ".tmp." << std::this_thread::get_id() << '.' << counter++;
        std::filesystem::path temp = target;
        temp += suffix.str();
        {
            std::ofstream out(temp, std::ios::binary);
            if (!out) throw IoError("cannot write cache file " + temp.string());
            out << content;
        }
        std::error_code ec;
        std::filesystem::rename(temp, target, ec);
        if (ec) throw IoError("cannot finalize cache file " + target.string());
    }

    std::filesystem::path directory_;
};

struct MetaClientConfig {
    // URL template with a {doi} placeholder; empty means offline.
    std::string endpoint;
    // Dotted path to the title inside the JSON response.
    std::string title_path = "message.title[0]";
    int timeout_seconds = 10;
    int max_retries = 2;
    int backoff_ms = 500;
    int parallelism = 4;
};

// Resolves one DOI: cache first, then a single GET against the endpoint.
// Successful titles and 404s are cached; network problems are not.
inline PaperMeta resolve_title(const std::string& doi, MetaCache& cache,
                               const MetaClientConfig& config) {
    if (doi.empty()) throw ValidationError("empty DOI");
    if (auto cached = cache.lookup_title(doi)) return PaperMeta{doi, *cached};
    if (cache.is_negative(doi))
        throw MetaError(MetaError::Kind::unknown_doi, "unknown DOI \"" + doi + "\" (cached)");
    if (config.endpoint.empty())
        throw MetaError(MetaError::Kind::offline,
                        "no metadata endpoint configured and DOI \"" + doi + "\" is not cached");

    std::string url = config.endpoint;
    std::size_t placeholder = url.find("{doi}");
    if (placeholder == std::string::npos)
        throw ValidationError("endpoint template lacks a {doi} placeholder: " + url);
    url.replace(placeholder, 5, detail::percent_encode(doi, true));

    const auto [base, path] = detail::split_url(url);
    std::string last_error;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(config.backoff_ms * (1 << (attempt - 1))));
        httplib::Client client(base);
        client.set_connection_timeout(config.timeout_seconds, 0);
        client.set_read_timeout(config.timeout_seconds, 0);
        client.set_follow_location(true);

        httplib::Result result = client.Get(path);
        if (!result) {
            last_error = httplib::to_string(result.error());
            continue;
        }
        if (result->status == 404) {
            cache.store_negative(doi);
            throw MetaError(MetaError::Kind::unknown_doi, "unknown DOI \"" + doi + "\"");
        }
        if (result->status >= 500) {
            last_error = "HTTP " + std::to_string(result->status);
            continue;
        }
        if (result->status != 200)
            throw MetaError(MetaError::Kind::network,
                            "unexpected HTTP " + std::to_string(result->status) + " for DOI \"" + doi + "\"");

        nlohmann::json body;
        try {
            body = nlohmann::json::parse(result->body);
        } catch (const nlohmann::json::exception& e) {
            throw MetaError(MetaError::Kind::malformed,
                            "malformed metadata for DOI \"" + doi + "\": " + e.what());
        }
        const nlohmann::json* title = detail::walk_field_path(body, config.title_path);
        if (title == nullptr || !title->is_string())
            throw MetaError(MetaError::Kind::malformed,
                            "malformed metadata for DOI \"" + doi + "\": no title at " + config.title_path);
        PaperMeta meta{doi, title->get<std::string>()};
        cache.store_title(doi, meta.title);
        return meta;
    }
    throw MetaError(MetaError::Kind::network,
                    "network failure resolving DOI \"" + doi + "\": " + last_error);
}

struct BulkResult {
    std::map<std::string, std::string> titles; // resolved DOI -> title
    struct Failure {
        std::string doi;
        MetaError::Kind kind;
        std::string message;
    };
    std::vector<Failure> failures; // sorted by DOI
};

// Resolves every distinct DOI in the corpus at most once. Tweets carrying an
// inline title are skipped. Per-DOI errors go to the failure list; the batch
// always completes.
inline BulkResult bulk_resolve(const Corpus& corpus, MetaCache& cache,
                               const MetaClientConfig& config) {
    std::vector<std::string> dois;
    std::set<std::string> seen;
    for (const Tweet& tweet : corpus) {
        if (!tweet.doi || tweet.title) continue;
        if (seen.insert(*tweet.doi).second) dois.push_back(*tweet.doi);
    }

    BulkResult result;
    std::mutex mutex;
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= dois.size()) return;
            const std::string& doi = dois[i];
            try {
                PaperMeta meta = resolve_title(doi, cache, config);
                std::lock_guard lock(mutex);
                result.titles.emplace(meta.doi, meta.title);
            } catch (const MetaError& e) {
                std::lock_guard lock(mutex);
                result.failures.push_back({doi, e.kind(), e.what()});
            }
        }
    };

    const std::size_t worker_count =
        std::min<std::size_t>(std::max(1, config.parallelism), std::max<std::size_t>(dois.size(), 1));
    std::vector<std::thread> threads;
    threads.reserve(worker_count);
    for (std::size_t i = 0; i < worker_count; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();

    std::sort(result.failures.begin(), result.failures.end(),
              [](const auto& a, const auto& b) { return a.doi < b.doi; });
    return result;
}

} // namespace scitweet
