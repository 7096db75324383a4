#include "hdq/linkcheck.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <mutex>
#include <thread>

// httplib pulls in OpenSSL only when explicitly enabled; plain HTTP plus
// redirect awareness is enough for resolvability probes.
#include <httplib.h>

#include "hdq/errors.hpp"
#include "hdq/version.hpp"
#include "util/csv.hpp"

namespace hdq {

std::string to_string(LinkState s) {
    switch (s) {
    case LinkState::Resolvable: return "resolvable";
    case LinkState::Unresolvable: return "unresolvable";
    case LinkState::Timeout: return "timeout";
    case LinkState::Redirected: return "redirected";
    }
    return "unresolvable";
}

void ResolverConfig::check_invariants() const {
    if (max_parallel < 1)
        throw Error(ErrorCode::MalformedInput, "max_parallel must be >= 1");
    if (mode == ResolverMode::Offline && fixture_map.empty())
        throw Error(ErrorCode::MalformedInput,
                    "offline link checking requires a fixture map");
}

std::map<std::string, FixtureOutcome> parse_fixture_csv(
    std::string_view bytes) {
    auto rows = csv::parse(bytes);
    std::map<std::string, FixtureOutcome> fixtures;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (i == 0 && row.size() == 2 && row[0] == "uri") continue;  // header
        if (row.size() != 2)
            throw Error(ErrorCode::MalformedInput,
                        "fixture CSV row " + std::to_string(i + 1) +
                            " must be uri,status");
        FixtureOutcome outcome;
        if (row[1] == "timeout") {
            outcome.timeout = true;
        } else {
            auto result = std::from_chars(
                row[1].data(), row[1].data() + row[1].size(),
                outcome.status_code);
            if (result.ec != std::errc())
                throw Error(ErrorCode::MalformedInput,
                            "fixture status must be an integer or 'timeout', "
                            "got '" +
                                row[1] + "'");
        }
        fixtures[row[0]] = outcome;
    }
    return fixtures;
}

LinkStatus OfflineResolver::probe(const std::string& uri) {
    LinkStatus status;
    status.uri = uri;
    auto it = fixtures_.find(uri);
    if (it == fixtures_.end()) {
        status.state = LinkState::Unresolvable;
        return status;
    }
    if (it->second.timeout) {
        status.state = LinkState::Timeout;
        return status;
    }
    int code = it->second.status_code;
    status.status_code = code;
    if (code >= 200 && code < 300) {
        status.state = LinkState::Resolvable;
    } else if (code >= 300 && code < 400) {
        status.state = LinkState::Redirected;
        status.final_uri = uri;  // fixtures carry no hop information
    } else {
        status.state = LinkState::Unresolvable;
    }
    return status;
}

LiveResolver::LiveResolver(std::chrono::milliseconds timeout)
    : timeout_(timeout) {}

namespace {

struct SplitUri {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

std::optional<SplitUri> split_uri(const std::string& uri) {
    auto scheme_end = uri.find("://");
    if (scheme_end == std::string::npos) return std::nullopt;
    auto path_start = uri.find('/', scheme_end + 3);
    SplitUri split;
    if (path_start == std::string::npos) {
        split.origin = uri;
        split.path = "/";
    } else {
        split.origin = uri.substr(0, path_start);
        split.path = uri.substr(path_start);
    }
    return split;
}

// Standard proxy environment variables (https_proxy falls back to
// http_proxy), returned as (host, port).
std::optional<std::pair<std::string, int>> proxy_from_environment(
    bool https) {
    const char* candidates[] = {https ? "https_proxy" : "http_proxy",
                                https ? "HTTPS_PROXY" : "HTTP_PROXY",
                                "http_proxy", "HTTP_PROXY"};
    const char* raw = nullptr;
    for (const char* name : candidates)
        if ((raw = std::getenv(name)) && *raw) break;
    if (!raw || !*raw) return std::nullopt;
    std::string value = raw;
    auto scheme = value.find("://");
    if (scheme != std::string::npos) value = value.substr(scheme + 3);
    if (!value.empty() && value.back() == '/') value.pop_back();
    auto colon = value.rfind(':');
    int port = 8080;
    std::string host = value;
    if (colon != std::string::npos) {
        host = value.substr(0, colon);
        try {
            port = std::stoi(value.substr(colon + 1));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (host.empty()) return std::nullopt;
    return std::make_pair(host, port);
}

}  // namespace

LinkStatus LiveResolver::probe(const std::string& uri) {
    LinkStatus status;
    status.uri = uri;
    auto begin = std::chrono::steady_clock::now();
    auto finish = [&] {
        status.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - begin);
        return status;
    };

    std::string current = uri;
    bool redirected = false;
    for (int hop = 0; hop <= 5; ++hop) {
        auto split = split_uri(current);
        if (!split) {
            status.state = LinkState::Unresolvable;
            return finish();
        }
        httplib::Client client(split->origin);
        client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout_));
        client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout_));
        client.set_default_headers(
            {{"User-Agent", std::string("heritage-dq-linkcheck/") + kVersion}});
        if (auto proxy = proxy_from_environment(
                split->origin.rfind("https://", 0) == 0))
            client.set_proxy(proxy->first.c_str(), proxy->second);

        auto result = client.Head(split->path);
        if (result && result->status == 405) result = client.Get(split->path);
        if (!result) {
            status.state = result.error() == httplib::Error::ConnectionTimeout ||
                                   result.error() == httplib::Error::Read
                               ? LinkState::Timeout
                               : LinkState::Unresolvable;
            return finish();
        }
        int code = result->status;
        if (code >= 300 && code < 400 && result->has_header("Location")) {
            redirected = true;
            std::string location = result->get_header_value("Location");
            if (!location.empty() && location[0] == '/')
                location = split->origin + location;
            current = location;
            continue;
        }
        status.status_code = code;
        if (code >= 200 && code < 300) {
            if (redirected) {
                status.state = LinkState::Redirected;
                status.final_uri = current;
            } else {
                status.state = LinkState::Resolvable;
            }
        } else {
            status.state = LinkState::Unresolvable;
        }
        return finish();
    }
    status.state = LinkState::Unresolvable;  // redirect loop
    return finish();
}

LinkStatus check_uri(const std::string& uri, const ResolverConfig& cfg,
                     Resolver& resolver) {
    if (!is_absolute_uri(uri))
        throw Error(ErrorCode::InvalidUri, "'" + uri + "' is not an absolute URI");
    LinkStatus status;
    for (std::size_t attempt = 0; attempt <= cfg.retries; ++attempt) {
        status = resolver.probe(uri);
        if (status.state != LinkState::Timeout) return status;
    }
    return status;
}

LinkStatus check_uri(const std::string& uri, const ResolverConfig& cfg) {
    cfg.check_invariants();
    if (cfg.mode == ResolverMode::Offline) {
        OfflineResolver resolver(cfg.fixture_map);
        return check_uri(uri, cfg, resolver);
    }
    LiveResolver resolver(cfg.timeout);
    return check_uri(uri, cfg, resolver);
}

LinkCheckReport check_dataset(const Dataset& d, const ResolverConfig& cfg,
                              Resolver& resolver) {
    LinkCheckReport report;
    for (const auto& e : d.elements) {
        for (std::size_t i = 0; i < e.links.size(); ++i) {
            const Link& l = e.links[i];
            if (l.target_kind != LinkKind::Interlink) continue;
            report.references[l.target].push_back(Path::link(e.id, i));
        }
    }
    std::vector<std::string> uris;
    uris.reserve(report.references.size());
    for (const auto& [uri, refs] : report.references) uris.push_back(uri);

    // One probe per distinct URI, at most max_parallel in flight.
    std::vector<LinkStatus> statuses(uris.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= uris.size()) return;
            statuses[i] = check_uri(uris[i], cfg, resolver);
        }
    };
    std::size_t workers = std::min<std::size_t>(
        std::max<std::size_t>(cfg.max_parallel, 1), uris.size());
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    report.statuses = std::move(statuses);  // uris came from an ordered map
    for (const auto& status : report.statuses) {
        if (status.reachable()) continue;
        const auto& refs = report.references.at(status.uri);
        std::string detail = to_string(status.state);
        if (status.status_code)
            detail += " (" + std::to_string(*status.status_code) + ")";
        Finding f;
        f.problem_id = "D05.5";
        f.dimension = builtin_catalog().primary_dimension("D05.5");
        f.path = refs.front();
        f.message = "interlink target '" + status.uri + "' is " + detail;
        f.evidence = status.uri;
        f.severity = Severity::Error;
        report.findings.push_back(std::move(f));
    }
    sort_findings(report.findings);
    return report;
}

LinkCheckReport check_dataset(const Dataset& d, const ResolverConfig& cfg) {
    cfg.check_invariants();
    if (cfg.mode == ResolverMode::Offline) {
        OfflineResolver resolver(cfg.fixture_map);
        return check_dataset(d, cfg, resolver);
    }
    LiveResolver resolver(cfg.timeout);
    return check_dataset(d, cfg, resolver);
}

}  // namespace hdq
