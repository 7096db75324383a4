#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hdq/detectors.hpp"
#include "hdq/model.hpp"

namespace hdq {

enum class LinkState { Resolvable, Unresolvable, Timeout, Redirected };

std::string to_string(LinkState s);

struct LinkStatus {
    std::string uri;
    LinkState state = LinkState::Unresolvable;
    std::optional<int> status_code;
    std::optional<std::string> final_uri;  // set when state == Redirected
    std::chrono::milliseconds elapsed{0};

    /// Redirected targets count as reachable for finding purposes.
    bool reachable() const {
        return state == LinkState::Resolvable || state == LinkState::Redirected;
    }
};

enum class ResolverMode { Live, Offline };

/// Offline fixtures map a URI to either an HTTP status code or a simulated
/// timeout.
struct FixtureOutcome {
    bool timeout = false;
    int status_code = 0;
};

struct ResolverConfig {
    ResolverMode mode = ResolverMode::Offline;
    std::chrono::milliseconds timeout{5000};
    std::size_t retries = 0;     // extra attempts after a timeout
    std::size_t max_parallel = 4;
    std::map<std::string, FixtureOutcome> fixture_map;

    /// Offline mode requires a fixture map; max_parallel must be >= 1.
    void check_invariants() const;
};

/// Fixture CSV: `uri,status` where status is an integer code or `timeout`.
std::map<std::string, FixtureOutcome> parse_fixture_csv(std::string_view bytes);

/// Single-URI probe interface so tests can instrument concurrency and
/// attempt counts. probe() is called once per attempt.
class Resolver {
public:
    virtual ~Resolver() = default;
    virtual LinkStatus probe(const std::string& uri) = 0;
};

/// Pure function of the fixture map.
class OfflineResolver : public Resolver {
public:
    explicit OfflineResolver(std::map<std::string, FixtureOutcome> fixtures)
        : fixtures_(std::move(fixtures)) {}
    LinkStatus probe(const std::string& uri) override;

private:
    std::map<std::string, FixtureOutcome> fixtures_;
};

/// HTTP HEAD with GET fallback (405 on HEAD retries as GET); follows up to
/// five redirect hops. User agent: heritage-dq-linkcheck/<version>.
class LiveResolver : public Resolver {
public:
    explicit LiveResolver(std::chrono::milliseconds timeout);
    LinkStatus probe(const std::string& uri) override;

private:
    std::chrono::milliseconds timeout_;
};

/// Checks one absolute URI, retrying timeouts up to cfg.retries extra
/// attempts. Throws Error(InvalidUri) for non-absolute URIs.
LinkStatus check_uri(const std::string& uri, const ResolverConfig& cfg);
LinkStatus check_uri(const std::string& uri, const ResolverConfig& cfg,
                     Resolver& resolver);

struct LinkCheckReport {
    /// One status per distinct interlink URI, sorted by URI.
    std::vector<LinkStatus> statuses;
    /// Which links point at each URI (paths in document order).
    std::map<std::string, std::vector<Path>> references;
    /// One availability finding per unreachable URI.
    std::vector<Finding> findings;
};

/// Probes every distinct interlink URI of the dataset with a worker pool
/// bounded by cfg.max_parallel. Output is sorted and scheduler-independent.
LinkCheckReport check_dataset(const Dataset& d, const ResolverConfig& cfg);
LinkCheckReport check_dataset(const Dataset& d, const ResolverConfig& cfg,
                              Resolver& resolver);

}  // namespace hdq
