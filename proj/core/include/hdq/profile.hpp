#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdq/detectors.hpp"

namespace hdq {

struct DimensionProfile {
    DimensionId dimension;
    std::size_t finding_count = 0;
    std::size_t affected_elements = 0;  // distinct elements with a finding
    double density = 0.0;               // findings per 1000 properties

    friend bool operator==(const DimensionProfile&,
                           const DimensionProfile&) = default;
};

struct ReportTotals {
    std::size_t elements = 0;
    std::size_t properties = 0;
    std::size_t links = 0;
    std::size_t findings = 0;

    friend bool operator==(const ReportTotals&, const ReportTotals&) = default;
};

struct QualityReport {
    std::string dataset_id;
    /// ISO 8601 UTC creation stamp; absent in deterministic runs.
    std::optional<std::string> created_at;
    std::string config_digest;
    std::vector<DimensionProfile> profiles;  // registry order
    std::vector<Finding> findings;           // sorted by (path, problem id)
    ReportTotals totals;

    friend bool operator==(const QualityReport&, const QualityReport&) = default;
};

struct AggregateOptions {
    /// Emit a zero-count profile row for all 23 dimensions instead of only
    /// the dimensions that have findings.
    bool include_zero_dimensions = false;
    std::optional<std::string> created_at;
    std::string config_digest;
};

/// Folds findings into per-dimension profiles over the scanned dataset.
/// Throws Error(DanglingFindingPath) if a finding's path does not resolve.
QualityReport aggregate(std::vector<Finding> findings, const Dataset& dataset,
                        const Catalog& catalog = builtin_catalog(),
                        const AggregateOptions& options = {});

enum class ReportFormat { Json, Csv, Text };

ReportFormat report_format_from_string(const std::string& s);

/// Deterministic bytes for a report (byte-stable when created_at is unset).
/// Throws Error(UnsupportedFormat) for formats this build does not emit.
std::string serialize_report(const QualityReport& r, ReportFormat format);

/// Inverse of the JSON serialization.
QualityReport parse_report_json(std::string_view bytes);

/// Combines reports produced under the same configuration: findings
/// concatenate, totals add, profiles are recomputed, and the dataset id
/// becomes a '+'-joined composite label.
/// Throws Error(ConfigMismatch) when config digests differ.
QualityReport merge(const std::vector<QualityReport>& reports);

/// FNV-1a hash of the effective configuration, hex-encoded. Embedded in
/// reports so audits can prove which settings produced them.
std::string config_digest(std::string_view effective_config);

}  // namespace hdq
