#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hdq/descriptor.hpp"
#include "hdq/model.hpp"
#include "hdq/taxonomy.hpp"

namespace hdq {

enum class Severity { Info, Warning, Error };

std::string to_string(Severity s);
Severity severity_from_string(const std::string& s);

/// One detected (or annotated) occurrence of a catalog problem at a
/// specific node of a dataset.
struct Finding {
    std::string problem_id;
    DimensionId dimension;  // primary dimension of problem_id
    Path path;
    std::string message;
    std::string evidence;  // offending lexical content
    Severity severity = Severity::Warning;

    friend bool operator==(const Finding&, const Finding&) = default;
};

/// Tuning for the rule engine. Value conventions are shared with
/// ingestion so detectors see the same analysis of each lexical.
struct DetectorConfig {
    /// Detector ids to run; empty means all. See detector_ids().
    std::set<std::string> enabled;
    ValueConventions conventions;
    double duplicate_threshold = 0.9;  // token Jaccard, in [0,1]
    std::vector<std::string> multivalue_separators = {";"};
    /// (earlier, later) date property pairs checked for contradictions.
    std::vector<std::pair<std::string, std::string>> date_order_pairs = {
        {"birthDate", "deathDate"}};
    /// Recognizer for values that disambiguate themselves with a suffix,
    /// e.g. "London (United Kingdom)". Reserved for site-specific rules;
    /// stored and hashed into the config digest but not consumed by any
    /// built-in detector.
    std::string disambiguation_suffix = R"( \(.+\)$)";
    /// Number of parallel detector workers run_all may use.
    std::size_t workers = 1;

    bool is_enabled(std::string_view detector_id) const {
        return enabled.empty() || enabled.count(std::string(detector_id)) > 0;
    }

    /// Throws when threshold or grammar invariants are violated.
    void check_invariants() const;
};

DetectorConfig parse_detector_config(std::string_view json_bytes);
std::string serialize_detector_config(const DetectorConfig& c);

/// All detector ids, in the order run_all executes them.
const std::vector<std::string>& detector_ids();

// Individual detectors. Inputs are never rejected: bad data is the output,
// not an error.
std::vector<Finding> detect_empty_fields(const Dataset& d,
                                         const ModelDescriptor& m,
                                         const DetectorConfig& c);
std::vector<Finding> detect_missing_required(const Dataset& d,
                                             const ModelDescriptor& m,
                                             const DetectorConfig& c);
std::vector<Finding> detect_format_violations(const Dataset& d,
                                              const ModelDescriptor& m,
                                              const DetectorConfig& c);
std::vector<Finding> detect_type_mismatch(const Dataset& d,
                                          const ModelDescriptor& m,
                                          const DetectorConfig& c);
std::vector<Finding> detect_vocabulary_violations(const Dataset& d,
                                                  const ModelDescriptor& m,
                                                  const DetectorConfig& c);
std::vector<Finding> detect_missing_authority_link(const Dataset& d,
                                                   const ModelDescriptor& m,
                                                   const DetectorConfig& c);
std::vector<Finding> detect_date_contradictions(const Dataset& d,
                                                const ModelDescriptor& m,
                                                const DetectorConfig& c);
std::vector<Finding> detect_dangling_references(const Dataset& d,
                                                const ModelDescriptor& m,
                                                const DetectorConfig& c);
std::vector<Finding> detect_ambiguous_references(const Dataset& d,
                                                 const ModelDescriptor& m,
                                                 const DetectorConfig& c);
std::vector<Finding> detect_duplicates(const Dataset& d,
                                       const ModelDescriptor& m,
                                       const DetectorConfig& c);
std::vector<Finding> detect_noncompact_values(const Dataset& d,
                                              const ModelDescriptor& m,
                                              const DetectorConfig& c);
std::vector<Finding> detect_unit_incoherence(const Dataset& d,
                                             const ModelDescriptor& m,
                                             const DetectorConfig& c);
std::vector<Finding> detect_missing_units(const Dataset& d,
                                          const ModelDescriptor& m,
                                          const DetectorConfig& c);
std::vector<Finding> detect_uncertainty_issues(const Dataset& d,
                                               const ModelDescriptor& m,
                                               const DetectorConfig& c);
std::vector<Finding> detect_multivalue_field(const Dataset& d,
                                             const ModelDescriptor& m,
                                             const DetectorConfig& c);

/// Runs every enabled detector and merges the findings, sorted by
/// (path, problem id). Output is identical across runs and worker counts.
std::vector<Finding> run_all(const Dataset& d, const ModelDescriptor& m,
                             const DetectorConfig& c,
                             const Catalog& catalog = builtin_catalog());

/// Manual findings channel. CSV columns: path,problem_id,author,note.
/// Each row becomes an info-severity Finding carrying the problem's
/// primary dimension. Throws Error(UnknownProblemId) for ids outside the
/// catalog and Error(UnresolvablePath) for paths that do not resolve.
std::vector<Finding> ingest_annotations(std::string_view bytes,
                                        const Dataset& d,
                                        const Catalog& catalog);

/// Token-set Jaccard similarity of two elements' concatenated property
/// lexicals after normalization. Exposed for tests and tooling.
double element_similarity(const DataElement& a, const DataElement& b);

void sort_findings(std::vector<Finding>& findings);

}  // namespace hdq
