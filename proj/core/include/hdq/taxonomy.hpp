#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hdq {

/// The 23 quality subdimensions, intrinsic first. Enumerator order is the
/// registry order used everywhere (tables, matrices, canonical pair order).
enum class DimensionId {
    SyntacticAccuracy,
    SemanticAccuracy,
    ExternalAccuracy,
    Compliance,
    Precision,
    InternalCompleteness,
    ExternalCompleteness,
    Relevance,
    Compactness,
    LogicalConsistency,
    Coherence,
    Availability,
    Confidentiality,
    Integrity,
    DataCurrency,
    DataUpdateCurrency,
    TimeConcurrency,
    Provenance,
    Trustworthiness,
    TemporalTraceability,
    CausalTraceability,
    Appropriateness,
    Versatility,
};

inline constexpr std::size_t kDimensionCount = 23;

enum class ParentDimension {
    Accuracy,
    Completeness,
    Conciseness,
    Consistency,
    Accessibility,
    Currency,
    Plausibility,
    Traceability,
    Understandability,
};

enum class DimensionCategory { Intrinsic, Contextual };

struct Dimension {
    DimensionId id;
    std::string_view key;   // stable snake_case identifier ("compliance")
    std::string_view name;  // display name ("Compliance")
    ParentDimension parent;
    DimensionCategory category;
    std::string_view definition;
};

/// All 23 subdimensions in registry order (11 intrinsic, then 12 contextual).
const std::array<Dimension, kDimensionCount>& registry();

const Dimension& dimension(DimensionId id);
std::string_view dimension_key(DimensionId id);
std::string_view dimension_name(DimensionId id);
std::string_view to_string(ParentDimension parent);

/// Resolves a snake_case key; empty optional when unknown.
std::optional<DimensionId> dimension_from_key(std::string_view key);

enum class Detectability { Mechanical, AnnotationOnly };

/// One cataloged quality problem: stable id, title, the primary dimension
/// it affects, optional further dimensions, and whether this engine can
/// detect it mechanically or only via manual annotation.
struct ProblemType {
    std::string id;
    std::string title;
    DimensionId primary_dimension;
    std::set<DimensionId> other_dimensions;
    Detectability detectable = Detectability::AnnotationOnly;
};

class Catalog {
public:
    explicit Catalog(std::vector<ProblemType> problems);

    const std::vector<ProblemType>& problems() const { return problems_; }
    std::size_t size() const { return problems_.size(); }

    const ProblemType* find(std::string_view problem_id) const;
    /// Throws Error(UnknownProblemId) when absent.
    const ProblemType& at(std::string_view problem_id) const;
    DimensionId primary_dimension(std::string_view problem_id) const;

private:
    std::vector<ProblemType> problems_;
};

/// The built-in 51-problem catalog (ids D01.1.1 through D12).
const Catalog& builtin_catalog();

/// Catalog CSV: header `problem_id,title,primary_dimension,other_dimensions,
/// detectable`; other_dimensions is a '|'-separated key list.
Catalog parse_catalog_csv(std::string_view bytes);
std::string serialize_catalog_csv(const Catalog& catalog);

}  // namespace hdq
