#include "hdq/taxonomy.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hdq/errors.hpp"
#include "util/csv.hpp"

namespace hdq {
namespace {

constexpr DimensionId D(int i) { return static_cast<DimensionId>(i); }

using P = ParentDimension;
using C = DimensionCategory;

const std::array<Dimension, kDimensionCount> kRegistry = {{
    {D(0), "syntactic_accuracy", "Syntactic Accuracy", P::Accuracy, C::Intrinsic,
     "Degree to which the dataset conforms to the syntax of the employed data "
     "description language and, where applicable, the associated data model."},
    {D(1), "semantic_accuracy", "Semantic Accuracy", P::Accuracy, C::Intrinsic,
     "Degree to which the dataset correctly represents information of the "
     "domain of interest."},
    {D(2), "external_accuracy", "External Accuracy", P::Accuracy, C::Intrinsic,
     "Degree to which all interlinks in a dataset are valid and refer to the "
     "intended data elements in external datasets."},
    {D(3), "compliance", "Compliance", P::Accuracy, C::Intrinsic,
     "Degree to which the dataset conforms to rules and guidelines established "
     "for the employed data description language and, where applicable, the "
     "associated data model."},
    {D(4), "precision", "Precision", P::Accuracy, C::Intrinsic,
     "Degree of exactness of recorded data values, evaluated with respect to "
     "the requirements of a particular context of use."},
    {D(5), "internal_completeness", "Internal Completeness", P::Completeness,
     C::Intrinsic,
     "Degree to which a dataset contains all data elements of the domain of "
     "interest required for a particular context of use, each including the "
     "properties and links required for that context."},
    {D(6), "external_completeness", "External Completeness", P::Completeness,
     C::Intrinsic,
     "Degree to which a dataset contains all interlinks to external datasets "
     "that are required for a particular context of use."},
    {D(7), "relevance", "Relevance", P::Conciseness, C::Intrinsic,
     "Degree to which a dataset contains only those data elements, links and "
     "properties required for a particular context of use."},
    {D(8), "compactness", "Compactness", P::Conciseness, C::Intrinsic,
     "Degree to which a dataset contains no redundant elements and all "
     "elements and values are as condensed as possible."},
    {D(9), "logical_consistency", "Logical Consistency", P::Consistency,
     C::Intrinsic,
     "Degree to which a dataset is free from logical contradictions within a "
     "given domain of interest and context of use."},
    {D(10), "coherence", "Coherence", P::Consistency, C::Intrinsic,
     "Degree to which the dataset contains coherent data elements, whose "
     "properties, links and values express the same information consistently."},
    {D(11), "availability", "Availability", P::Accessibility, C::Contextual,
     "Degree to which data can be accessed when required for a given context "
     "of use."},
    {D(12), "confidentiality", "Confidentiality", P::Accessibility,
     C::Contextual,
     "Degree to which access is restricted to authorized users, protecting "
     "sensitive data according to the requirements of the context of use."},
    {D(13), "integrity", "Integrity", P::Accessibility, C::Contextual,
     "Degree to which data remains free from unintentional or unauthorized "
     "alterations, preserving its intended state over time."},
    {D(14), "data_currency", "Data Currency", P::Currency, C::Contextual,
     "Degree to which a dataset contains up-to-date information relevant to "
     "the domain of interest."},
    {D(15), "data_update_currency", "Data Update Currency", P::Currency,
     C::Contextual,
     "Degree to which a dataset is updated promptly after information in the "
     "domain of interest has changed."},
    {D(16), "time_concurrency", "Time Concurrency", P::Currency, C::Contextual,
     "Degree to which all data elements, including their values and links, "
     "refer consistently to the same version of information in the domain."},
    {D(17), "provenance", "Provenance", P::Plausibility, C::Contextual,
     "Degree to which a dataset, including its elements and values, is "
     "equipped with verifiable information about its origin."},
    {D(18), "trustworthiness", "Trustworthiness", P::Plausibility,
     C::Contextual,
     "Degree to which a dataset, including its elements and values, is "
     "believed by a relevant community within a specific context of use."},
    {D(19), "temporal_traceability", "Temporal Traceability", P::Traceability,
     C::Contextual,
     "Degree to which a dataset has an audit trail of access and a history of "
     "changes within a particular context of use."},
    {D(20), "causal_traceability", "Causal Traceability", P::Traceability,
     C::Contextual,
     "Degree to which causal dependencies among dataset updates are "
     "documented and accessible for a given context of use."},
    {D(21), "appropriateness", "Appropriateness", P::Understandability,
     C::Contextual,
     "Ease with which data can be understood without ambiguity within a given "
     "context of use."},
    {D(22), "versatility", "Versatility", P::Understandability, C::Contextual,
     "Extent to which data is available in different forms across cultural "
     "perspectives, technology platforms, and user sensory abilities."},
}};

struct CatalogRow {
    const char* id;
    const char* title;
    DimensionId primary;
    Detectability detectable;
};

constexpr Detectability kMech = Detectability::Mechanical;
constexpr Detectability kAnno = Detectability::AnnotationOnly;

// Built-in problem catalog. Mechanical rows are the ones a detector in this
// engine emits; everything else enters through the annotation channel.
const CatalogRow kCatalogRows[] = {
    {"D01.1.1", "Lack of data — empty fields",
     DimensionId::InternalCompleteness, kMech},
    {"D01.1.2", "Lack of data — incomplete fields",
     DimensionId::InternalCompleteness, kAnno},
    {"D01.1.3", "Lack of records", DimensionId::InternalCompleteness, kAnno},
    {"D01.1.4", "Lack of source", DimensionId::Provenance, kAnno},
    {"D01.1.5",
     "Lack of information about the person responsible for uncertain "
     "statements",
     DimensionId::Trustworthiness, kAnno},
    {"D01.1.6", "Lack of metadata", DimensionId::InternalCompleteness, kMech},
    {"D01.1.7", "Lack of rights statement and/or license",
     DimensionId::InternalCompleteness, kAnno},
    {"D01.1.8", "No rating of a source in the data",
     DimensionId::Trustworthiness, kAnno},
    {"D01.2", "Unmarked multilingualism", DimensionId::Appropriateness, kAnno},
    {"D01.3.1", "Heterogeneous structural representations",
     DimensionId::Coherence, kAnno},
    {"D01.3.2", "Heterogeneous precision of data", DimensionId::Coherence,
     kAnno},
    {"D01.3.3", "Heterogeneous qualifiers of uncertainty",
     DimensionId::Coherence, kAnno},
    {"D01.3.4", "Heterogeneous value representations", DimensionId::Coherence,
     kAnno},
    {"D02.1", "Spelling errors", DimensionId::Compliance, kAnno},
    {"D02.2", "Incorrect information", DimensionId::SemanticAccuracy, kAnno},
    {"D02.3", "Incorrect use of controlled vocabulary / authority file",
     DimensionId::ExternalAccuracy, kAnno},
    {"D02.4", "Incorrectly placed information", DimensionId::Compliance, kAnno},
    {"D02.4.1", "Multiple units of information in a single repeatable field",
     DimensionId::Compliance, kMech},
    {"D02.5.1", "Non-matching date dependencies",
     DimensionId::LogicalConsistency, kMech},
    {"D02.5.2", "Non-matching functional dependencies of categorizations",
     DimensionId::LogicalConsistency, kAnno},
    {"D02.5.3", "Non-matching dependencies of spatial statements",
     DimensionId::LogicalConsistency, kAnno},
    {"D02.5.4", "Violation of dependencies between mandatory statements",
     DimensionId::InternalCompleteness, kAnno},
    {"D03.1", "Multiple data elements describing the same entity",
     DimensionId::Compactness, kMech},
    {"D03.2", "Redundancies in data", DimensionId::Compactness, kMech},
    {"D04.1", "Inconsistent use of units or metric systems",
     DimensionId::Coherence, kMech},
    {"D04.2", "Missing units of measurement",
     DimensionId::InternalCompleteness, kMech},
    {"D05.1", "Missing references between data records",
     DimensionId::ExternalCompleteness, kAnno},
    {"D05.2", "Reference to a non-existent data record",
     DimensionId::ExternalCompleteness, kMech},
    {"D05.3", "Ambiguous reference to a data record",
     DimensionId::LogicalConsistency, kMech},
    {"D05.4", "Ambiguous reference to described (real) entity",
     DimensionId::ExternalAccuracy, kAnno},
    {"D05.5", "Untraceable resource from URI namespaces",
     DimensionId::Availability, kMech},
    {"D06.1", "Questionable data", DimensionId::Trustworthiness, kAnno},
    {"D06.2", "Imprecision", DimensionId::Precision, kAnno},
    {"D06.3", "Contradiction", DimensionId::LogicalConsistency, kAnno},
    {"D06.4", "Unmarked uncertainties in data",
     DimensionId::InternalCompleteness, kAnno},
    {"D06.5", "Implicitly marked uncertainties", DimensionId::Compliance,
     kMech},
    {"D06.6", "Undescribed dependencies between uncertain statements",
     DimensionId::SemanticAccuracy, kAnno},
    {"D06.7", "Lack of qualification of uncertainty", DimensionId::Compliance,
     kAnno},
    {"D06.7.1", "Indeterminate degree of uncertainty", DimensionId::Compliance,
     kAnno},
    {"D06.8", "Heterogeneous representations of uncertainty",
     DimensionId::Coherence, kMech},
    {"D07.1", "Undocumented data dynamics (in the data itself)",
     DimensionId::TemporalTraceability, kAnno},
    {"D07.2", "Undocumented data changes caused by model dynamics",
     DimensionId::TemporalTraceability, kAnno},
    {"D07.3", "Outdated data", DimensionId::DataCurrency, kAnno},
    {"D08", "Subjectivity", DimensionId::Trustworthiness, kAnno},
    {"D09", "Implicit knowledge", DimensionId::InternalCompleteness, kAnno},
    {"D09.1", "Use of non-standard symbols to express certain facts",
     DimensionId::Appropriateness, kAnno},
    {"D10.1", "Violation of controlled vocabularies (use of custom values)",
     DimensionId::SyntacticAccuracy, kMech},
    {"D10.2", "Lack of reference to authority data (global comparability)",
     DimensionId::Compliance, kMech},
    {"D10.3", "Unnecessary use of custom controlled vocabulary",
     DimensionId::Compliance, kAnno},
    {"D11", "Violation of format specifications", DimensionId::Compliance,
     kMech},
    {"D12", "Incompatible data types", DimensionId::SyntacticAccuracy, kMech},
};

}  // namespace

const std::array<Dimension, kDimensionCount>& registry() { return kRegistry; }

const Dimension& dimension(DimensionId id) {
    return kRegistry[static_cast<std::size_t>(id)];
}

std::string_view dimension_key(DimensionId id) { return dimension(id).key; }
std::string_view dimension_name(DimensionId id) { return dimension(id).name; }

std::string_view to_string(ParentDimension parent) {
    switch (parent) {
    case ParentDimension::Accuracy: return "Accuracy";
    case ParentDimension::Completeness: return "Completeness";
    case ParentDimension::Conciseness: return "Conciseness";
    case ParentDimension::Consistency: return "Consistency";
    case ParentDimension::Accessibility: return "Accessibility";
    case ParentDimension::Currency: return "Currency";
    case ParentDimension::Plausibility: return "Plausibility";
    case ParentDimension::Traceability: return "Traceability";
    case ParentDimension::Understandability: return "Understandability";
    }
    return "";
}

std::optional<DimensionId> dimension_from_key(std::string_view key) {
    for (const auto& d : kRegistry)
        if (d.key == key) return d.id;
    return std::nullopt;
}

Catalog::Catalog(std::vector<ProblemType> problems)
    : problems_(std::move(problems)) {
    std::set<std::string> seen;
    for (const auto& p : problems_) {
        if (!seen.insert(p.id).second)
            throw Error(ErrorCode::DuplicateLabel,
                        "problem id '" + p.id + "' occurs more than once");
        if (p.other_dimensions.count(p.primary_dimension))
            throw Error(ErrorCode::MultiplePrimary,
                        "problem '" + p.id +
                            "' lists its primary dimension among the others");
    }
}

const ProblemType* Catalog::find(std::string_view problem_id) const {
    for (const auto& p : problems_)
        if (p.id == problem_id) return &p;
    return nullptr;
}

const ProblemType& Catalog::at(std::string_view problem_id) const {
    const ProblemType* p = find(problem_id);
    if (!p)
        throw Error(ErrorCode::UnknownProblemId,
                    "no catalog entry '" + std::string(problem_id) + "'");
    return *p;
}

DimensionId Catalog::primary_dimension(std::string_view problem_id) const {
    return at(problem_id).primary_dimension;
}

const Catalog& builtin_catalog() {
    static const Catalog catalog = [] {
        std::vector<ProblemType> problems;
        problems.reserve(std::size(kCatalogRows));
        for (const auto& row : kCatalogRows)
            problems.push_back(
                {row.id, row.title, row.primary, {}, row.detectable});
        return Catalog(std::move(problems));
    }();
    return catalog;
}

Catalog parse_catalog_csv(std::string_view bytes) {
    auto rows = csv::parse(bytes);
    if (rows.empty())
        throw Error(ErrorCode::MalformedInput, "catalog CSV is empty");
    const std::vector<std::string> expected = {
        "problem_id", "title", "primary_dimension", "other_dimensions",
        "detectable"};
    if (rows[0] != expected)
        throw Error(ErrorCode::MalformedInput, "catalog CSV header mismatch");

    std::vector<ProblemType> problems;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != 5)
            throw Error(ErrorCode::MalformedInput,
                        "catalog CSV row " + std::to_string(i + 1) +
                            " has " + std::to_string(row.size()) + " fields");
        ProblemType p;
        p.id = row[0];
        p.title = row[1];
        auto primary = dimension_from_key(row[2]);
        if (!primary)
            throw Error(ErrorCode::UnknownDimension,
                        "unknown dimension '" + row[2] + "' in row " +
                            std::to_string(i + 1));
        p.primary_dimension = *primary;
        if (!row[3].empty()) {
            std::stringstream parts(row[3]);
            std::string key;
            while (std::getline(parts, key, '|')) {
                auto other = dimension_from_key(key);
                if (!other)
                    throw Error(ErrorCode::UnknownDimension,
                                "unknown dimension '" + key + "' in row " +
                                    std::to_string(i + 1));
                p.other_dimensions.insert(*other);
            }
        }
        if (row[4] == "mechanical")
            p.detectable = Detectability::Mechanical;
        else if (row[4] == "annotation_only")
            p.detectable = Detectability::AnnotationOnly;
        else
            throw Error(ErrorCode::MalformedInput,
                        "unknown detectability '" + row[4] + "'");
        problems.push_back(std::move(p));
    }
    return Catalog(std::move(problems));
}

std::string serialize_catalog_csv(const Catalog& catalog) {
    std::string out = "problem_id,title,primary_dimension,other_dimensions,detectable\n";
    for (const auto& p : catalog.problems()) {
        std::string others;
        for (auto d : p.other_dimensions) {
            if (!others.empty()) others.push_back('|');
            others += std::string(dimension_key(d));
        }
        out += csv::join_row(
            {p.id, p.title, std::string(dimension_key(p.primary_dimension)),
             others,
             p.detectable == Detectability::Mechanical ? "mechanical"
                                                       : "annotation_only"});
    }
    return out;
}

}  // namespace hdq
