#include "hdq/profile.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hdq/errors.hpp"
#include "util/csv.hpp"

namespace hdq {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_density(double density) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.4f", density);
    return buffer;
}

std::vector<DimensionProfile> build_profiles(
    const std::vector<Finding>& findings, std::size_t property_count,
    bool include_zero_dimensions) {
    std::map<DimensionId, std::size_t> counts;
    std::map<DimensionId, std::set<std::string>> elements;
    for (const auto& f : findings) {
        ++counts[f.dimension];
        elements[f.dimension].insert(f.path.element_id);
    }
    std::vector<DimensionProfile> profiles;
    for (const auto& dim : registry()) {
        auto it = counts.find(dim.id);
        if (it == counts.end() && !include_zero_dimensions) continue;
        DimensionProfile p;
        p.dimension = dim.id;
        p.finding_count = it == counts.end() ? 0 : it->second;
        p.affected_elements =
            it == counts.end() ? 0 : elements[dim.id].size();
        p.density = property_count == 0
                        ? 0.0
                        : 1000.0 * static_cast<double>(p.finding_count) /
                              static_cast<double>(property_count);
        profiles.push_back(p);
    }
    return profiles;
}

}  // namespace

QualityReport aggregate(std::vector<Finding> findings, const Dataset& dataset,
                        const Catalog& catalog,
                        const AggregateOptions& options) {
    for (const auto& f : findings) {
        if (!f.path.resolves_in(dataset))
            throw Error(ErrorCode::DanglingFindingPath,
                        "finding path '" + f.path.str() +
                            "' does not resolve in dataset '" + dataset.id +
                            "'");
        catalog.at(f.problem_id);  // unknown ids fail fast
    }
    sort_findings(findings);

    QualityReport r;
    r.dataset_id = dataset.id;
    r.created_at = options.created_at;
    r.config_digest = options.config_digest;
    r.totals.elements = dataset.elements.size();
    r.totals.properties = dataset.property_count();
    r.totals.links = dataset.link_count();
    r.totals.findings = findings.size();
    r.profiles = build_profiles(findings, r.totals.properties,
                                options.include_zero_dimensions);
    r.findings = std::move(findings);
    return r;
}

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "text") return ReportFormat::Text;
    throw Error(ErrorCode::UnsupportedFormat,
                "unknown report format '" + s + "'");
}

std::string serialize_report(const QualityReport& r, ReportFormat format) {
    switch (format) {
    case ReportFormat::Json: {
        ordered_json doc;
        doc["datasetId"] = r.dataset_id;
        if (r.created_at) doc["createdAt"] = *r.created_at;
        doc["configDigest"] = r.config_digest;
        doc["totals"] = {{"elements", r.totals.elements},
                         {"properties", r.totals.properties},
                         {"links", r.totals.links},
                         {"findings", r.totals.findings}};
        doc["profiles"] = ordered_json::array();
        for (const auto& p : r.profiles) {
            ordered_json jp;
            jp["dimension"] = std::string(dimension_key(p.dimension));
            jp["findingCount"] = p.finding_count;
            jp["affectedElements"] = p.affected_elements;
            jp["density"] = p.density;
            doc["profiles"].push_back(std::move(jp));
        }
        doc["findings"] = ordered_json::array();
        for (const auto& f : r.findings) {
            ordered_json jf;
            jf["problemId"] = f.problem_id;
            jf["dimension"] = std::string(dimension_key(f.dimension));
            jf["path"] = f.path.str();
            jf["message"] = f.message;
            jf["evidence"] = f.evidence;
            jf["severity"] = to_string(f.severity);
            doc["findings"].push_back(std::move(jf));
        }
        return doc.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
        // One row per finding, then a summary block: one row per profile
        // plus a totals row.
        std::string out = csv::join_row({"path", "problem_id", "dimension",
                                         "severity", "message", "evidence"});
        for (const auto& f : r.findings)
            out += csv::join_row({f.path.str(), f.problem_id,
                                  std::string(dimension_key(f.dimension)),
                                  to_string(f.severity), f.message,
                                  f.evidence});
        out += csv::join_row({"summary", "dimension", "finding_count",
                              "affected_elements", "density_per_1000", ""});
        for (const auto& p : r.profiles)
            out += csv::join_row({"summary",
                                  std::string(dimension_key(p.dimension)),
                                  std::to_string(p.finding_count),
                                  std::to_string(p.affected_elements),
                                  format_density(p.density), ""});
        out += csv::join_row({"totals", std::to_string(r.totals.elements),
                              std::to_string(r.totals.properties),
                              std::to_string(r.totals.links),
                              std::to_string(r.totals.findings), ""});
        return out;
    }
    case ReportFormat::Text: {
        std::ostringstream out;
        out << "dataset " << r.dataset_id << "\n";
        if (r.created_at) out << "created " << *r.created_at << "\n";
        out << "config " << r.config_digest << "\n";
        out << "elements " << r.totals.elements << "  properties "
            << r.totals.properties << "  links " << r.totals.links
            << "  findings " << r.totals.findings << "\n\n";

        // Dimensions ordered by finding count, ties by dimension key.
        auto sorted = r.profiles;
        std::sort(sorted.begin(), sorted.end(),
                  [](const DimensionProfile& a, const DimensionProfile& b) {
                      if (a.finding_count != b.finding_count)
                          return a.finding_count > b.finding_count;
                      return dimension_key(a.dimension) <
                             dimension_key(b.dimension);
                  });
        out << "dimension,findings,elements,per_1000_properties\n";
        for (const auto& p : sorted)
            out << dimension_key(p.dimension) << "," << p.finding_count << ","
                << p.affected_elements << "," << format_density(p.density)
                << "\n";
        if (!r.findings.empty()) {
            out << "\nfindings:\n";
            for (const auto& f : r.findings) {
                out << to_string(f.severity) << "  " << f.path.str() << "  "
                    << f.problem_id << "  " << f.message;
                if (!f.evidence.empty()) out << "  [" << f.evidence << "]";
                out << "\n";
            }
        }
        return out.str();
    }
    }
    throw Error(ErrorCode::UnsupportedFormat, "unhandled report format");
}

QualityReport parse_report_json(std::string_view bytes) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedInput, e.what());
    }
    try {
        QualityReport r;
        r.dataset_id = doc.at("datasetId").get<std::string>();
        if (doc.contains("createdAt"))
            r.created_at = doc["createdAt"].get<std::string>();
        r.config_digest = doc.at("configDigest").get<std::string>();
        const auto& totals = doc.at("totals");
        r.totals.elements = totals.at("elements").get<std::size_t>();
        r.totals.properties = totals.at("properties").get<std::size_t>();
        r.totals.links = totals.at("links").get<std::size_t>();
        r.totals.findings = totals.at("findings").get<std::size_t>();
        for (const auto& jp : doc.at("profiles")) {
            DimensionProfile p;
            auto dim = dimension_from_key(jp.at("dimension").get<std::string>());
            if (!dim)
                throw Error(ErrorCode::UnknownDimension,
                            "unknown dimension in report profiles");
            p.dimension = *dim;
            p.finding_count = jp.at("findingCount").get<std::size_t>();
            p.affected_elements = jp.at("affectedElements").get<std::size_t>();
            p.density = jp.at("density").get<double>();
            r.profiles.push_back(p);
        }
        for (const auto& jf : doc.at("findings")) {
            Finding f;
            f.problem_id = jf.at("problemId").get<std::string>();
            auto dim = dimension_from_key(jf.at("dimension").get<std::string>());
            if (!dim)
                throw Error(ErrorCode::UnknownDimension,
                            "unknown dimension in report findings");
            f.dimension = *dim;
            f.path = Path::parse(jf.at("path").get<std::string>());
            f.message = jf.at("message").get<std::string>();
            f.evidence = jf.at("evidence").get<std::string>();
            f.severity = severity_from_string(jf.at("severity").get<std::string>());
            r.findings.push_back(std::move(f));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedInput, e.what());
    }
}

QualityReport merge(const std::vector<QualityReport>& reports) {
    if (reports.empty()) return {};
    QualityReport merged;
    merged.config_digest = reports.front().config_digest;
    merged.created_at = reports.front().created_at;
    std::string label;
    for (const auto& r : reports) {
        if (r.config_digest != merged.config_digest)
            throw Error(ErrorCode::ConfigMismatch,
                        "cannot merge reports produced under different "
                        "configurations");
        if (!label.empty()) label += "+";
        label += r.dataset_id;
        merged.totals.elements += r.totals.elements;
        merged.totals.properties += r.totals.properties;
        merged.totals.links += r.totals.links;
        merged.totals.findings += r.totals.findings;
        merged.findings.insert(merged.findings.end(), r.findings.begin(),
                               r.findings.end());
    }
    merged.dataset_id = label;
    sort_findings(merged.findings);
    bool include_zeros = std::any_of(
        reports.begin(), reports.end(), [](const QualityReport& r) {
            return r.profiles.size() == kDimensionCount;
        });
    merged.profiles = build_profiles(merged.findings, merged.totals.properties,
                                     include_zeros);
    return merged;
}

std::string config_digest(std::string_view effective_config) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : effective_config) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx",
                  static_cast<unsigned long long>(hash));
    return buffer;
}

}  // namespace hdq
