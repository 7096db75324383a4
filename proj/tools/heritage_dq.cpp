// heritage-dq: quality assessment for semi-structured object description
// records. Subcommands: validate, profile, catalog, stats, linkcheck, export.
//
// Exit codes: 0 clean/pass, 1 quality-gate failure, 2 usage error,
// 3 I/O or parse failure.

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hdq/canonical.hpp"
#include "hdq/descriptor.hpp"
#include "hdq/detectors.hpp"
#include "hdq/errors.hpp"
#include "hdq/linkcheck.hpp"
#include "hdq/matrix.hpp"
#include "hdq/profile.hpp"
#include "hdq/stats.hpp"
#include "hdq/taxonomy.hpp"
#include "hdq/version.hpp"
#include "hdq/xml.hpp"

namespace {

using namespace hdq;

constexpr int kExitOk = 0;
constexpr int kExitGateFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << bytes;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

// Options shared by validate / profile / linkcheck / export.
struct CommonOptions {
    std::vector<std::string> inputs;
    std::string model_path;
    std::string config_path;
    std::string catalog_path;
    std::string format = "text";
    std::string output;
    std::string annotations_path;
    std::string fixtures_path;
    std::string fail_on;
    bool offline = false;
    bool deterministic = false;
    bool live = false;
    bool check_links = false;
    bool merge_reports = false;
    bool all_dimensions = false;
    std::size_t jobs = 1;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool with_inputs = true) {
    if (with_inputs)
        cmd->add_option("inputs", opt.inputs, "Record files (.xml or .json)");
    cmd->add_option("--model", opt.model_path, "Model descriptor JSON");
    cmd->add_option("--config", opt.config_path, "Detector configuration JSON");
    cmd->add_option("--catalog", opt.catalog_path,
                    "Problem catalog CSV (default: built-in)");
    cmd->add_option("--format", opt.format, "Report format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("-o,--output", opt.output, "Output file ('-' for stdout)");
    cmd->add_flag("--offline", opt.offline,
                  "Never touch the network; link checks need --fixtures");
    cmd->add_flag("--deterministic", opt.deterministic,
                  "Omit timestamps so outputs are byte-stable");
    cmd->add_option("--jobs", opt.jobs, "Process input files in parallel")
        ->check(CLI::PositiveNumber);
}

struct Pipeline {
    ModelDescriptor model;
    DetectorConfig config;
    const Catalog* catalog = &builtin_catalog();
    Catalog loaded_catalog{std::vector<ProblemType>{}};
    std::string digest;
};

Pipeline build_pipeline(const CommonOptions& opt) {
    Pipeline p;
    std::string descriptor_bytes = "{}";
    if (!opt.model_path.empty()) descriptor_bytes = read_file(opt.model_path);
    std::string base_dir = opt.model_path.empty()
                               ? std::string(".")
                               : std::filesystem::path(opt.model_path)
                                     .parent_path()
                                     .string();
    if (base_dir.empty()) base_dir = ".";
    p.model = parse_descriptor(descriptor_bytes, base_dir);

    // Precedence: detector config file over descriptor defaults. When no
    // config file is given, the descriptor's ingestion conventions apply to
    // detection too, so both sides analyze values the same way.
    std::string config_bytes = "{}";
    if (!opt.config_path.empty()) {
        config_bytes = read_file(opt.config_path);
        p.config = parse_detector_config(config_bytes);
        if (p.model.xml) p.model.xml->conventions = p.config.conventions;
    } else {
        p.config = parse_detector_config(config_bytes);
        if (p.model.xml) p.config.conventions = p.model.xml->conventions;
    }

    std::string catalog_bytes = "builtin";
    if (!opt.catalog_path.empty()) {
        catalog_bytes = read_file(opt.catalog_path);
        p.loaded_catalog = parse_catalog_csv(catalog_bytes);
        p.catalog = &p.loaded_catalog;
    }
    // Flags take precedence over config files over defaults; the digest
    // covers the effective state of all three layers.
    p.digest = config_digest(serialize_detector_config(p.config) +
                             descriptor_bytes + catalog_bytes);
    return p;
}

Dataset ingest(const std::string& path, const Pipeline& p,
               bool deterministic) {
    std::string bytes = read_file(path);
    std::filesystem::path fs_path(path);
    Dataset d;
    if (fs_path.extension() == ".xml") {
        if (!p.model.xml)
            throw Error(ErrorCode::MappingError,
                        "ingesting XML requires a descriptor with an 'xml' "
                        "mapping section (--model)");
        d = parse_xml(bytes, *p.model.xml);
    } else {
        d = parse_canonical(bytes, p.config.conventions);
    }
    d.check_invariants();
    if (d.id.empty()) d.id = fs_path.stem().string();
    d.source_info = deterministic ? path : path + " @ " + utc_timestamp();
    return d;
}

struct GateRule {
    bool by_severity = false;
    Severity severity = Severity::Error;
    DimensionId dimension = DimensionId::SyntacticAccuracy;
    std::size_t max_count = 0;
};

GateRule parse_fail_on(const std::string& spec) {
    GateRule rule;
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        rule.by_severity = true;
        rule.severity = severity_from_string(spec);  // throws MalformedInput
        return rule;
    }
    auto dim = dimension_from_key(spec.substr(0, colon));
    if (!dim)
        throw UsageError("--fail-on: unknown dimension '" +
                         spec.substr(0, colon) + "'");
    rule.dimension = *dim;
    try {
        rule.max_count = std::stoul(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw UsageError("--fail-on: '" + spec.substr(colon + 1) +
                         "' is not a count");
    }
    return rule;
}

bool gate_violated(const GateRule& rule, const QualityReport& report) {
    if (rule.by_severity) {
        return std::any_of(report.findings.begin(), report.findings.end(),
                           [&](const Finding& f) {
                               return static_cast<int>(f.severity) >=
                                      static_cast<int>(rule.severity);
                           });
    }
    for (const auto& p : report.profiles)
        if (p.dimension == rule.dimension)
            return p.finding_count > rule.max_count;
    return false;  // no findings in that dimension at all
}

QualityReport run_pipeline_on(const std::string& input, const Pipeline& p,
                              const CommonOptions& opt) {
    Dataset d = ingest(input, p, opt.deterministic);
    std::vector<Finding> findings = run_all(d, p.model, p.config, *p.catalog);

    if (opt.check_links) {
        ResolverConfig resolver;
        if (!opt.fixtures_path.empty()) {
            resolver.mode = ResolverMode::Offline;
            resolver.fixture_map =
                parse_fixture_csv(read_file(opt.fixtures_path));
        } else if (opt.live && !opt.offline) {
            resolver.mode = ResolverMode::Live;
        } else {
            throw UsageError(
                "link checking needs --fixtures <csv> or explicit --live");
        }
        LinkCheckReport links = check_dataset(d, resolver);
        findings.insert(findings.end(), links.findings.begin(),
                        links.findings.end());
    }
    if (!opt.annotations_path.empty()) {
        auto annotated = ingest_annotations(read_file(opt.annotations_path), d,
                                            *p.catalog);
        findings.insert(findings.end(), annotated.begin(), annotated.end());
    }
    sort_findings(findings);

    AggregateOptions options;
    options.include_zero_dimensions = opt.all_dimensions;
    options.config_digest = p.digest;
    if (!opt.deterministic) options.created_at = utc_timestamp();
    return aggregate(std::move(findings), d, *p.catalog, options);
}

int cmd_validate(const CommonOptions& opt, bool gated) {
    if (opt.inputs.empty()) throw UsageError("no input files given");
    Pipeline p = build_pipeline(opt);
    std::optional<GateRule> gate;
    if (gated && !opt.fail_on.empty()) gate = parse_fail_on(opt.fail_on);

    std::vector<QualityReport> reports(opt.inputs.size());
    if (opt.jobs > 1 && opt.inputs.size() > 1) {
        std::vector<std::future<QualityReport>> futures;
        futures.reserve(opt.inputs.size());
        for (const auto& input : opt.inputs)
            futures.push_back(std::async(std::launch::async, run_pipeline_on,
                                         input, std::cref(p), std::cref(opt)));
        for (std::size_t i = 0; i < futures.size(); ++i)
            reports[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < opt.inputs.size(); ++i)
            reports[i] = run_pipeline_on(opt.inputs[i], p, opt);
    }

    ReportFormat format = report_format_from_string(opt.format);
    std::string rendered;
    bool violated = false;
    if (opt.merge_reports && reports.size() > 1) {
        QualityReport merged = merge(reports);
        rendered = serialize_report(merged, format);
        violated = gate && gate_violated(*gate, merged);
    } else {
        // Output follows the input path order.
        for (std::size_t i = 0; i < reports.size(); ++i) {
            rendered += serialize_report(reports[i], format);
            if (gate && gate_violated(*gate, reports[i])) violated = true;
        }
    }
    write_output(opt.output, rendered);
    return violated ? kExitGateFailed : kExitOk;
}

int cmd_catalog(const std::string& action, const std::string& id,
                const CommonOptions& opt) {
    const Catalog* catalog = &builtin_catalog();
    Catalog loaded{std::vector<ProblemType>{}};
    if (!opt.catalog_path.empty()) {
        loaded = parse_catalog_csv(read_file(opt.catalog_path));
        catalog = &loaded;
    }
    if (action == "list") {
        std::string out;
        for (const auto& problem : catalog->problems()) {
            out += problem.id;
            out += '\t';
            out += problem.title;
            out += '\t';
            out += std::string(dimension_key(problem.primary_dimension));
            out += '\n';
        }
        write_output(opt.output, out);
        return kExitOk;
    }
    const ProblemType& problem = catalog->at(id);  // UnknownProblemId -> 2
    const Dimension& dim = dimension(problem.primary_dimension);
    std::ostringstream out;
    out << "id:         " << problem.id << "\n"
        << "title:      " << problem.title << "\n"
        << "dimension:  " << dim.key << " (" << dim.name << ")\n"
        << "parent:     " << to_string(dim.parent) << "\n"
        << "category:   "
        << (dim.category == DimensionCategory::Intrinsic ? "intrinsic"
                                                         : "contextual")
        << "\n"
        << "detectable: "
        << (problem.detectable == Detectability::Mechanical
                ? "mechanical"
                : "annotation_only")
        << "\n";
    if (!problem.other_dimensions.empty()) {
        out << "others:    ";
        for (auto other : problem.other_dimensions)
            out << " " << dimension_key(other);
        out << "\n";
    }
    write_output(opt.output, out.str());
    return kExitOk;
}

std::string format_stat(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2f", value);
    return buffer;
}

int cmd_stats(const std::string& matrix_path, double critical,
              std::size_t top, const CommonOptions& opt) {
    AssignmentMatrix m = parse_matrix_csv(read_file(matrix_path));
    auto shares = distribution(m);
    OrthogonalityMatrix om = pairwise_independence(m, 0.01, critical);

    if (opt.format == "json") {
        nlohmann::ordered_json doc;
        doc["problems"] = m.problem_count();
        doc["criticalValue"] = critical;
        doc["distribution"] = nlohmann::ordered_json::array();
        std::size_t total = 0;
        for (const auto& s : shares) total += s.count;
        for (const auto& s : shares)
            doc["distribution"].push_back(
                {{"dimension", std::string(dimension_key(s.dimension))},
                 {"count", s.count},
                 {"percent", s.percent}});
        doc["totalAssignments"] = total;
        doc["excluded"] = nlohmann::ordered_json::array();
        for (const auto& e : om.excluded())
            doc["excluded"].push_back(
                {{"dimension", std::string(dimension_key(e.dimension))},
                 {"reason", e.reason}});
        doc["pairs"] = nlohmann::ordered_json::array();
        for (const auto& r : om.results())
            doc["pairs"].push_back(
                {{"a", std::string(dimension_key(r.first))},
                 {"b", std::string(dimension_key(r.second))},
                 {"statistic", r.statistic},
                 {"significant", r.significant}});
        write_output(opt.output, doc.dump(2) + "\n");
        return kExitOk;
    }

    std::ostringstream out;
    out << "distribution of " << m.problem_count() << " problems:\n";
    out << "dimension,category,count,percent\n";
    std::size_t total = 0;
    for (const auto& s : shares) total += s.count;
    for (const auto& s : shares) {
        const Dimension& dim = dimension(s.dimension);
        out << dim.key << ","
            << (dim.category == DimensionCategory::Intrinsic ? "intrinsic"
                                                             : "contextual")
            << "," << s.count << "," << format_stat(s.percent) << "%\n";
    }
    out << "total,," << total << ",100.00%\n\n";

    if (!om.excluded().empty()) {
        out << "excluded from the pairwise analysis:\n";
        for (const auto& e : om.excluded())
            out << "  " << dimension_key(e.dimension) << ": " << e.reason
                << "\n";
        out << "\n";
    }

    out << "pairwise chi-square over " << om.dimensions().size()
        << " retained dimensions (" << om.results().size()
        << " pairs, critical " << format_stat(critical) << "):\n";
    out << "pair";
    for (auto dim : om.dimensions()) out << "," << dimension_key(dim);
    out << "\n";
    for (std::size_t i = 0; i < om.dimensions().size(); ++i) {
        out << dimension_key(om.dimensions()[i]);
        for (std::size_t j = 0; j < om.dimensions().size(); ++j) {
            out << ",";
            if (j < i)
                out << format_stat(
                    om.at(om.dimensions()[i], om.dimensions()[j]).statistic);
        }
        out << "\n";
    }

    if (top > 0) {
        out << "\ntop " << top << " pairs:\n";
        std::size_t rank = 1;
        for (const auto& r : top_pairs(om, top)) {
            out << rank++ << ". " << dimension_key(r.first) << ","
                << dimension_key(r.second) << "," << format_stat(r.statistic)
                << (r.significant ? ",significant" : ",independent") << "\n";
        }
    }
    write_output(opt.output, out.str());
    return kExitOk;
}

int cmd_linkcheck(const CommonOptions& opt, std::size_t max_parallel,
                  std::size_t retries, long timeout_ms) {
    if (opt.inputs.empty()) throw UsageError("no input files given");
    Pipeline p = build_pipeline(opt);

    ResolverConfig resolver;
    resolver.max_parallel = max_parallel;
    resolver.retries = retries;
    resolver.timeout = std::chrono::milliseconds(timeout_ms);
    if (!opt.fixtures_path.empty()) {
        resolver.mode = ResolverMode::Offline;
        resolver.fixture_map = parse_fixture_csv(read_file(opt.fixtures_path));
    } else if (opt.live && !opt.offline) {
        resolver.mode = ResolverMode::Live;
    } else {
        throw UsageError(
            "link checking needs --fixtures <csv> or explicit --live");
    }

    std::string out;
    for (const auto& input : opt.inputs) {
        Dataset d = ingest(input, p, opt.deterministic);
        LinkCheckReport report = check_dataset(d, resolver);
        if (opt.format == "json") {
            nlohmann::ordered_json doc;
            doc["dataset"] = d.id;
            doc["statuses"] = nlohmann::ordered_json::array();
            for (const auto& s : report.statuses) {
                nlohmann::ordered_json js;
                js["uri"] = s.uri;
                js["state"] = to_string(s.state);
                if (s.status_code) js["statusCode"] = *s.status_code;
                if (s.final_uri) js["finalUri"] = *s.final_uri;
                js["references"] = nlohmann::ordered_json::array();
                for (const auto& ref : report.references.at(s.uri))
                    js["references"].push_back(ref.str());
                doc["statuses"].push_back(std::move(js));
            }
            doc["findings"] = report.findings.size();
            out += doc.dump(2) + "\n";
        } else {
            out += "dataset," + d.id + "\n";
            out += "uri,state,status_code,references\n";
            for (const auto& s : report.statuses) {
                out += s.uri + "," + to_string(s.state) + ",";
                if (s.status_code) out += std::to_string(*s.status_code);
                out += "," +
                       std::to_string(report.references.at(s.uri).size()) +
                       "\n";
            }
            for (const auto& f : report.findings)
                out += "finding," + f.problem_id + "," + f.path.str() + "," +
                       f.evidence + "\n";
        }
    }
    write_output(opt.output, out);
    return kExitOk;
}

int cmd_export(const CommonOptions& opt, bool builtin_catalog_csv,
               bool builtin_matrix_csv) {
    if (builtin_catalog_csv) {
        write_output(opt.output, serialize_catalog_csv(builtin_catalog()));
        return kExitOk;
    }
    if (builtin_matrix_csv) {
        write_output(opt.output, serialize_matrix_csv(
                                     AssignmentMatrix::from_catalog(
                                         builtin_catalog())));
        return kExitOk;
    }
    if (opt.inputs.empty())
        throw UsageError(
            "export needs input files, --builtin-catalog or --builtin-matrix");
    Pipeline p = build_pipeline(opt);
    std::string out;
    for (const auto& input : opt.inputs)
        out += serialize_canonical(ingest(input, p, opt.deterministic));
    write_output(opt.output, out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quality assessment for semi-structured object description "
                 "records"};
    app.set_version_flag("--version", std::string("heritage-dq ") + kVersion);
    app.require_subcommand(1);

    CommonOptions opt;

    CLI::App* validate = app.add_subcommand(
        "validate", "Run detectors and gate the exit code on the findings");
    add_common_flags(validate, opt);
    validate->add_option("--fail-on", opt.fail_on,
                         "<dimension>:<max> or a severity name");
    validate->add_flag("--check-links", opt.check_links,
                       "Also probe interlink targets");
    validate->add_option("--fixtures", opt.fixtures_path,
                         "Offline link fixture CSV (uri,status)");
    validate->add_flag("--live", opt.live, "Allow live HTTP probes");
    validate->add_option("--annotations", opt.annotations_path,
                         "Manual findings CSV (path,problem_id,author,note)");
    validate->add_flag("--merge", opt.merge_reports,
                       "Merge all inputs into one report");
    validate->add_flag("--all-dimensions", opt.all_dimensions,
                       "Emit zero-count profile rows for all 23 dimensions");

    CLI::App* profile = app.add_subcommand(
        "profile", "Aggregate findings into a per-dimension quality profile");
    add_common_flags(profile, opt);
    profile->add_flag("--check-links", opt.check_links);
    profile->add_option("--fixtures", opt.fixtures_path);
    profile->add_flag("--live", opt.live);
    profile->add_option("--annotations", opt.annotations_path);
    profile->add_flag("--merge", opt.merge_reports);
    profile->add_flag("--all-dimensions", opt.all_dimensions);

    CLI::App* catalog = app.add_subcommand("catalog", "Inspect the problem catalog");
    catalog->require_subcommand(1);
    CLI::App* catalog_list = catalog->add_subcommand("list", "One line per problem");
    add_common_flags(catalog_list, opt, false);
    std::string show_id;
    CLI::App* catalog_show = catalog->add_subcommand("show", "Full record of one problem");
    catalog_show->add_option("id", show_id, "Problem id, e.g. D06.2")->required();
    add_common_flags(catalog_show, opt, false);

    std::string matrix_path;
    double critical = kDefaultCriticalValue;
    std::size_t top = 0;
    CLI::App* stats = app.add_subcommand(
        "stats", "Distribution and pairwise chi-square independence of an "
                 "assignment matrix");
    stats->add_option("matrix", matrix_path, "Assignment matrix CSV")->required();
    stats->add_option("--critical", critical,
                      "Significance cut-off (default 6.63)");
    stats->add_option("--top", top, "Also print the k highest pairs");
    add_common_flags(stats, opt, false);

    CLI::App* linkcheck = app.add_subcommand(
        "linkcheck", "Probe interlink targets for resolvability");
    add_common_flags(linkcheck, opt);
    std::size_t max_parallel = 4;
    std::size_t retries = 0;
    long timeout_ms = 5000;
    linkcheck->add_option("--fixtures", opt.fixtures_path,
                          "Offline fixture CSV (uri,status)");
    linkcheck->add_flag("--live", opt.live, "Allow live HTTP probes");
    linkcheck->add_option("--max-parallel", max_parallel, "Probe pool size")
        ->check(CLI::PositiveNumber);
    linkcheck->add_option("--retries", retries, "Extra attempts after timeouts");
    linkcheck->add_option("--timeout", timeout_ms, "Per-probe timeout in ms");

    CLI::App* export_cmd = app.add_subcommand(
        "export", "Write records in the canonical interchange format");
    add_common_flags(export_cmd, opt);
    bool builtin_catalog_csv = false;
    bool builtin_matrix_csv = false;
    export_cmd->add_flag("--builtin-catalog", builtin_catalog_csv,
                         "Write the built-in catalog as CSV");
    export_cmd->add_flag("--builtin-matrix", builtin_matrix_csv,
                         "Write the built-in primary assignment matrix as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt, true);
        if (profile->parsed()) return cmd_validate(opt, false);
        if (catalog->parsed()) {
            if (catalog_list->parsed()) return cmd_catalog("list", "", opt);
            return cmd_catalog("show", show_id, opt);
        }
        if (stats->parsed()) return cmd_stats(matrix_path, critical, top, opt);
        if (linkcheck->parsed())
            return cmd_linkcheck(opt, max_parallel, retries, timeout_ms);
        if (export_cmd->parsed())
            return cmd_export(opt, builtin_catalog_csv, builtin_matrix_csv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case ErrorCode::UnknownProblemId:
        case ErrorCode::UnsupportedFormat:
            return kExitUsage;
        default:
            return kExitIo;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
