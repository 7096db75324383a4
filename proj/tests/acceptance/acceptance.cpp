// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hdq/canonical.hpp"
#include "hdq/descriptor.hpp"
#include "hdq/detectors.hpp"
#include "hdq/errors.hpp"
#include "hdq/linkcheck.hpp"
#include "hdq/matrix.hpp"
#include "hdq/profile.hpp"
#include "hdq/stats.hpp"
#include "hdq/taxonomy.hpp"
#include "hdq/xml.hpp"
#include "support/builders.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/table1.hpp"

using namespace hdq;
using namespace hdq::testing;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void expect_near(double actual, double expected, double tol,
                     const std::string& what) {
        if (std::abs(actual - expected) > tol) {
            std::ostringstream msg;
            msg << what << ": got " << actual << ", want " << expected
                << " +/- " << tol;
            failures.push_back(msg.str());
        }
    }
    void expect_under(double elapsed_ms, double budget_ms,
                      const std::string& what) {
        if (elapsed_ms > budget_ms) {
            std::ostringstream msg;
            msg << what << " took " << elapsed_ms << " ms, budget "
                << budget_ms << " ms";
            failures.push_back(msg.str());
        }
    }
};

ModelDescriptor load_descriptor() {
    return parse_descriptor(read_fixture("descriptor.json"), fixture_dir());
}

// ---- criterion 1: catalog fidelity ----------------------------------------

void criterion_catalog(Check& check) {
    const Catalog& catalog = builtin_catalog();
    check.expect(catalog.size() == 51, "catalog must hold 51 problems");

    std::map<DimensionId, std::size_t> tally;
    for (const auto& p : catalog.problems()) ++tally[p.primary_dimension];

    const std::pair<DimensionId, std::size_t> expected[] = {
        {DimensionId::InternalCompleteness, 9},
        {DimensionId::Compliance, 9},
        {DimensionId::Coherence, 6},
        {DimensionId::LogicalConsistency, 5},
        {DimensionId::Trustworthiness, 4},
        {DimensionId::Appropriateness, 2},
        {DimensionId::SyntacticAccuracy, 2},
        {DimensionId::SemanticAccuracy, 2},
        {DimensionId::ExternalAccuracy, 2},
        {DimensionId::Compactness, 2},
        {DimensionId::ExternalCompleteness, 2},
        {DimensionId::TemporalTraceability, 2},
        {DimensionId::Provenance, 1},
        {DimensionId::Availability, 1},
        {DimensionId::Precision, 1},
        {DimensionId::DataCurrency, 1},
        {DimensionId::Relevance, 0},
        {DimensionId::Confidentiality, 0},
        {DimensionId::Integrity, 0},
        {DimensionId::DataUpdateCurrency, 0},
        {DimensionId::TimeConcurrency, 0},
        {DimensionId::CausalTraceability, 0},
        {DimensionId::Versatility, 0},
    };
    std::size_t sum = 0;
    for (const auto& [dim, count] : expected) {
        sum += count;
        check.expect(tally[dim] == count,
                     std::string(dimension_key(dim)) + " primary tally: got " +
                         std::to_string(tally[dim]) + ", want " +
                         std::to_string(count));
    }
    check.expect(sum == 51, "reference tallies must sum to 51");
}

// ---- criterion 2: distribution reproduction --------------------------------

void criterion_distribution(Check& check) {
    AssignmentMatrix m =
        parse_matrix_csv(read_fixture("table1_marginals.csv"));
    auto shares = distribution(m);
    std::size_t total = 0;
    std::map<DimensionId, double> percent;
    for (const auto& s : shares) {
        total += s.count;
        percent[s.dimension] = s.percent;
    }
    check.expect(total == 185, "total assignments: got " +
                                   std::to_string(total) + ", want 185");
    check.expect_near(percent[DimensionId::Compliance], 13.51, 0.01,
                      "compliance share");
    check.expect_near(percent[DimensionId::Appropriateness], 12.97, 0.01,
                      "appropriateness share");
    check.expect_near(percent[DimensionId::InternalCompleteness], 11.35, 0.01,
                      "internal_completeness share");
    check.expect_near(percent[DimensionId::SyntacticAccuracy], 6.49, 0.01,
                      "syntactic_accuracy share");
}

// ---- criteria 3 and 4: golden chi-square values and significance -----------

const std::array<std::pair<ContingencyTable, double>, 3>& golden_tables() {
    static const std::array<std::pair<ContingencyTable, double>, 3> tables = {{
        {{2, 0, 1, 48}, 33.31},
        {{4, 4, 0, 43}, 23.33},
        {{1, 2, 0, 48}, 16.32},
    }};
    return tables;
}

void criterion_chi_square(Check& check) {
    const double reference[] = {33.3, 23.3, 16.3};
    std::size_t i = 0;
    for (const auto& [table, expected] : golden_tables()) {
        check.expect(table.n() == 51, "golden tables hold 51 problems");
        double statistic = chi_square(table);
        check.expect_near(statistic, expected, 0.005,
                          "statistic vs stated value");
        check.expect_near(statistic, reference[i], 0.05,
                          "statistic vs reference table");
        ++i;
    }
}

void criterion_significance(Check& check) {
    for (const auto& [table, expected] : golden_tables()) {
        check.expect(chi_square(table) > kDefaultCriticalValue,
                     "golden value must exceed the 6.63 cut-off");
    }
    ContingencyTable proportional{6, 2, 3, 1};  // O == E exactly
    check.expect(chi_square(proportional) <= kDefaultCriticalValue,
                 "proportional table must not be significant");

    AssignmentMatrix m =
        parse_matrix_csv(read_fixture("table1_marginals.csv"));
    OrthogonalityMatrix om = pairwise_independence(m);
    check.expect(om.at(DimensionId::CausalTraceability,
                       DimensionId::TemporalTraceability)
                     .significant,
                 "causal/temporal pair flagged significant");
    check.expect(
        om.at(DimensionId::Trustworthiness, DimensionId::Provenance).significant,
        "trustworthiness/provenance pair flagged significant");
    check.expect(om.at(DimensionId::DataCurrency,
                       DimensionId::DataUpdateCurrency)
                     .significant,
                 "currency pair flagged significant");
}

// ---- criterion 5: exclusion behavior ---------------------------------------

void criterion_exclusion(Check& check) {
    AssignmentMatrix m =
        parse_matrix_csv(read_fixture("table1_marginals.csv"));
    check.expect(m.dimensions().size() == 23, "fixture spans 23 dimensions");
    OrthogonalityMatrix om = pairwise_independence(m);
    check.expect(om.dimensions().size() == 20,
                 "exactly 20 dimensions retained, got " +
                     std::to_string(om.dimensions().size()));
    check.expect(om.excluded().size() == 3, "exactly 3 exclusions");
    std::set<DimensionId> excluded;
    for (const auto& e : om.excluded()) excluded.insert(e.dimension);
    check.expect(excluded == std::set<DimensionId>{DimensionId::Relevance,
                                                   DimensionId::Confidentiality,
                                                   DimensionId::Integrity},
                 "exclusions must be relevance, confidentiality, integrity");
    check.expect(om.results().size() == 190, "20 retained dimensions yield "
                                             "190 pairs");
}

// ---- criterion 6: randomized property suite --------------------------------

void criterion_properties(Check& check) {
    std::mt19937 rng(0xacce97);
    std::size_t matrices = 0;
    for (; matrices < 1000; ++matrices) {
        std::uniform_int_distribution<std::size_t> rows(10, 60);
        AssignmentMatrix m = random_assignment_matrix(rng, rows(rng));
        double n = static_cast<double>(m.problem_count());

        // Sample dimension pairs with usable margins.
        std::uniform_int_distribution<std::size_t> pick(0, kDimensionCount - 1);
        for (int trial = 0; trial < 6; ++trial) {
            std::size_t a = pick(rng);
            std::size_t b = pick(rng);
            if (a == b) continue;
            std::size_t sum_a = m.column_sum(a);
            std::size_t sum_b = m.column_sum(b);
            if (sum_a == 0 || sum_b == 0 || sum_a == m.problem_count() ||
                sum_b == m.problem_count())
                continue;
            ContingencyTable t =
                contingency(m, m.dimensions()[a], m.dimensions()[b]);
            double statistic = chi_square(t);
            check.expect(statistic >= 0.0 && statistic <= n * (1 + 1e-12),
                         "statistic must lie in [0, n]");
            ContingencyTable swapped{t.both, t.b_only, t.a_only, t.neither};
            check.expect(chi_square(swapped) == statistic,
                         "swapping the pair must be exact");
            double closed = chi_square_closed_form(t);
            double scale = std::max(1.0, std::abs(closed));
            check.expect(std::abs(statistic - closed) / scale <= 1e-9,
                         "summation and closed form must agree to 1e-9");
            if (!check.failures.empty() && check.failures.size() > 5) return;
        }

        // Row permutation invariance on a sample of matrices.
        if (matrices % 50 == 0) {
            std::vector<std::string> ids(m.problem_ids().rbegin(),
                                         m.problem_ids().rend());
            AssignmentMatrix reversed(ids, m.dimensions());
            for (std::size_t row = 0; row < m.problem_count(); ++row)
                for (std::size_t col = 0; col < m.dimensions().size(); ++col)
                    reversed.set(m.problem_count() - 1 - row, col,
                                 m.cell(row, col));
            OrthogonalityMatrix a = pairwise_independence(m);
            OrthogonalityMatrix b = pairwise_independence(reversed);
            bool equal = a.results().size() == b.results().size();
            for (std::size_t i = 0; equal && i < a.results().size(); ++i)
                equal = a.results()[i].statistic == b.results()[i].statistic;
            check.expect(equal, "row permutation must not change statistics");
        }
    }
    check.expect(matrices >= 1000, "at least 1000 randomized matrices");

    for (int i = 0; i < 1000; ++i) {
        ContingencyTable t = random_proportional_table(rng);
        check.expect(chi_square(t) < 1e-9,
                     "observed == expected must give a zero statistic");
        if (check.failures.size() > 5) return;
    }
}

// ---- criteria 7 and 8: detector suite and dimension mapping ----------------

struct DetectorCase {
    std::string detector;
    std::function<std::vector<Finding>(const Dataset&, const ModelDescriptor&,
                                       const DetectorConfig&)> run;
    Dataset seeded;
    Dataset clean;
    std::vector<std::pair<std::string, std::string>> expected;  // (id, path)
};

std::vector<DetectorCase> detector_cases() {
    ValueConventions conv;
    std::vector<DetectorCase> cases;

    auto object = [&](const char* id) {
        return ElementBuilder(id, "culturalObject").prop("name", id, conv);
    };

    cases.push_back(
        {"empty_fields", detect_empty_fields,
         DatasetBuilder().add(object("o1").prop("producer", "")).build(),
         DatasetBuilder().add(object("o1").prop("producer", "da Vinci")).build(),
         {{"D01.1.1", "o1/producer"}}});

    cases.push_back(
        {"missing_required", detect_missing_required,
         DatasetBuilder()
             .add(ElementBuilder("o1", "culturalObject").prop("width", "10 cm"))
             .build(),
         DatasetBuilder().add(object("o1")).build(),
         {{"D01.1.6", "o1"}}});

    cases.push_back(
        {"format_violations", detect_format_violations,
         DatasetBuilder().add(object("o1").prop("dating", "03.05.1920")).build(),
         DatasetBuilder().add(object("o1").prop("dating", "1920-05-03")).build(),
         {{"D11", "o1/dating"}}});

    cases.push_back(
        {"type_mismatch", detect_type_mismatch,
         DatasetBuilder().add(object("o1").prop("width", "abc")).build(),
         DatasetBuilder().add(object("o1").prop("width", "17.5 cm")).build(),
         {{"D12", "o1/width"}}});

    cases.push_back(
        {"vocabulary_violations", detect_vocabulary_violations,
         DatasetBuilder().add(object("o1").prop("material", "oill")).build(),
         DatasetBuilder().add(object("o1").prop("material", "oil")).build(),
         {{"D10.1", "o1/material"}}});

    cases.push_back(
        {"missing_authority_link", detect_missing_authority_link,
         DatasetBuilder()
             .add(ElementBuilder("p1", "person")
                      .prop("name", "x")
                      .prop("birthplace", "London"))
             .build(),
         DatasetBuilder()
             .add(ElementBuilder("p1", "person")
                      .prop("name", "x")
                      .prop("birthplace", "London")
                      .interlink("https://sws.geonames.org/2643743/",
                                 "birthplace"))
             .build(),
         {{"D10.2", "p1/birthplace"}}});

    cases.push_back(
        {"date_contradictions", detect_date_contradictions,
         DatasetBuilder()
             .add(ElementBuilder("p1", "person")
                      .prop("name", "x")
                      .prop("birthDate", "1900")
                      .prop("deathDate", "1890"))
             .build(),
         DatasetBuilder()
             .add(ElementBuilder("p1", "person")
                      .prop("name", "x")
                      .prop("birthDate", "1862")
                      .prop("deathDate", "1918"))
             .build(),
         {{"D02.5.1", "p1"}}});

    cases.push_back(
        {"dangling_references", detect_dangling_references,
         DatasetBuilder()
             .add(object("o1").internal_link("oX", "locatedIn"))
             .build(),
         DatasetBuilder()
             .add(object("o1").internal_link("pl1", "locatedIn"))
             .add(ElementBuilder("pl1", "place").prop("name", "Paris"))
             .build(),
         {{"D05.2", "o1/links[0]"}}});

    {
        DatasetBuilder seeded;
        seeded.add(object("o1").internal_link("pl", "locatedIn"));
        seeded.add(ElementBuilder("pl", "place").prop("name", "a"));
        seeded.add(ElementBuilder("pl", "place").prop("name", "b"));
        DatasetBuilder clean;
        clean.add(object("o1").internal_link("pl", "locatedIn"));
        clean.add(ElementBuilder("pl", "place").prop("name", "a"));
        cases.push_back({"ambiguous_references", detect_ambiguous_references,
                         seeded.build(), clean.build(),
                         {{"D05.3", "o1/links[0]"}}});
    }

    cases.push_back(
        {"duplicates", detect_duplicates,
         DatasetBuilder()
             .add(ElementBuilder("o1", "culturalObject")
                      .prop("name", "Mona Lisa")
                      .prop("producer", "da Vinci"))
             .add(ElementBuilder("o2", "culturalObject")
                      .prop("name", "Mona Lisa")
                      .prop("producer", "da Vinci"))
             .build(),
         DatasetBuilder()
             .add(ElementBuilder("o1", "culturalObject")
                      .prop("name", "Mona Lisa")
                      .prop("producer", "da Vinci"))
             .add(ElementBuilder("o2", "culturalObject")
                      .prop("name", "The Night Watch")
                      .prop("producer", "Rembrandt"))
             .build(),
         {{"D03.1", "o1"}}});

    cases.push_back(
        {"noncompact_values", detect_noncompact_values,
         DatasetBuilder().add(object("o1").prop("width", "007")).build(),
         DatasetBuilder().add(object("o1").prop("width", "70")).build(),
         {{"D03.2", "o1/width"}}});

    {
        DatasetBuilder seeded;
        seeded.add(object("o1").prop("width", "10 cm"));
        seeded.add(object("o2").prop("width", "100 mm"));
        DatasetBuilder clean;
        clean.add(object("o1").prop("width", "10 cm"));
        clean.add(object("o2").prop("width", "12 cm"));
        cases.push_back({"unit_incoherence", detect_unit_incoherence,
                         seeded.build(), clean.build(),
                         {{"D04.1", "o2/width"}}});
    }

    cases.push_back(
        {"missing_units", detect_missing_units,
         DatasetBuilder().add(object("o1").prop("width", "17.5")).build(),
         DatasetBuilder().add(object("o1").prop("width", "17.5 cm")).build(),
         {{"D04.2", "o1/width"}}});

    {
        DatasetBuilder seeded;
        seeded.add(object("o1").prop("dating", "ca. 1900"));
        seeded.add(object("o2").prop("dating", "1900?"));
        DataValue qualified = analyze_value("1900", conv);
        qualified.qualifiers = {"ca."};
        DataValue qualified2 = analyze_value("1920", conv);
        qualified2.qualifiers = {"ca."};
        DatasetBuilder clean;
        clean.add(object("o1").raw_prop("dating", qualified));
        clean.add(object("o2").raw_prop("dating", qualified2));
        cases.push_back({"uncertainty_issues", detect_uncertainty_issues,
                         seeded.build(), clean.build(),
                         {{"D06.5", "o1/dating"},
                          {"D06.5", "o2/dating"},
                          {"D06.8", "o2/dating"}}});
    }

    cases.push_back(
        {"multivalue_field", detect_multivalue_field,
         DatasetBuilder().add(object("o1").prop("creator", "a; b")).build(),
         DatasetBuilder().add(object("o1").prop("creator", "a")).build(),
         {{"D02.4.1", "o1/creator"}}});

    return cases;
}

void criterion_detectors(Check& check) {
    ModelDescriptor model = load_descriptor();
    DetectorConfig config;

    for (const auto& c : detector_cases()) {
        auto seeded = c.run(c.seeded, model, config);
        std::vector<std::pair<std::string, std::string>> got;
        for (const auto& f : seeded) got.emplace_back(f.problem_id, f.path.str());
        std::sort(got.begin(), got.end());
        auto expected = c.expected;
        std::sort(expected.begin(), expected.end());
        check.expect(got == expected, c.detector + ": seeded finding set");
        check.expect(c.run(c.clean, model, config).empty(),
                     c.detector + ": clean twin must be silent");
    }

    // The link resolver's availability problem behaves the same way.
    {
        ResolverConfig offline;
        offline.mode = ResolverMode::Offline;
        offline.fixture_map = {{"https://example.org/gone", {false, 404}},
                               {"https://example.org/ok", {false, 200}}};
        Dataset seeded =
            DatasetBuilder()
                .add(ElementBuilder("o1", "culturalObject")
                         .prop("name", "x")
                         .interlink("https://example.org/gone", "sameAs"))
                .build();
        Dataset clean =
            DatasetBuilder()
                .add(ElementBuilder("o1", "culturalObject")
                         .prop("name", "x")
                         .interlink("https://example.org/ok", "sameAs"))
                .build();
        auto bad = check_dataset(seeded, offline);
        check.expect(bad.findings.size() == 1 &&
                         bad.findings[0].problem_id == "D05.5" &&
                         bad.findings[0].path.str() == "o1/links[0]",
                     "linkcheck: seeded finding set");
        check.expect(check_dataset(clean, offline).findings.empty(),
                     "linkcheck: clean twin must be silent");
    }

    // Composite fixture: exactly the five seeded defects.
    XmlMapping mapping = *model.xml;
    Dataset composite = parse_xml(read_fixture("composite_seeded.xml"), mapping);
    auto findings = run_all(composite, model, config);
    std::vector<std::string> ids;
    for (const auto& f : findings) ids.push_back(f.problem_id);
    std::sort(ids.begin(), ids.end());
    check.expect(ids == std::vector<std::string>{"D01.1.1", "D02.5.1", "D05.2",
                                                 "D10.1", "D11"},
                 "composite fixture must yield exactly the 5 seeded problems");
    for (const auto& f : findings)
        check.expect(f.dimension ==
                         builtin_catalog().primary_dimension(f.problem_id),
                     "composite finding dimensions follow the catalog");
    Dataset clean = parse_xml(read_fixture("composite_clean.xml"), mapping);
    check.expect(run_all(clean, model, config).empty(),
                 "clean composite twin must be silent");
}

void criterion_dimension_mapping(Check& check) {
    ModelDescriptor model = load_descriptor();
    DetectorConfig config;
    const Catalog& catalog = builtin_catalog();

    std::size_t checked = 0;
    for (const auto& c : detector_cases()) {
        for (const Dataset* d : {&c.seeded, &c.clean}) {
            for (const auto& f : run_all(*d, model, config)) {
                ++checked;
                check.expect(f.dimension == catalog.primary_dimension(f.problem_id),
                             f.problem_id + " finding carries its catalog "
                                            "primary dimension");
                check.expect(f.path.resolves_in(*d),
                             f.problem_id + " finding path must resolve");
            }
        }
    }
    Dataset composite = parse_xml(read_fixture("composite_seeded.xml"),
                                  *model.xml);
    auto annotated = ingest_annotations(read_fixture("annotations.csv"),
                                        composite, catalog);
    for (const auto& f : annotated) {
        ++checked;
        check.expect(f.dimension == catalog.primary_dimension(f.problem_id),
                     "annotation dimension follows the catalog");
    }
    check.expect(checked > 20, "the mapping property must see real findings");
}

// ---- criterion 9: determinism on a 10k-element corpus ----------------------

std::string synthesize_corpus(std::size_t elements) {
    ValueConventions conv;
    DatasetBuilder builder("synthetic-10k");
    for (std::size_t i = 0; i < elements; ++i) {
        std::string id = "obj" + std::to_string(i);
        ElementBuilder e(id, "culturalObject");
        e.prop("name", "Object number " + std::to_string(i), conv);
        e.prop("width", std::to_string(10 + i % 180) + " cm", conv);
        e.prop("dating", std::to_string(1500 + i % 400), conv);
        // A sprinkling of defects keeps the detectors busy.
        if (i % 97 == 0) e.prop("producer", "", conv);
        if (i % 131 == 0) e.prop("material", "oill", conv);
        if (i % 113 == 0) e.internal_link("missing" + std::to_string(i), "locatedIn");
        builder.add(e);
    }
    return serialize_canonical(builder.build());
}

struct CliRun {
    int exit_code;
    std::string output;
};

CliRun run_cli(const std::string& args) {
    std::string command = std::string(HDQ_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buffer{};
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return {-1, "popen failed"};
    CliRun result{-1, ""};
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

void criterion_determinism(Check& check) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "hdq_acceptance";
    fs::create_directories(dir);
    fs::path corpus = dir / "corpus10k.json";
    {
        std::ofstream out(corpus, std::ios::binary);
        out << synthesize_corpus(10000);
    }
    fs::path out1 = dir / "report1.json";
    fs::path out2 = dir / "report2.json";

    std::string args = "validate " + corpus.string() + " --model " +
                       fixture_dir() + "/descriptor.json" +
                       " --deterministic --format json -o ";

    auto begin = Clock::now();
    CliRun first = run_cli(args + out1.string());
    double single_run_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - begin).count();
    CliRun second = run_cli(args + out2.string());

    check.expect(first.exit_code == 0,
                 "first run must succeed: " + first.output);
    check.expect(second.exit_code == 0, "second run must succeed");
    std::string bytes1 = read_file(out1.string());
    std::string bytes2 = read_file(out2.string());
    check.expect(!bytes1.empty(), "report must not be empty");
    check.expect(bytes1 == bytes2, "reports must be byte-identical");
    check.expect_under(single_run_ms, 5000.0, "single 10k-element run");
}

// ---- criterion 10: round trips ---------------------------------------------

void criterion_round_trips(Check& check) {
    std::mt19937 rng(0xc1a55);
    ValueConventions conv;

    // canonical parse . serialize = identity
    for (int i = 0; i < 100; ++i) {
        DatasetBuilder builder("rt" + std::to_string(i));
        std::uniform_int_distribution<int> count(0, 6);
        static const char* pool[] = {"x",      "17.5 cm",   "1920-05-03",
                                     "ca. 1900", "007",     "",
                                     "https://example.org/r", "um 1520"};
        int elements = count(rng) + 1;
        for (int e = 0; e < elements; ++e) {
            ElementBuilder eb("e" + std::to_string(e), "culturalObject");
            int props = count(rng);
            for (int p = 0; p < props; ++p)
                eb.prop("p" + std::to_string(p), pool[rng() % std::size(pool)],
                        conv);
            if (e % 2) eb.interlink("https://example.org/auth", "sameAs");
            builder.add(eb);
        }
        Dataset d = builder.build();
        Dataset back = parse_canonical(serialize_canonical(d), conv);
        check.expect(back == d, "canonical round trip must be the identity");
        if (!check.failures.empty()) return;
    }

    // report JSON round trip
    ModelDescriptor model = load_descriptor();
    Dataset composite = parse_xml(read_fixture("composite_seeded.xml"),
                                  *model.xml);
    AggregateOptions options;
    options.config_digest = "feedfacefeedface";
    QualityReport report = aggregate(run_all(composite, model, {}), composite,
                                     builtin_catalog(), options);
    QualityReport back =
        parse_report_json(serialize_report(report, ReportFormat::Json));
    check.expect(back == report, "report JSON round trip must be the identity");

    // matrix CSV round trip
    AssignmentMatrix m = build_table1_matrix();
    check.expect(parse_matrix_csv(serialize_matrix_csv(m)) == m,
                 "matrix CSV round trip must be the identity");
    check.expect(read_fixture("table1_marginals.csv") ==
                     serialize_matrix_csv(m),
                 "committed fixture must equal the generated matrix");
}

struct Criterion {
    int number;
    std::string label;
    double budget_ms;
    std::function<void(Check&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "catalog fidelity (51 problems, reference tallies)", 1000,
         criterion_catalog},
        {2, "distribution reproduction on the table1-marginals fixture", 1000,
         criterion_distribution},
        {3, "chi-square golden values 33.31 / 23.33 / 16.32", 1000,
         criterion_chi_square},
        {4, "significance gate at critical 6.63", 1000, criterion_significance},
        {5, "zero-marginal exclusion retains 20 of 23 dimensions", 1000,
         criterion_exclusion},
        {6, "randomized chi-square property suite (>= 1000 matrices)", 30000,
         criterion_properties},
        {7, "detector suite: seeded fixtures, clean twins, composite", 5000,
         criterion_detectors},
        {8, "finding dimensions equal catalog primary dimensions", 5000,
         criterion_dimension_mapping},
        {9, "deterministic byte-identical 10k-element validation", 15000,
         criterion_determinism},
        {10, "round trips: canonical, report JSON, matrix CSV", 5000,
         criterion_round_trips},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        Check check;
        auto begin = Clock::now();
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        double elapsed =
            std::chrono::duration<double, std::milli>(Clock::now() - begin)
                .count();
        check.expect_under(elapsed, criterion.budget_ms, "criterion runtime");

        bool ok = check.failures.empty();
        std::printf("criterion %2d: %s  %s  [%.0f ms]\n", criterion.number,
                    ok ? "PASS" : "FAIL", criterion.label.c_str(), elapsed);
        if (!ok) {
            ++failed;
            for (const auto& failure : check.failures)
                std::printf("              - %s\n", failure.c_str());
        }
    }
    if (failed) std::printf("%d criterion(s) failed\n", failed);
    return failed == 0 ? 0 : 1;
}
