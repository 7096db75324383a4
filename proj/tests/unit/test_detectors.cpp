#include <doctest.h>

#include <algorithm>
#include <set>

#include "hdq/detectors.hpp"
#include "hdq/errors.hpp"
#include "support/builders.hpp"
#include "support/fixtures.hpp"

using namespace hdq;
using namespace hdq::testing;

namespace {

ModelDescriptor fixture_descriptor() {
    return parse_descriptor(read_fixture("descriptor.json"), fixture_dir());
}

std::vector<std::string> problem_ids(const std::vector<Finding>& findings) {
    std::vector<std::string> ids;
    for (const auto& f : findings) ids.push_back(f.problem_id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace

TEST_CASE("empty fields detector (D01.1.1)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    SUBCASE("one empty property") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "Mona Lisa")
                                 .prop("producer", ""))
                        .build();
        auto findings = detect_empty_fields(d, m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D01.1.1");
        CHECK(findings[0].dimension == DimensionId::InternalCompleteness);
        CHECK(findings[0].path.str() == "o1/producer");
        CHECK(findings[0].severity == Severity::Error);
    }
    SUBCASE("clean twin") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "Mona Lisa")
                                 .prop("producer", "da Vinci"))
                        .build();
        CHECK(detect_empty_fields(d, m, c).empty());
    }
    SUBCASE("three empty properties across two elements, distinct paths") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("producer", "")
                                 .prop("material", "   "))
                        .add(ElementBuilder("o2", "culturalObject")
                                 .prop("producer", ""))
                        .build();
        auto findings = detect_empty_fields(d, m, c);
        REQUIRE(findings.size() == 3);
        std::set<std::string> paths;
        for (const auto& f : findings) paths.insert(f.path.str());
        CHECK(paths.size() == 3);
    }
}

TEST_CASE("missing required detector (D01.1.6)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    SUBCASE("element lacking a required name") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("width", "10 cm"))
                        .build();
        auto findings = detect_missing_required(d, m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D01.1.6");
        CHECK(findings[0].dimension == DimensionId::InternalCompleteness);
    }
    SUBCASE("all required present") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "x"))
                        .build();
        CHECK(detect_missing_required(d, m, c).empty());
    }
    SUBCASE("two elements each missing two required properties") {
        ModelDescriptor strict = m;
        strict.types["culturalObject"].required = {"name", "producer"};
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject"))
                        .add(ElementBuilder("o2", "culturalObject"))
                        .build();
        CHECK(detect_missing_required(d, strict, c).size() == 4);
    }
}

TEST_CASE("format violation detector (D11)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    auto one_dating = [&](const char* value) {
        return DatasetBuilder()
            .add(ElementBuilder("o1", "culturalObject")
                     .prop("name", "x")
                     .prop("dating", value))
            .build();
    };

    SUBCASE("compliant forms pass") {
        CHECK(detect_format_violations(one_dating("1920-05-03"), m, c).empty());
        CHECK(detect_format_violations(one_dating("1920-05"), m, c).empty());
        CHECK(detect_format_violations(one_dating("1920"), m, c).empty());
    }
    SUBCASE("legacy form is flagged") {
        auto findings = detect_format_violations(one_dating("03.05.1920"), m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D11");
        CHECK(findings[0].dimension == DimensionId::Compliance);
        CHECK(findings[0].severity == Severity::Warning);
    }
    SUBCASE("qualifier is stripped before the format check") {
        CHECK(detect_format_violations(one_dating("around 1900"), m, c).empty());
        CHECK(detect_format_violations(one_dating("ca. 1900"), m, c).empty());
    }
    SUBCASE("regex format rules participate") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "x")
                                 .prop("inventoryNumber", "AB-12"))
                        .build();
        auto findings = detect_format_violations(d, m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].path.str() == "o1/inventoryNumber");

        Dataset ok = DatasetBuilder()
                         .add(ElementBuilder("o1", "culturalObject")
                                  .prop("name", "x")
                                  .prop("inventoryNumber", "AB-1234"))
                         .build();
        CHECK(detect_format_violations(ok, m, c).empty());
    }
}

TEST_CASE("type mismatch detector (D12)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    auto one_width = [&](const char* value) {
        return DatasetBuilder()
            .add(ElementBuilder("o1", "culturalObject")
                     .prop("name", "x")
                     .prop("width", value))
            .build();
    };

    SUBCASE("comma decimal rejected when disabled") {
        auto findings = detect_type_mismatch(one_width("17,5"), m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D12");
        CHECK(findings[0].dimension == DimensionId::SyntacticAccuracy);
    }
    SUBCASE("dot decimal accepted") {
        CHECK(detect_type_mismatch(one_width("17.5"), m, c).empty());
    }
    SUBCASE("uri kind") {
        Dataset bad = DatasetBuilder()
                          .add(ElementBuilder("o1", "culturalObject")
                                   .prop("name", "x")
                                   .prop("homepage", "not a uri"))
                          .build();
        auto findings = detect_type_mismatch(bad, m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].path.str() == "o1/homepage");
    }
}

TEST_CASE("vocabulary detector (D10.1)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    auto one_material = [&](const char* value) {
        return DatasetBuilder()
            .add(ElementBuilder("o1", "culturalObject")
                     .prop("name", "x")
                     .prop("material", value))
            .build();
    };

    SUBCASE("misspelled term is flagged") {
        auto findings = detect_vocabulary_violations(one_material("oill"), m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D10.1");
        CHECK(findings[0].dimension == DimensionId::SyntacticAccuracy);
        CHECK(findings[0].evidence == "oill");
    }
    SUBCASE("member term passes") {
        CHECK(detect_vocabulary_violations(one_material("oil"), m, c).empty());
    }
    SUBCASE("unbound property is never flagged") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "definitely not a vocab term"))
                        .build();
        CHECK(detect_vocabulary_violations(d, m, c).empty());
    }
}

TEST_CASE("authority link detector (D10.2)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    SUBCASE("birthplace without interlink") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("p1", "person")
                                 .prop("name", "x")
                                 .prop("birthplace", "London"))
                        .build();
        auto findings = detect_missing_authority_link(d, m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D10.2");
        CHECK(findings[0].dimension == DimensionId::Compliance);
    }
    SUBCASE("birthplace with matching interlink") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("p1", "person")
                                 .prop("name", "x")
                                 .prop("birthplace", "London")
                                 .interlink("https://sws.geonames.org/2643743/",
                                            "birthplace"))
                        .build();
        CHECK(detect_missing_authority_link(d, m, c).empty());
    }
    SUBCASE("element without the property") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("p1", "person").prop("name", "x"))
                        .build();
        CHECK(detect_missing_authority_link(d, m, c).empty());
    }
}

TEST_CASE("date contradiction detector (D02.5.1)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    auto person = [&](const char* birth, const char* death) {
        return DatasetBuilder()
            .add(ElementBuilder("p1", "person")
                     .prop("name", "x")
                     .prop("birthDate", birth)
                     .prop("deathDate", death))
            .build();
    };

    SUBCASE("death before birth") {
        auto findings = detect_date_contradictions(person("1900", "1890"), m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D02.5.1");
        CHECK(findings[0].dimension == DimensionId::LogicalConsistency);
        CHECK(findings[0].severity == Severity::Error);
    }
    SUBCASE("equal dates are allowed") {
        CHECK(detect_date_contradictions(person("1900", "1900"), m, c).empty());
    }
    SUBCASE("only birth present") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("p1", "person")
                                 .prop("name", "x")
                                 .prop("birthDate", "1900"))
                        .build();
        CHECK(detect_date_contradictions(d, m, c).empty());
    }
    SUBCASE("coarsest common precision") {
        CHECK(detect_date_contradictions(person("1900-06", "1900"), m, c).empty());
        CHECK(detect_date_contradictions(person("1900-06", "1900-05"), m, c)
                  .size() == 1);
        CHECK(detect_date_contradictions(person("ca. 1900", "1890?"), m, c)
                  .size() == 1);
    }
}

TEST_CASE("reference detectors (D05.2 dangling, D05.3 ambiguous)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    SUBCASE("dangling link") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "x")
                                 .internal_link("oX", "locatedIn"))
                        .build();
        auto findings = detect_dangling_references(d, m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D05.2");
        CHECK(findings[0].dimension == DimensionId::ExternalCompleteness);
        CHECK(findings[0].path.str() == "o1/links[0]");
        CHECK(detect_ambiguous_references(d, m, c).empty());
    }
    SUBCASE("unique target") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "x")
                                 .internal_link("o2", "locatedIn"))
                        .add(ElementBuilder("o2", "place").prop("name", "y"))
                        .build();
        CHECK(detect_dangling_references(d, m, c).empty());
        CHECK(detect_ambiguous_references(d, m, c).empty());
    }
    SUBCASE("duplicated target id") {
        DatasetBuilder b;
        b.add(ElementBuilder("o1", "culturalObject")
                  .prop("name", "x")
                  .internal_link("pl", "locatedIn"));
        b.add(ElementBuilder("pl", "place").prop("name", "a"));
        b.add(ElementBuilder("pl", "place").prop("name", "b"));
        Dataset d = b.build();  // invariant checking deliberately skipped
        auto findings = detect_ambiguous_references(d, m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D05.3");
        CHECK(findings[0].dimension == DimensionId::LogicalConsistency);
        CHECK(detect_dangling_references(d, m, c).empty());
    }
}

TEST_CASE("duplicate detector (D03.1)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;
    c.duplicate_threshold = 0.8;

    auto object = [&](const char* id, const char* name, const char* producer) {
        return ElementBuilder(id, "culturalObject")
            .prop("name", name)
            .prop("producer", producer);
    };

    SUBCASE("two identical elements form one pair") {
        Dataset d = DatasetBuilder()
                        .add(object("o1", "Mona Lisa", "da Vinci"))
                        .add(object("o2", "Mona Lisa", "da Vinci"))
                        .build();
        auto findings = detect_duplicates(d, m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D03.1");
        CHECK(findings[0].dimension == DimensionId::Compactness);
        CHECK(findings[0].path.str() == "o1");
        CHECK(findings[0].evidence == "o2");
    }
    SUBCASE("disjoint elements") {
        Dataset d = DatasetBuilder()
                        .add(object("o1", "Mona Lisa", "da Vinci"))
                        .add(object("o2", "The Night Watch", "Rembrandt"))
                        .build();
        CHECK(detect_duplicates(d, m, c).empty());
    }
    SUBCASE("k identical elements yield k(k-1)/2 pairs") {
        for (std::size_t k : {3u, 4u, 5u}) {
            DatasetBuilder b;
            for (std::size_t i = 0; i < k; ++i)
                b.add(object(("o" + std::to_string(i)).c_str(), "Mona Lisa",
                             "da Vinci"));
            CHECK(detect_duplicates(b.build(), m, c).size() == k * (k - 1) / 2);
        }
    }
    SUBCASE("different types never pair") {
        Dataset d = DatasetBuilder()
                        .add(object("o1", "Mona Lisa", "da Vinci"))
                        .add(ElementBuilder("p1", "person")
                                 .prop("name", "Mona Lisa")
                                 .prop("producer", "da Vinci"))
                        .build();
        CHECK(detect_duplicates(d, m, c).empty());
    }
    SUBCASE("similarity is token-based and symmetric") {
        DataElement a = object("o1", "Mona Lisa", "da Vinci").build();
        DataElement b = object("o2", "Lisa Mona", "Vinci da").build();
        CHECK(element_similarity(a, b) == doctest::Approx(1.0));
        DataElement c2 = object("o3", "Mona Lisa", "Rembrandt").build();
        CHECK(element_similarity(a, c2) == element_similarity(c2, a));
        CHECK(element_similarity(a, c2) < 1.0);
    }
}

TEST_CASE("noncompact value detector (D03.2)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    auto one_width = [&](const char* value) {
        return DatasetBuilder()
            .add(ElementBuilder("o1", "culturalObject")
                     .prop("name", "x")
                     .prop("width", value))
            .build();
    };

    SUBCASE("leading zeros are flagged") {
        auto findings = detect_noncompact_values(one_width("007"), m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D03.2");
        CHECK(findings[0].dimension == DimensionId::Compactness);
    }
    SUBCASE("a lone zero and zero-point-x pass") {
        CHECK(detect_noncompact_values(one_width("0"), m, c).empty());
        CHECK(detect_noncompact_values(one_width("0.5"), m, c).empty());
        CHECK(detect_noncompact_values(one_width("70"), m, c).empty());
    }
}

TEST_CASE("unit detectors (D04.1 incoherence, D04.2 missing)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    SUBCASE("mixed units across elements") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "a")
                                 .prop("width", "10 cm"))
                        .add(ElementBuilder("o2", "culturalObject")
                                 .prop("name", "b")
                                 .prop("width", "100 mm"))
                        .build();
        auto findings = detect_unit_incoherence(d, m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D04.1");
        CHECK(findings[0].dimension == DimensionId::Coherence);
        CHECK(findings[0].path.str() == "o2/width");
        CHECK(detect_missing_units(d, m, c).empty());
    }
    SUBCASE("uniform units pass") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "a")
                                 .prop("width", "10 cm"))
                        .add(ElementBuilder("o2", "culturalObject")
                                 .prop("name", "b")
                                 .prop("width", "12 cm"))
                        .build();
        CHECK(detect_unit_incoherence(d, m, c).empty());
    }
    SUBCASE("measurement without unit") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "a")
                                 .prop("width", "17.5"))
                        .build();
        auto findings = detect_missing_units(d, m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D04.2");
        CHECK(findings[0].dimension == DimensionId::InternalCompleteness);
    }
}

TEST_CASE("uncertainty detectors (D06.5 in-band, D06.8 heterogeneous)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    SUBCASE("in-band marker in a field with a qualifier slot") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "x")
                                 .prop("dating", "ca. 1900"))
                        .build();
        auto findings = detect_uncertainty_issues(d, m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D06.5");
        CHECK(findings[0].dimension == DimensionId::Compliance);
    }
    SUBCASE("mixed conventions for the same property") {
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "a")
                                 .prop("dating", "ca. 1900"))
                        .add(ElementBuilder("o2", "culturalObject")
                                 .prop("name", "b")
                                 .prop("dating", "1900?"))
                        .build();
        auto findings = detect_uncertainty_issues(d, m, c);
        auto ids = problem_ids(findings);
        CHECK(std::count(ids.begin(), ids.end(), "D06.8") == 1);
        auto d068 = std::find_if(findings.begin(), findings.end(),
                                 [](const Finding& f) {
                                     return f.problem_id == "D06.8";
                                 });
        REQUIRE(d068 != findings.end());
        CHECK(d068->dimension == DimensionId::Coherence);
    }
    SUBCASE("uniform convention in the qualifier field is clean") {
        DataValue v1 = analyze_value("1900", {});
        v1.qualifiers = {"ca."};
        DataValue v2 = analyze_value("1920", {});
        v2.qualifiers = {"ca."};
        Dataset d = DatasetBuilder()
                        .add(ElementBuilder("o1", "culturalObject")
                                 .prop("name", "a")
                                 .raw_prop("dating", v1))
                        .add(ElementBuilder("o2", "culturalObject")
                                 .prop("name", "b")
                                 .raw_prop("dating", v2))
                        .build();
        CHECK(detect_uncertainty_issues(d, m, c).empty());
    }
}

TEST_CASE("multivalue detector (D02.4.1)") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;

    auto one_creator = [&](const char* value) {
        return DatasetBuilder()
            .add(ElementBuilder("o1", "culturalObject")
                     .prop("name", "x")
                     .prop("creator", value))
            .build();
    };

    SUBCASE("packed repeatable field") {
        auto findings =
            detect_multivalue_field(one_creator("Dürer; Cranach"), m, c);
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D02.4.1");
        CHECK(findings[0].dimension == DimensionId::Compliance);
    }
    SUBCASE("single value passes") {
        CHECK(detect_multivalue_field(one_creator("Dürer"), m, c).empty());
    }
    SUBCASE("empty separator list disables the detector") {
        DetectorConfig none = c;
        none.multivalue_separators.clear();
        CHECK(detect_multivalue_field(one_creator("Dürer; Cranach"), m,
                                      none)
                  .empty());
    }
}

TEST_CASE("run_all merges, sorts and honors the enabled set") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;
    XmlMapping mapping = *m.xml;

    SUBCASE("clean fixture yields nothing") {
        Dataset d = parse_xml(read_fixture("composite_clean.xml"), mapping);
        CHECK(run_all(d, m, c).empty());
    }
    SUBCASE("composite fixture yields exactly the five seeded defects") {
        Dataset d = parse_xml(read_fixture("composite_seeded.xml"), mapping);
        auto findings = run_all(d, m, c);
        CHECK(problem_ids(findings) ==
              std::vector<std::string>{"D01.1.1", "D02.5.1", "D05.2", "D10.1",
                                       "D11"});
        for (const auto& f : findings)
            CHECK(f.dimension ==
                  builtin_catalog().primary_dimension(f.problem_id));

        SUBCASE("sorted by path then problem id") {
            for (std::size_t i = 1; i < findings.size(); ++i) {
                auto ka = std::make_pair(findings[i - 1].path.str(),
                                         findings[i - 1].problem_id);
                auto kb = std::make_pair(findings[i].path.str(),
                                         findings[i].problem_id);
                CHECK(ka <= kb);
            }
        }
        SUBCASE("identical across runs and worker counts") {
            DetectorConfig parallel = c;
            parallel.workers = 4;
            CHECK(run_all(d, m, parallel) == findings);
            CHECK(run_all(d, m, c) == findings);
        }
        SUBCASE("disabling a detector removes exactly its findings") {
            DetectorConfig partial = c;
            for (const auto& id : detector_ids())
                if (id != "format_violations") partial.enabled.insert(id);
            auto reduced = run_all(d, m, partial);
            CHECK(problem_ids(reduced) ==
                  std::vector<std::string>{"D01.1.1", "D02.5.1", "D05.2",
                                           "D10.1"});
        }
    }
    SUBCASE("monotonicity: adding a defect keeps unrelated findings") {
        Dataset d = parse_xml(read_fixture("composite_seeded.xml"), mapping);
        auto before = run_all(d, m, c);
        DataElement extra;
        extra.id = "o9";
        extra.type_name = "culturalObject";
        extra.properties.push_back({"name", analyze_value("x", {})});
        extra.properties.push_back({"producer", analyze_value("", {})});
        d.elements.push_back(extra);
        auto after = run_all(d, m, c);
        for (const auto& f : before)
            CHECK(std::find(after.begin(), after.end(), f) != after.end());
        CHECK(after.size() == before.size() + 1);
    }
}

TEST_CASE("annotations become info findings") {
    ModelDescriptor m = fixture_descriptor();
    Dataset d = parse_xml(read_fixture("composite_seeded.xml"), *m.xml);

    SUBCASE("valid annotation") {
        auto findings =
            ingest_annotations(read_fixture("annotations.csv"), d,
                               builtin_catalog());
        REQUIRE(findings.size() == 1);
        CHECK(findings[0].problem_id == "D08");
        CHECK(findings[0].dimension == DimensionId::Trustworthiness);
        CHECK(findings[0].severity == Severity::Info);
        CHECK(findings[0].path.str() == "o1/name");
    }
    SUBCASE("empty file") {
        CHECK(ingest_annotations("", d, builtin_catalog()).empty());
    }
    SUBCASE("unknown problem id") {
        try {
            ingest_annotations("path,problem_id,author,note\no1,D99,a,n\n", d,
                               builtin_catalog());
            FAIL("expected UnknownProblemId");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnknownProblemId);
        }
    }
    SUBCASE("unresolvable path") {
        try {
            ingest_annotations("path,problem_id,author,note\nzz/q,D08,a,n\n", d,
                               builtin_catalog());
            FAIL("expected UnresolvablePath");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnresolvablePath);
        }
    }
}

TEST_CASE("detector config round trips and validates") {
    DetectorConfig c;
    c.enabled = {"empty_fields", "duplicates"};
    c.duplicate_threshold = 0.75;
    c.conventions.comma_decimal = true;
    c.date_order_pairs = {{"builtDate", "demolishedDate"}};

    DetectorConfig back = parse_detector_config(serialize_detector_config(c));
    CHECK(back.enabled == c.enabled);
    CHECK(back.duplicate_threshold == c.duplicate_threshold);
    CHECK(back.conventions == c.conventions);
    CHECK(back.date_order_pairs == c.date_order_pairs);

    CHECK_THROWS_AS(parse_detector_config(R"({"duplicateThreshold": 1.5})"),
                    Error);
    CHECK_THROWS_AS(parse_detector_config(R"({"dateGrammars": []})"), Error);
    CHECK_THROWS_AS(parse_detector_config(R"({"detectors": ["nope"]})"), Error);
}

TEST_CASE("every mechanical finding keeps its catalog dimension and severity") {
    ModelDescriptor m = fixture_descriptor();
    DetectorConfig c;
    XmlMapping mapping = *m.xml;
    Dataset seeded = parse_xml(read_fixture("composite_seeded.xml"), mapping);

    // Exercise the remaining detectors with targeted defects.
    DatasetBuilder extras("extras");
    extras.add(ElementBuilder("x1", "culturalObject")
                   .prop("name", "A")
                   .prop("width", "007")
                   .prop("creator", "a; b")
                   .prop("dating", "ca. 1900"));
    extras.add(ElementBuilder("x2", "culturalObject")
                   .prop("name", "A")
                   .prop("width", "10 cm")
                   .prop("dating", "1900?"));
    extras.add(ElementBuilder("x3", "culturalObject")
                   .prop("name", "A")
                   .prop("width", "100 mm")
                   .prop("birthplace", "London"));

    for (const Dataset& d : {seeded, extras.build()}) {
        for (const auto& f : run_all(d, m, c)) {
            const ProblemType& p = builtin_catalog().at(f.problem_id);
            CHECK(f.dimension == p.primary_dimension);
            CHECK(p.detectable == Detectability::Mechanical);
            bool warn = f.dimension == DimensionId::Coherence ||
                        f.dimension == DimensionId::Compliance;
            CHECK(f.severity == (warn ? Severity::Warning : Severity::Error));
        }
    }
}
