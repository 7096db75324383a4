#include "hdq/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <regex>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "hdq/errors.hpp"
#include "util/csv.hpp"

namespace hdq {
namespace {

Severity severity_for(DimensionId dim) {
    // Coherence and compliance breaches are stylistic; everything else a
    // mechanical detector can prove is treated as a hard error.
    if (dim == DimensionId::Coherence || dim == DimensionId::Compliance)
        return Severity::Warning;
    return Severity::Error;
}

Finding make_finding(std::string problem_id, Path path, std::string message,
                     std::string evidence) {
    DimensionId dim = builtin_catalog().primary_dimension(problem_id);
    return Finding{std::move(problem_id), dim,           std::move(path),
                   std::move(message),   std::move(evidence),
                   severity_for(dim)};
}

bool parses_as_iso_date(const std::string& lexical,
                        const ValueConventions& conv) {
    static const std::vector<std::string> iso_only = {"iso8601"};
    std::string stripped = strip_uncertainty_markers(lexical, conv);
    return parse_date(stripped, iso_only).has_value();
}

std::vector<std::string> element_tokens(const DataElement& e) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (const auto& p : e.properties) {
        for (unsigned char c : p.value.lexical) {
            if (std::isalnum(c) || c >= 128)
                current.push_back(static_cast<char>(std::tolower(c)));
            else
                flush();
        }
        flush();
    }
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    return tokens;
}

double jaccard(const std::vector<std::string>& a,
               const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t intersection = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++intersection;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    std::size_t unions = a.size() + b.size() - intersection;
    return unions == 0 ? 1.0
                       : static_cast<double>(intersection) /
                             static_cast<double>(unions);
}

}  // namespace

std::string to_string(Severity s) {
    switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
    }
    return "warning";
}

Severity severity_from_string(const std::string& s) {
    if (s == "info") return Severity::Info;
    if (s == "warning") return Severity::Warning;
    if (s == "error") return Severity::Error;
    throw Error(ErrorCode::MalformedInput, "unknown severity '" + s + "'");
}

void DetectorConfig::check_invariants() const {
    if (duplicate_threshold < 0.0 || duplicate_threshold > 1.0)
        throw Error(ErrorCode::MalformedInput,
                    "duplicate threshold must lie in [0,1]");
    if (conventions.date_grammars.empty())
        throw Error(ErrorCode::MalformedInput,
                    "at least one date grammar is required");
}

const std::vector<std::string>& detector_ids() {
    static const std::vector<std::string> ids = {
        "empty_fields",        "missing_required", "format_violations",
        "type_mismatch",       "vocabulary_violations",
        "missing_authority_link", "date_contradictions",
        "dangling_references", "ambiguous_references", "duplicates",
        "noncompact_values",   "unit_incoherence", "missing_units",
        "uncertainty_issues",  "multivalue_field"};
    return ids;
}

std::vector<Finding> detect_empty_fields(const Dataset& d,
                                         const ModelDescriptor&,
                                         const DetectorConfig&) {
    std::vector<Finding> out;
    for (const auto& e : d.elements) {
        std::map<std::string, std::size_t> occurrence;
        for (const auto& p : e.properties) {
            std::size_t index = occurrence[p.name]++;
            if (is_blank(p.value.lexical))
                out.push_back(make_finding(
                    "D01.1.1", Path::property(e.id, p.name, index),
                    "property '" + p.name + "' is empty", p.value.lexical));
        }
    }
    return out;
}

std::vector<Finding> detect_missing_required(const Dataset& d,
                                             const ModelDescriptor& m,
                                             const DetectorConfig&) {
    std::vector<Finding> out;
    for (const auto& e : d.elements) {
        const TypeDecl* type = m.find_type(e.type_name);
        if (!type) continue;
        for (const auto& required : type->required) {
            if (!e.find_property(required))
                out.push_back(make_finding(
                    "D01.1.6", Path::element(e.id),
                    "required property '" + required + "' is missing", ""));
        }
    }
    return out;
}

std::vector<Finding> detect_format_violations(const Dataset& d,
                                              const ModelDescriptor& m,
                                              const DetectorConfig& c) {
    std::vector<Finding> out;
    std::map<std::string, std::regex> compiled;
    for (const auto& e : d.elements) {
        std::map<std::string, std::size_t> occurrence;
        for (const auto& p : e.properties) {
            std::size_t index = occurrence[p.name]++;
            if (is_blank(p.value.lexical)) continue;
            const PropertyDecl* decl = m.find_property(p.name);

            bool date_expected = p.value.kind == ValueKind::Date ||
                                 (decl && decl->kind == ValueKind::Date) ||
                                 (decl && decl->format_rule == "iso8601-date");
            if (date_expected && !parses_as_iso_date(p.value.lexical, c.conventions)) {
                out.push_back(make_finding(
                    "D11", Path::property(e.id, p.name, index),
                    "date '" + p.value.lexical + "' does not follow the "
                    "iso8601 grammar (YYYY, YYYY-MM or YYYY-MM-DD)",
                    p.value.lexical));
                continue;
            }
            if (decl && decl->format_rule && *decl->format_rule != "iso8601-date") {
                auto rule = m.format_rules.find(*decl->format_rule);
                if (rule == m.format_rules.end()) continue;
                auto [it, fresh] = compiled.try_emplace(rule->first);
                if (fresh) it->second = std::regex(rule->second);
                std::string stripped =
                    strip_uncertainty_markers(p.value.lexical, c.conventions);
                if (!std::regex_match(stripped, it->second))
                    out.push_back(make_finding(
                        "D11", Path::property(e.id, p.name, index),
                        "value '" + p.value.lexical + "' violates format rule '" +
                            *decl->format_rule + "'",
                        p.value.lexical));
            }
        }
    }
    return out;
}

std::vector<Finding> detect_type_mismatch(const Dataset& d,
                                          const ModelDescriptor& m,
                                          const DetectorConfig& c) {
    std::vector<Finding> out;
    for (const auto& e : d.elements) {
        std::map<std::string, std::size_t> occurrence;
        for (const auto& p : e.properties) {
            std::size_t index = occurrence[p.name]++;
            const PropertyDecl* decl = m.find_property(p.name);
            if (!decl || !decl->kind) continue;
            if (is_blank(p.value.lexical)) continue;
            if (!lexical_matches_kind(p.value, *decl->kind, c.conventions))
                out.push_back(make_finding(
                    "D12", Path::property(e.id, p.name, index),
                    "value '" + p.value.lexical + "' cannot be read as " +
                        to_string(*decl->kind),
                    p.value.lexical));
        }
    }
    return out;
}

std::vector<Finding> detect_vocabulary_violations(const Dataset& d,
                                                  const ModelDescriptor& m,
                                                  const DetectorConfig&) {
    std::vector<Finding> out;
    for (const auto& e : d.elements) {
        std::map<std::string, std::size_t> occurrence;
        for (const auto& p : e.properties) {
            std::size_t index = occurrence[p.name]++;
            const PropertyDecl* decl = m.find_property(p.name);
            if (!decl || !decl->vocabulary) continue;
            auto vocab = m.vocabularies.find(*decl->vocabulary);
            if (vocab == m.vocabularies.end()) continue;
            if (is_blank(p.value.lexical)) continue;
            if (!vocab->second.count(p.value.lexical))
                out.push_back(make_finding(
                    "D10.1", Path::property(e.id, p.name, index),
                    "value '" + p.value.lexical + "' is not a term of vocabulary '" +
                        *decl->vocabulary + "'",
                    p.value.lexical));
        }
    }
    return out;
}

std::vector<Finding> detect_missing_authority_link(const Dataset& d,
                                                   const ModelDescriptor& m,
                                                   const DetectorConfig&) {
    std::vector<Finding> out;
    for (const auto& e : d.elements) {
        std::map<std::string, std::size_t> occurrence;
        for (const auto& p : e.properties) {
            std::size_t index = occurrence[p.name]++;
            const PropertyDecl* decl = m.find_property(p.name);
            if (!decl || !decl->authority) continue;
            if (is_blank(p.value.lexical)) continue;
            bool linked = std::any_of(
                e.links.begin(), e.links.end(), [&](const Link& l) {
                    return l.target_kind == LinkKind::Interlink &&
                           l.role == p.name;
                });
            if (!linked)
                out.push_back(make_finding(
                    "D10.2", Path::property(e.id, p.name, index),
                    "'" + p.name + "' carries no authority interlink",
                    p.value.lexical));
        }
    }
    return out;
}

std::vector<Finding> detect_date_contradictions(const Dataset& d,
                                                const ModelDescriptor&,
                                                const DetectorConfig& c) {
    std::vector<Finding> out;
    for (const auto& e : d.elements) {
        for (const auto& [earlier_name, later_name] : c.date_order_pairs) {
            const Property* earlier = e.find_property(earlier_name);
            const Property* later = e.find_property(later_name);
            if (!earlier || !later) continue;
            auto earlier_date = parse_date(
                strip_uncertainty_markers(earlier->value.lexical, c.conventions),
                c.conventions.date_grammars);
            auto later_date = parse_date(
                strip_uncertainty_markers(later->value.lexical, c.conventions),
                c.conventions.date_grammars);
            if (!earlier_date || !later_date) continue;
            // Equal dates at the shared precision are allowed; only a
            // strictly earlier later-date is a contradiction.
            if (compare_dates_common_precision(*later_date, *earlier_date) < 0)
                out.push_back(make_finding(
                    "D02.5.1", Path::element(e.id),
                    "'" + later_name + "' " + later->value.lexical +
                        " precedes '" + earlier_name + "' " +
                        earlier->value.lexical,
                    later->value.lexical));
        }
    }
    return out;
}

namespace {

std::vector<Finding> reference_findings(const Dataset& d, bool ambiguous) {
    std::unordered_map<std::string, std::size_t> id_count;
    for (const auto& e : d.elements) ++id_count[e.id];
    std::vector<Finding> out;
    for (const auto& e : d.elements) {
        for (std::size_t i = 0; i < e.links.size(); ++i) {
            const Link& l = e.links[i];
            if (l.target_kind != LinkKind::Internal) continue;
            auto it = id_count.find(l.target);
            std::size_t matches = it == id_count.end() ? 0 : it->second;
            if (!ambiguous && matches == 0)
                out.push_back(make_finding(
                    "D05.2", Path::link(e.id, i),
                    "link '" + l.role + "' targets missing element '" +
                        l.target + "'",
                    l.target));
            if (ambiguous && matches > 1)
                out.push_back(make_finding(
                    "D05.3", Path::link(e.id, i),
                    "link '" + l.role + "' matches " +
                        std::to_string(matches) + " elements with id '" +
                        l.target + "'",
                    l.target));
        }
    }
    return out;
}

}  // namespace

std::vector<Finding> detect_dangling_references(const Dataset& d,
                                                const ModelDescriptor&,
                                                const DetectorConfig&) {
    return reference_findings(d, false);
}

std::vector<Finding> detect_ambiguous_references(const Dataset& d,
                                                 const ModelDescriptor&,
                                                 const DetectorConfig&) {
    return reference_findings(d, true);
}

double element_similarity(const DataElement& a, const DataElement& b) {
    return jaccard(element_tokens(a), element_tokens(b));
}

std::vector<Finding> detect_duplicates(const Dataset& d,
                                       const ModelDescriptor&,
                                       const DetectorConfig& c) {
    struct Entry {
        std::size_t index;
        std::vector<std::string> tokens;
    };
    std::map<std::string, std::vector<Entry>> by_type;
    for (std::size_t i = 0; i < d.elements.size(); ++i)
        by_type[d.elements[i].type_name].push_back(
            {i, element_tokens(d.elements[i])});

    double threshold = c.duplicate_threshold;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    for (auto& [type, entries] : by_type) {
        if (entries.size() < 2) continue;
        std::vector<std::pair<std::size_t, std::size_t>> candidates;
        if (threshold <= 0.0) {
            for (std::size_t i = 0; i < entries.size(); ++i)
                for (std::size_t j = i + 1; j < entries.size(); ++j)
                    candidates.emplace_back(i, j);
        } else {
            // Prefix filter: two sets with Jaccard >= t must share a token
            // within the first |A| - ceil(t*|A|) + 1 tokens when both sets
            // are ordered the same way. Rare-first ordering keeps posting
            // lists short.
            std::unordered_map<std::string, std::size_t> df;
            for (const auto& entry : entries)
                for (const auto& token : entry.tokens) ++df[token];
            auto rarity_order = [&](const std::string& x, const std::string& y) {
                auto dx = df[x], dy = df[y];
                if (dx != dy) return dx < dy;
                return x < y;
            };
            std::unordered_map<std::string, std::vector<std::size_t>> index;
            std::vector<std::pair<std::size_t, std::size_t>> seen;
            for (std::size_t i = 0; i < entries.size(); ++i) {
                auto ordered = entries[i].tokens;
                std::sort(ordered.begin(), ordered.end(), rarity_order);
                std::size_t size = ordered.size();
                std::size_t keep = size == 0
                                       ? 0
                                       : size -
                                             static_cast<std::size_t>(
                                                 std::ceil(threshold *
                                                           static_cast<double>(
                                                               size))) +
                                             1;
                keep = std::min(keep, size);
                for (std::size_t k = 0; k < keep; ++k)
                    for (std::size_t other : index[ordered[k]])
                        candidates.emplace_back(other, i);
                for (std::size_t k = 0; k < keep; ++k)
                    index[ordered[k]].push_back(i);
            }
            // Elements without any token are mutually identical.
            std::vector<std::size_t> empties;
            for (std::size_t i = 0; i < entries.size(); ++i)
                if (entries[i].tokens.empty()) empties.push_back(i);
            for (std::size_t i = 0; i < empties.size(); ++i)
                for (std::size_t j = i + 1; j < empties.size(); ++j)
                    candidates.emplace_back(empties[i], empties[j]);
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()),
                         candidates.end());
        for (auto [i, j] : candidates) {
            if (jaccard(entries[i].tokens, entries[j].tokens) >= threshold)
                pairs.emplace_back(entries[i].index, entries[j].index);
        }
    }

    std::vector<Finding> out;
    for (auto [i, j] : pairs) {
        std::string first = d.elements[i].id;
        std::string second = d.elements[j].id;
        if (second < first) std::swap(first, second);
        out.push_back(make_finding(
            "D03.1", Path::element(first),
            "elements '" + first + "' and '" + second +
                "' appear to describe the same entity",
            second));
    }
    return out;
}

std::vector<Finding> detect_noncompact_values(const Dataset& d,
                                              const ModelDescriptor&,
                                              const DetectorConfig& c) {
    std::vector<Finding> out;
    for (const auto& e : d.elements) {
        std::map<std::string, std::size_t> occurrence;
        for (const auto& p : e.properties) {
            std::size_t index = occurrence[p.name]++;
            std::string stripped =
                strip_uncertainty_markers(p.value.lexical, c.conventions);
            if (!is_number(stripped, c.conventions.comma_decimal)) continue;
            std::string_view digits = stripped;
            if (!digits.empty() && (digits[0] == '+' || digits[0] == '-'))
                digits.remove_prefix(1);
            if (digits.size() >= 2 && digits[0] == '0' &&
                std::isdigit(static_cast<unsigned char>(digits[1])))
                out.push_back(make_finding(
                    "D03.2", Path::property(e.id, p.name, index),
                    "number '" + stripped + "' carries leading zeros",
                    p.value.lexical));
        }
    }
    return out;
}

std::vector<Finding> detect_unit_incoherence(const Dataset& d,
                                             const ModelDescriptor&,
                                             const DetectorConfig&) {
    struct UnitUse {
        std::set<std::string> units;
        Path first_divergent;
        bool divergent = false;
        std::string first_unit;
    };
    std::map<std::string, UnitUse> by_name;
    for (const auto& e : d.elements) {
        std::map<std::string, std::size_t> occurrence;
        for (const auto& p : e.properties) {
            std::size_t index = occurrence[p.name]++;
            if (!p.value.unit) continue;
            auto& use = by_name[p.name];
            if (use.units.empty()) use.first_unit = *p.value.unit;
            use.units.insert(*p.value.unit);
            if (!use.divergent && *p.value.unit != use.first_unit) {
                use.divergent = true;
                use.first_divergent = Path::property(e.id, p.name, index);
            }
        }
    }
    std::vector<Finding> out;
    for (const auto& [name, use] : by_name) {
        if (use.units.size() < 2) continue;
        std::string units;
        for (const auto& u : use.units) {
            if (!units.empty()) units += ", ";
            units += u;
        }
        out.push_back(make_finding(
            "D04.1", use.first_divergent,
            "property '" + name + "' mixes units across the dataset: " + units,
            units));
    }
    return out;
}

std::vector<Finding> detect_missing_units(const Dataset& d,
                                          const ModelDescriptor& m,
                                          const DetectorConfig&) {
    std::vector<Finding> out;
    for (const auto& e : d.elements) {
        std::map<std::string, std::size_t> occurrence;
        for (const auto& p : e.properties) {
            std::size_t index = occurrence[p.name]++;
            const PropertyDecl* decl = m.find_property(p.name);
            if (!decl || !m.is_measurement(*decl)) continue;
            if (is_blank(p.value.lexical)) continue;
            if (!p.value.unit)
                out.push_back(make_finding(
                    "D04.2", Path::property(e.id, p.name, index),
                    "measurement '" + p.name + "' lacks a unit",
                    p.value.lexical));
        }
    }
    return out;
}

std::vector<Finding> detect_uncertainty_issues(const Dataset& d,
                                               const ModelDescriptor& m,
                                               const DetectorConfig& c) {
    std::vector<Finding> out;
    struct MarkerUse {
        std::set<std::string> markers;
        Path first_divergent;
        bool divergent = false;
        std::string first_marker;
    };
    std::map<std::string, MarkerUse> by_name;

    for (const auto& e : d.elements) {
        std::map<std::string, std::size_t> occurrence;
        for (const auto& p : e.properties) {
            std::size_t index = occurrence[p.name]++;
            std::vector<std::string> in_band;
            strip_uncertainty_markers(p.value.lexical, c.conventions, &in_band);

            const PropertyDecl* decl = m.find_property(p.name);
            if (decl && decl->qualifier_field && !in_band.empty())
                out.push_back(make_finding(
                    "D06.5", Path::property(e.id, p.name, index),
                    "uncertainty marker '" + in_band.front() +
                        "' is written into the value instead of the "
                        "qualifier field",
                    p.value.lexical));

            std::set<std::string> observed(in_band.begin(), in_band.end());
            observed.insert(p.value.qualifiers.begin(),
                            p.value.qualifiers.end());
            if (observed.empty()) continue;
            auto& use = by_name[p.name];
            if (use.markers.empty()) use.first_marker = *observed.begin();
            for (const auto& marker : observed) {
                use.markers.insert(marker);
                if (!use.divergent && marker != use.first_marker) {
                    use.divergent = true;
                    use.first_divergent = Path::property(e.id, p.name, index);
                }
            }
        }
    }
    for (const auto& [name, use] : by_name) {
        if (use.markers.size() < 2) continue;
        std::string markers;
        for (const auto& q : use.markers) {
            if (!markers.empty()) markers += ", ";
            markers += q;
        }
        out.push_back(make_finding(
            "D06.8", use.first_divergent,
            "property '" + name +
                "' mixes uncertainty conventions across the dataset: " +
                markers,
            markers));
    }
    return out;
}

std::vector<Finding> detect_multivalue_field(const Dataset& d,
                                             const ModelDescriptor& m,
                                             const DetectorConfig& c) {
    std::vector<Finding> out;
    if (c.multivalue_separators.empty()) return out;
    for (const auto& e : d.elements) {
        std::map<std::string, std::size_t> occurrence;
        for (const auto& p : e.properties) {
            std::size_t index = occurrence[p.name]++;
            const PropertyDecl* decl = m.find_property(p.name);
            if (!decl || !decl->repeatable) continue;
            for (const auto& sep : c.multivalue_separators) {
                if (!sep.empty() &&
                    p.value.lexical.find(sep) != std::string::npos) {
                    out.push_back(make_finding(
                        "D02.4.1", Path::property(e.id, p.name, index),
                        "repeatable field '" + p.name +
                            "' packs several values separated by '" + sep + "'",
                        p.value.lexical));
                    break;
                }
            }
        }
    }
    return out;
}

void sort_findings(std::vector<Finding>& findings) {
    std::sort(findings.begin(), findings.end(),
              [](const Finding& a, const Finding& b) {
                  auto ka = std::tie(a.path, a.problem_id, a.message, a.evidence);
                  auto kb = std::tie(b.path, b.problem_id, b.message, b.evidence);
                  return ka < kb;
              });
}

std::vector<Finding> run_all(const Dataset& d, const ModelDescriptor& m,
                             const DetectorConfig& c, const Catalog& catalog) {
    using DetectorFn = std::vector<Finding> (*)(const Dataset&,
                                                const ModelDescriptor&,
                                                const DetectorConfig&);
    static const std::pair<const char*, DetectorFn> detectors[] = {
        {"empty_fields", detect_empty_fields},
        {"missing_required", detect_missing_required},
        {"format_violations", detect_format_violations},
        {"type_mismatch", detect_type_mismatch},
        {"vocabulary_violations", detect_vocabulary_violations},
        {"missing_authority_link", detect_missing_authority_link},
        {"date_contradictions", detect_date_contradictions},
        {"dangling_references", detect_dangling_references},
        {"ambiguous_references", detect_ambiguous_references},
        {"duplicates", detect_duplicates},
        {"noncompact_values", detect_noncompact_values},
        {"unit_incoherence", detect_unit_incoherence},
        {"missing_units", detect_missing_units},
        {"uncertainty_issues", detect_uncertainty_issues},
        {"multivalue_field", detect_multivalue_field},
    };

    std::vector<DetectorFn> active;
    for (const auto& [id, fn] : detectors)
        if (c.is_enabled(id)) active.push_back(fn);

    std::vector<std::vector<Finding>> partials(active.size());
    if (c.workers > 1) {
        std::vector<std::future<std::vector<Finding>>> futures;
        futures.reserve(active.size());
        for (auto fn : active)
            futures.push_back(std::async(std::launch::async, fn, std::cref(d),
                                         std::cref(m), std::cref(c)));
        for (std::size_t i = 0; i < futures.size(); ++i)
            partials[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < active.size(); ++i)
            partials[i] = active[i](d, m, c);
    }

    std::vector<Finding> out;
    for (auto& part : partials)
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));

    // A caller-supplied catalog overrides the built-in dimension mapping.
    if (&catalog != &builtin_catalog()) {
        for (auto& f : out) {
            f.dimension = catalog.primary_dimension(f.problem_id);
            f.severity = severity_for(f.dimension);
        }
    }
    sort_findings(out);
    return out;
}

std::vector<Finding> ingest_annotations(std::string_view bytes,
                                        const Dataset& d,
                                        const Catalog& catalog) {
    auto rows = csv::parse(bytes);
    if (rows.empty()) return {};
    const std::vector<std::string> expected = {"path", "problem_id", "author",
                                               "note"};
    if (rows[0] != expected)
        throw Error(ErrorCode::MalformedInput,
                    "annotation CSV header must be path,problem_id,author,note");

    std::vector<Finding> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != 4)
            throw Error(ErrorCode::MalformedInput,
                        "annotation row " + std::to_string(i + 1) +
                            " has the wrong number of fields");
        const ProblemType& problem = catalog.at(row[1]);
        Path path = Path::parse(row[0]);
        if (!path.resolves_in(d))
            throw Error(ErrorCode::UnresolvablePath,
                        "annotation path '" + row[0] +
                            "' does not resolve in dataset '" + d.id + "'");
        Finding f;
        f.problem_id = problem.id;
        f.dimension = problem.primary_dimension;
        f.path = std::move(path);
        f.message = row[3];
        if (!row[2].empty()) f.message += " (" + row[2] + ")";
        f.severity = Severity::Info;
        out.push_back(std::move(f));
    }
    sort_findings(out);
    return out;
}

DetectorConfig parse_detector_config(std::string_view json_bytes) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedInput, e.what());
    }
    DetectorConfig c;
    try {
        if (doc.contains("detectors")) {
            for (const auto& id : doc["detectors"]) {
                std::string name = id.get<std::string>();
                const auto& known = detector_ids();
                if (std::find(known.begin(), known.end(), name) == known.end())
                    throw Error(ErrorCode::MalformedInput,
                                "unknown detector id '" + name + "'");
                c.enabled.insert(name);
            }
        }
        if (doc.contains("dateGrammars"))
            c.conventions.date_grammars =
                doc["dateGrammars"].get<std::vector<std::string>>();
        if (doc.contains("units"))
            c.conventions.units = doc["units"].get<std::vector<std::string>>();
        if (doc.contains("uncertaintyMarkers"))
            c.conventions.uncertainty_markers =
                doc["uncertaintyMarkers"].get<std::vector<std::string>>();
        if (doc.contains("commaDecimal"))
            c.conventions.comma_decimal = doc["commaDecimal"];
        if (doc.contains("duplicateThreshold"))
            c.duplicate_threshold = doc["duplicateThreshold"];
        if (doc.contains("multivalueSeparators"))
            c.multivalue_separators =
                doc["multivalueSeparators"].get<std::vector<std::string>>();
        if (doc.contains("dateOrderPairs")) {
            c.date_order_pairs.clear();
            for (const auto& pair : doc["dateOrderPairs"])
                c.date_order_pairs.emplace_back(pair.at(0).get<std::string>(),
                                                pair.at(1).get<std::string>());
        }
        if (doc.contains("disambiguationSuffix"))
            c.disambiguation_suffix = doc["disambiguationSuffix"];
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedInput, e.what());
    }
    c.check_invariants();
    return c;
}

std::string serialize_detector_config(const DetectorConfig& c) {
    nlohmann::ordered_json doc;
    doc["detectors"] = c.enabled.empty()
                           ? detector_ids()
                           : std::vector<std::string>(c.enabled.begin(),
                                                      c.enabled.end());
    doc["dateGrammars"] = c.conventions.date_grammars;
    doc["units"] = c.conventions.units;
    doc["uncertaintyMarkers"] = c.conventions.uncertainty_markers;
    doc["commaDecimal"] = c.conventions.comma_decimal;
    doc["duplicateThreshold"] = c.duplicate_threshold;
    doc["multivalueSeparators"] = c.multivalue_separators;
    doc["dateOrderPairs"] = nlohmann::ordered_json::array();
    for (const auto& [earlier, later] : c.date_order_pairs)
        doc["dateOrderPairs"].push_back({earlier, later});
    doc["disambiguationSuffix"] = c.disambiguation_suffix;
    return doc.dump(2) + "\n";
}

}  // namespace hdq
