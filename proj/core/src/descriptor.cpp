#include "hdq/descriptor.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hdq/errors.hpp"

namespace hdq {
namespace {

std::set<std::string> load_vocabulary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open vocabulary file " + path);
    std::set<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) terms.insert(line);
    }
    return terms;
}

ValueConventions conventions_from_json(const nlohmann::json& j) {
    ValueConventions conv;
    if (j.contains("dateGrammars")) {
        conv.date_grammars = j["dateGrammars"].get<std::vector<std::string>>();
        if (conv.date_grammars.empty())
            throw Error(ErrorCode::MalformedInput,
                        "at least one date grammar is required");
        for (const auto& g : conv.date_grammars) {
            const auto& known = known_date_grammars();
            if (std::find(known.begin(), known.end(), g) == known.end())
                throw Error(ErrorCode::MalformedInput,
                            "unknown date grammar '" + g + "'");
        }
    }
    if (j.contains("units"))
        conv.units = j["units"].get<std::vector<std::string>>();
    if (j.contains("uncertaintyMarkers"))
        conv.uncertainty_markers =
            j["uncertaintyMarkers"].get<std::vector<std::string>>();
    if (j.contains("commaDecimal")) conv.comma_decimal = j["commaDecimal"];
    return conv;
}

}  // namespace

const PropertyDecl* ModelDescriptor::find_property(std::string_view name) const {
    auto it = properties.find(std::string(name));
    return it == properties.end() ? nullptr : &it->second;
}

const TypeDecl* ModelDescriptor::find_type(std::string_view name) const {
    auto it = types.find(std::string(name));
    return it == types.end() ? nullptr : &it->second;
}

ModelDescriptor parse_descriptor(std::string_view json_bytes,
                                 const std::string& base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedInput, e.what());
    }

    ModelDescriptor m;
    try {
        if (doc.contains("types")) {
            for (const auto& [name, jt] : doc["types"].items()) {
                TypeDecl t;
                if (jt.contains("required"))
                    t.required = jt["required"].get<std::vector<std::string>>();
                m.types[name] = std::move(t);
            }
        }
        if (doc.contains("properties")) {
            for (const auto& [name, jp] : doc["properties"].items()) {
                PropertyDecl p;
                if (jp.contains("kind"))
                    p.kind = value_kind_from_string(jp["kind"].get<std::string>());
                if (jp.contains("units"))
                    p.allowed_units = jp["units"].get<std::vector<std::string>>();
                if (jp.contains("vocabulary"))
                    p.vocabulary = jp["vocabulary"].get<std::string>();
                if (jp.contains("format"))
                    p.format_rule = jp["format"].get<std::string>();
                if (jp.contains("measurement")) p.measurement = jp["measurement"];
                if (jp.contains("repeatable")) p.repeatable = jp["repeatable"];
                if (jp.contains("qualifierField"))
                    p.qualifier_field = jp["qualifierField"];
                if (jp.contains("authority")) p.authority = jp["authority"];
                m.properties[name] = std::move(p);
            }
        }
        if (doc.contains("links")) {
            for (const auto& [role, target] : doc["links"].items())
                m.link_targets[role] = target.get<std::string>();
        }
        if (doc.contains("vocabularies")) {
            for (const auto& [id, jv] : doc["vocabularies"].items()) {
                if (jv.is_array()) {
                    m.vocabularies[id] =
                        std::set<std::string>(jv.begin(), jv.end());
                } else {
                    m.vocabularies[id] = load_vocabulary_file(
                        base_dir + "/" + jv.get<std::string>());
                }
            }
        }
        if (doc.contains("formatRules")) {
            for (const auto& [id, rule] : doc["formatRules"].items())
                m.format_rules[id] = rule.get<std::string>();
        }
        if (doc.contains("xml")) {
            m.xml = parse_xml_mapping(doc["xml"].dump());
            if (doc["xml"].contains("conventions"))
                m.xml->conventions =
                    conventions_from_json(doc["xml"]["conventions"]);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedInput, e.what());
    }

    // Every referenced vocabulary and format rule must be defined.
    for (const auto& [name, decl] : m.properties) {
        if (decl.vocabulary && !m.vocabularies.count(*decl.vocabulary))
            throw Error(ErrorCode::MalformedInput,
                        "property '" + name + "' references undefined vocabulary '" +
                            *decl.vocabulary + "'");
        if (decl.format_rule && *decl.format_rule != "iso8601-date" &&
            !m.format_rules.count(*decl.format_rule))
            throw Error(ErrorCode::MalformedInput,
                        "property '" + name + "' references undefined format rule '" +
                            *decl.format_rule + "'");
    }
    return m;
}

std::string to_string(StructuralViolation::Rule rule) {
    switch (rule) {
    case StructuralViolation::Rule::MissingRequired: return "MissingRequired";
    case StructuralViolation::Rule::KindMismatch: return "KindMismatch";
    case StructuralViolation::Rule::UnknownType: return "UnknownType";
    }
    return "Unknown";
}

bool lexical_matches_kind(const DataValue& v, ValueKind kind,
                          const ValueConventions& conv) {
    std::string stripped = strip_uncertainty_markers(v.lexical, conv);
    switch (kind) {
    case ValueKind::Text:
        return true;
    case ValueKind::Number:
        return is_number(stripped, conv.comma_decimal);
    case ValueKind::Date:
        return parse_date(stripped, conv.date_grammars).has_value();
    case ValueKind::Uri:
        return is_absolute_uri(stripped);
    }
    return true;
}

std::vector<StructuralViolation> validate_structure(const Dataset& d,
                                                    const ModelDescriptor& m) {
    ValueConventions conv = m.xml ? m.xml->conventions : ValueConventions{};
    std::vector<StructuralViolation> out;
    for (const auto& e : d.elements) {
        const TypeDecl* type = m.find_type(e.type_name);
        if (!type) {
            out.push_back({StructuralViolation::Rule::UnknownType,
                           Path::element(e.id),
                           "type '" + e.type_name + "' is not declared"});
            continue;
        }
        for (const auto& required : type->required) {
            if (!e.find_property(required))
                out.push_back({StructuralViolation::Rule::MissingRequired,
                               Path::element(e.id),
                               "required property '" + required + "' is absent"});
        }
        std::map<std::string, std::size_t> occurrence;
        for (const auto& p : e.properties) {
            std::size_t index = occurrence[p.name]++;
            const PropertyDecl* decl = m.find_property(p.name);
            if (!decl || !decl->kind) continue;
            if (is_blank(p.value.lexical)) continue;  // emptiness is D01.1.1
            if (!lexical_matches_kind(p.value, *decl->kind, conv))
                out.push_back(
                    {StructuralViolation::Rule::KindMismatch,
                     Path::property(e.id, p.name, index),
                     "value '" + p.value.lexical + "' is not a valid " +
                         to_string(*decl->kind)});
        }
    }
    return out;
}

}  // namespace hdq
