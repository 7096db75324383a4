#include "hdq/canonical.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "hdq/errors.hpp"

namespace hdq {
namespace {

using ordered_json = nlohmann::ordered_json;

std::size_t line_of_offset(std::string_view bytes, std::size_t offset) {
    offset = std::min(offset, bytes.size());
    return static_cast<std::size_t>(
               std::count(bytes.begin(), bytes.begin() + offset, '\n')) +
           1;
}

const char* link_kind_label(LinkKind k) {
    return k == LinkKind::Internal ? "internal" : "interlink";
}

}  // namespace

std::string serialize_canonical(const Dataset& d) {
    ordered_json doc;
    doc["id"] = d.id;
    doc["elements"] = ordered_json::array();
    for (const auto& e : d.elements) {
        ordered_json je;
        je["id"] = e.id;
        je["type"] = e.type_name;
        je["properties"] = ordered_json::array();
        for (const auto& p : e.properties) {
            ordered_json jp;
            jp["name"] = p.name;
            jp["lexical"] = p.value.lexical;
            jp["kind"] = to_string(p.value.kind);
            if (p.value.unit) jp["unit"] = *p.value.unit;
            if (!p.value.qualifiers.empty()) jp["qualifiers"] = p.value.qualifiers;
            je["properties"].push_back(std::move(jp));
        }
        je["links"] = ordered_json::array();
        for (const auto& l : e.links) {
            ordered_json jl;
            jl["kind"] = link_kind_label(l.target_kind);
            jl["target"] = l.target;
            jl["role"] = l.role;
            je["links"].push_back(std::move(jl));
        }
        doc["elements"].push_back(std::move(je));
    }
    return doc.dump(2) + "\n";
}

Dataset parse_canonical(std::string_view bytes, const ValueConventions& conv) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedInput,
                    std::string(e.what()) + " (line " +
                        std::to_string(line_of_offset(bytes, e.byte)) + ")");
    }
    try {
        Dataset d;
        d.id = doc.at("id").get<std::string>();
        for (const auto& je : doc.at("elements")) {
            DataElement e;
            e.id = je.at("id").get<std::string>();
            e.type_name = je.at("type").get<std::string>();
            if (je.contains("properties")) {
                for (const auto& jp : je["properties"]) {
                    Property p;
                    p.name = jp.at("name").get<std::string>();
                    p.value.lexical = jp.at("lexical").get<std::string>();
                    p.value.kind =
                        value_kind_from_string(jp.at("kind").get<std::string>());
                    if (jp.contains("unit"))
                        p.value.unit = jp["unit"].get<std::string>();
                    if (jp.contains("qualifiers"))
                        p.value.qualifiers =
                            jp["qualifiers"].get<std::vector<std::string>>();
                    refresh_parse_mark(p.value, conv);
                    e.properties.push_back(std::move(p));
                }
            }
            if (je.contains("links")) {
                for (const auto& jl : je["links"]) {
                    Link l;
                    std::string kind = jl.at("kind").get<std::string>();
                    if (kind == "internal")
                        l.target_kind = LinkKind::Internal;
                    else if (kind == "interlink")
                        l.target_kind = LinkKind::Interlink;
                    else
                        throw Error(ErrorCode::MalformedInput,
                                    "unknown link kind '" + kind + "'");
                    l.target = jl.at("target").get<std::string>();
                    l.role = jl.at("role").get<std::string>();
                    e.links.push_back(std::move(l));
                }
            }
            d.elements.push_back(std::move(e));
        }
        d.check_invariants();
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedInput, e.what());
    }
}

}  // namespace hdq
