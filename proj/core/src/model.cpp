#include "hdq/model.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "hdq/errors.hpp"

namespace hdq {

std::string to_string(ValueKind kind) {
    switch (kind) {
    case ValueKind::Text: return "text";
    case ValueKind::Number: return "number";
    case ValueKind::Date: return "date";
    case ValueKind::Uri: return "uri";
    }
    return "text";
}

ValueKind value_kind_from_string(const std::string& s) {
    if (s == "text") return ValueKind::Text;
    if (s == "number") return ValueKind::Number;
    if (s == "date") return ValueKind::Date;
    if (s == "uri") return ValueKind::Uri;
    throw Error(ErrorCode::MalformedInput, "unknown value kind '" + s + "'");
}

DataValue analyze_value(std::string_view raw, const ValueConventions& conv) {
    DataValue v;
    if (is_blank(raw)) {
        // Preserved verbatim so the empty-field detector sees it.
        v.lexical = std::string(raw);
        return v;
    }

    // Surrounding whitespace is markup noise; a trailing token from the
    // unit list is split off into the unit slot.
    v.lexical = trim(raw);
    auto split = v.lexical.find_last_of(" \t");
    if (split != std::string::npos) {
        std::string tail = v.lexical.substr(split + 1);
        if (std::find(conv.units.begin(), conv.units.end(), tail) !=
            conv.units.end()) {
            v.unit = tail;
            v.lexical = trim(v.lexical.substr(0, split));
        }
    }

    std::string stripped =
        strip_uncertainty_markers(v.lexical, conv, &v.qualifiers);

    // Bare integers stay numbers; an uncertainty marker signals a dating,
    // so "ca. 1900" is a date while "1900" alone is not.
    if (!v.qualifiers.empty() &&
        parse_date(stripped, conv.date_grammars).has_value()) {
        v.kind = ValueKind::Date;
    } else if (is_number(stripped, conv.comma_decimal)) {
        v.kind = ValueKind::Number;
    } else if (parse_date(stripped, conv.date_grammars)) {
        v.kind = ValueKind::Date;
    } else if (is_absolute_uri(stripped)) {
        v.kind = ValueKind::Uri;
    } else {
        v.kind = ValueKind::Text;
    }
    v.parse_failed = false;
    return v;
}

void refresh_parse_mark(DataValue& value, const ValueConventions& conv) {
    if (value.kind != ValueKind::Date) {
        value.parse_failed = false;
        return;
    }
    std::string stripped = strip_uncertainty_markers(value.lexical, conv);
    value.parse_failed = !parse_date(stripped, conv.date_grammars).has_value();
}

const Property* DataElement::find_property(std::string_view name) const {
    for (const auto& p : properties)
        if (p.name == name) return &p;
    return nullptr;
}

std::size_t DataElement::count_property(std::string_view name) const {
    return static_cast<std::size_t>(
        std::count_if(properties.begin(), properties.end(),
                      [&](const Property& p) { return p.name == name; }));
}

const DataElement* Dataset::find_element(std::string_view id) const {
    for (const auto& e : elements)
        if (e.id == id) return &e;
    return nullptr;
}

std::size_t Dataset::property_count() const {
    std::size_t n = 0;
    for (const auto& e : elements) n += e.properties.size();
    return n;
}

std::size_t Dataset::link_count() const {
    std::size_t n = 0;
    for (const auto& e : elements) n += e.links.size();
    return n;
}

void Dataset::check_invariants() const {
    std::unordered_set<std::string> seen;
    for (const auto& e : elements) {
        if (!seen.insert(e.id).second)
            throw Error(ErrorCode::DuplicateId,
                        "element id '" + e.id + "' occurs more than once");
    }
}

Path Path::element(std::string id) {
    Path p;
    p.element_id = std::move(id);
    return p;
}

Path Path::property(std::string id, std::string name, std::size_t occurrence) {
    Path p;
    p.element_id = std::move(id);
    p.target = Target::Property;
    p.property_name = std::move(name);
    p.index = occurrence;
    return p;
}

Path Path::link(std::string id, std::size_t index) {
    Path p;
    p.element_id = std::move(id);
    p.target = Target::Link;
    p.index = index;
    return p;
}

std::string Path::str() const {
    switch (target) {
    case Target::Element:
        return element_id;
    case Target::Property:
        if (index == 0) return element_id + "/" + property_name;
        return element_id + "/" + property_name + "[" + std::to_string(index) +
               "]";
    case Target::Link:
        return element_id + "/links[" + std::to_string(index) + "]";
    }
    return element_id;
}

Path Path::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (text.empty())
            throw Error(ErrorCode::UnresolvablePath, "empty path");
        return element(std::string(text));
    }
    std::string id(text.substr(0, slash));
    std::string_view rest = text.substr(slash + 1);
    if (id.empty() || rest.empty())
        throw Error(ErrorCode::UnresolvablePath,
                    "bad path syntax '" + std::string(text) + "'");

    std::size_t index = 0;
    std::string_view name = rest;
    if (rest.back() == ']') {
        auto open = rest.rfind('[');
        if (open == std::string_view::npos)
            throw Error(ErrorCode::UnresolvablePath,
                        "bad path syntax '" + std::string(text) + "'");
        auto digits = rest.substr(open + 1, rest.size() - open - 2);
        auto result =
            std::from_chars(digits.data(), digits.data() + digits.size(), index);
        if (result.ec != std::errc() || result.ptr != digits.data() + digits.size())
            throw Error(ErrorCode::UnresolvablePath,
                        "bad path index in '" + std::string(text) + "'");
        name = rest.substr(0, open);
    }
    if (name == "links" && rest.back() == ']') return link(id, index);
    if (name.empty())
        throw Error(ErrorCode::UnresolvablePath,
                    "bad path syntax '" + std::string(text) + "'");
    return property(id, std::string(name), index);
}

bool Path::resolves_in(const Dataset& d) const {
    const DataElement* match = nullptr;
    for (const auto& e : d.elements) {
        if (e.id != element_id) continue;
        if (match) return false;  // duplicated id: not exactly one node
        match = &e;
    }
    if (!match) return false;
    switch (target) {
    case Target::Element:
        return true;
    case Target::Property: {
        std::size_t seen = 0;
        for (const auto& p : match->properties)
            if (p.name == property_name && seen++ == index) return true;
        return false;
    }
    case Target::Link:
        return index < match->links.size();
    }
    return false;
}

std::vector<const DataElement*> resolve_link(const Dataset& d, const Link& l) {
    if (l.target_kind != LinkKind::Internal)
        throw Error(ErrorCode::WrongKind,
                    "resolve_link expects an internal link, got interlink to " +
                        l.target);
    std::vector<const DataElement*> out;
    for (const auto& e : d.elements)
        if (e.id == l.target) out.push_back(&e);
    return out;
}

}  // namespace hdq
