#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hdq/conventions.hpp"

namespace hdq {

enum class ValueKind { Text, Number, Date, Uri };

std::string to_string(ValueKind kind);
ValueKind value_kind_from_string(const std::string& s);

/// A single recorded value. The lexical form is kept verbatim as ingested
/// (in-band uncertainty markers included); `unit` and `qualifiers` hold
/// what the conventions recognized alongside it. `parse_failed` is derived,
/// never serialized: it marks a date-kind value whose marker-stripped
/// lexical matches none of the active grammars.
struct DataValue {
    std::string lexical;
    ValueKind kind = ValueKind::Text;
    std::optional<std::string> unit;
    std::vector<std::string> qualifiers;
    bool parse_failed = false;

    friend bool operator==(const DataValue&, const DataValue&) = default;
};

/// Builds a DataValue from a raw string: splits a trailing unit token,
/// records uncertainty markers, infers the kind from the stripped remainder
/// (number, then date, then uri, else text).
DataValue analyze_value(std::string_view raw, const ValueConventions& conv);

/// Re-derives `parse_failed` for a value whose kind was declared externally
/// (canonical ingestion) rather than inferred.
void refresh_parse_mark(DataValue& value, const ValueConventions& conv);

struct Property {
    std::string name;
    DataValue value;

    friend bool operator==(const Property&, const Property&) = default;
};

enum class LinkKind { Internal, Interlink };

struct Link {
    LinkKind target_kind = LinkKind::Internal;
    std::string target;  // element id (internal) or absolute URI (interlink)
    std::string role;

    friend bool operator==(const Link&, const Link&) = default;
};

struct DataElement {
    std::string id;
    std::string type_name;
    std::vector<Property> properties;
    std::vector<Link> links;

    friend bool operator==(const DataElement&, const DataElement&) = default;

    /// First occurrence of a property with this name, if any.
    const Property* find_property(std::string_view name) const;
    /// Number of properties sharing this name.
    std::size_t count_property(std::string_view name) const;
};

struct Dataset {
    std::string id;
    std::vector<DataElement> elements;
    /// Provenance note (origin file, ingestion time). Not part of the
    /// canonical interchange format and excluded from equality.
    std::optional<std::string> source_info;

    friend bool operator==(const Dataset& a, const Dataset& b) {
        return a.id == b.id && a.elements == b.elements;
    }

    const DataElement* find_element(std::string_view id) const;
    std::size_t property_count() const;
    std::size_t link_count() const;

    /// Throws Error(DuplicateId) when two elements share an id.
    void check_invariants() const;
};

/// Address of one node in a Dataset: an element, one property occurrence,
/// or one link. Textual form: "o1", "o1/name", "o1/name[2]", "o1/links[0]".
struct Path {
    enum class Target { Element, Property, Link };

    std::string element_id;
    Target target = Target::Element;
    std::string property_name;  // Target::Property only
    std::size_t index = 0;      // property occurrence or link index

    static Path element(std::string id);
    static Path property(std::string id, std::string name, std::size_t occurrence = 0);
    static Path link(std::string id, std::size_t index);

    std::string str() const;
    static Path parse(std::string_view text);

    /// True when the path addresses exactly one node of `d`.
    bool resolves_in(const Dataset& d) const;

    friend bool operator==(const Path&, const Path&) = default;
    friend bool operator<(const Path& a, const Path& b) {
        return a.str() < b.str();
    }
};

/// All elements whose id equals the internal link's target. Zero results
/// signal a dangling reference, more than one an ambiguous one.
/// Throws Error(WrongKind) for interlinks.
std::vector<const DataElement*> resolve_link(const Dataset& d, const Link& l);

}  // namespace hdq
