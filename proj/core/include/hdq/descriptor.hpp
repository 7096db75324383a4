#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hdq/model.hpp"
#include "hdq/xml.hpp"

namespace hdq {

/// Declaration for one property name (shared across record types).
struct PropertyDecl {
    std::optional<ValueKind> kind;
    std::vector<std::string> allowed_units;
    std::optional<std::string> vocabulary;   // vocabulary id
    std::optional<std::string> format_rule;  // format rule id
    bool measurement = false;      // a unit is expected on every value
    bool repeatable = false;       // multiple occurrences are the norm
    bool qualifier_field = false;  // model offers a dedicated qualifier slot
    bool authority = false;        // value should be backed by an interlink
};

struct TypeDecl {
    std::vector<std::string> required;  // required property names
};

/// Lightweight schema for record types: required properties, per-property
/// declarations, link-role targets, vocabulary and format-rule bindings.
struct ModelDescriptor {
    std::map<std::string, TypeDecl> types;
    std::map<std::string, PropertyDecl> properties;
    std::map<std::string, std::string> link_targets;  // role -> type name
    /// vocabulary id -> sorted term set (exact-match semantics)
    std::map<std::string, std::set<std::string>> vocabularies;
    /// format rule id -> ECMAScript regex. "iso8601-date" is built in and
    /// checked against the date grammars instead of a regex.
    std::map<std::string, std::string> format_rules;
    std::optional<XmlMapping> xml;

    const PropertyDecl* find_property(std::string_view name) const;
    const TypeDecl* find_type(std::string_view name) const;
    bool is_measurement(const PropertyDecl& decl) const {
        return decl.measurement || !decl.allowed_units.empty();
    }
};

/// Parses the descriptor JSON (schema documented in docs/formats.md).
/// Vocabulary values may be inline term arrays or file paths relative to
/// `base_dir`. Unknown vocabulary/format-rule references fail fast.
ModelDescriptor parse_descriptor(std::string_view json_bytes,
                                 const std::string& base_dir = ".");

struct StructuralViolation {
    enum class Rule { MissingRequired, KindMismatch, UnknownType };

    Rule rule;
    Path path;
    std::string detail;

    friend bool operator==(const StructuralViolation&,
                           const StructuralViolation&) = default;
};

std::string to_string(StructuralViolation::Rule rule);

/// Checks a dataset against the descriptor: missing required properties,
/// declared-kind mismatches, unknown type names. Violations are data, not
/// errors; the list is empty for a conforming dataset.
std::vector<StructuralViolation> validate_structure(const Dataset& d,
                                                    const ModelDescriptor& m);

/// True when the marker-stripped lexical of `v` can be read as `kind`.
bool lexical_matches_kind(const DataValue& v, ValueKind kind,
                          const ValueConventions& conv);

}  // namespace hdq
