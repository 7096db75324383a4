#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hdq/model.hpp"

namespace hdq {

/// Minimal XML node tree: elements, attributes, character data. No DTDs,
/// no processing-instruction handling beyond skipping the XML declaration.
struct XmlNode {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<XmlNode> children;
    std::string text;         // concatenated character data, entity-decoded
    std::size_t byte_offset = 0;  // offset of '<' that opened this element

    const std::string* attribute(std::string_view name) const;
};

/// Parses a well-formed document of the supported subset.
/// Throws Error(MalformedInput) with the byte offset in the message.
XmlNode parse_xml_tree(std::string_view bytes);

/// Declares how XML element names map onto the record model.
struct XmlMapping {
    /// XML element name -> record type name. Children of these become
    /// properties and links; everything below is flattened with dotted
    /// names ("event.date").
    std::map<std::string, std::string> element_types;

    /// XML element name -> link role. The target is read from
    /// `link_target_attribute`; absolute URIs become interlinks.
    std::map<std::string, std::string> link_roles;

    std::string id_attribute = "id";
    std::string link_target_attribute = "ref";
    std::string qualifier_attribute = "qualifier";
    std::string unit_attribute = "unit";

    ValueConventions conventions;
};

/// Loads a mapping from its JSON form. "elements" is mandatory.
/// Throws Error(MappingError) when mandatory keys are missing.
XmlMapping parse_xml_mapping(std::string_view json_bytes);

/// Ingests an XML document into a Dataset. Every element whose name is
/// mapped becomes a DataElement; unmapped descendants are retained as
/// generic properties. Document order is preserved.
Dataset parse_xml(std::string_view bytes, const XmlMapping& mapping);

}  // namespace hdq
