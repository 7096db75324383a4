#include "hdq/xml.hpp"

#include <cctype>

#include <nlohmann/json.hpp>

#include "hdq/errors.hpp"

namespace hdq {
namespace {

class XmlParser {
public:
    explicit XmlParser(std::string_view input) : input_(input) {}

    XmlNode parse_document() {
        skip_misc();
        if (eof() || peek() != '<')
            fail("expected root element");
        XmlNode root = parse_element();
        skip_misc();
        if (!eof()) fail("content after root element");
        return root;
    }

private:
    std::string_view input_;
    std::size_t pos_ = 0;

    bool eof() const { return pos_ >= input_.size(); }
    char peek() const { return input_[pos_]; }
    bool starts_with(std::string_view s) const {
        return input_.substr(pos_, s.size()) == s;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw Error(ErrorCode::MalformedInput,
                    message + " at byte " + std::to_string(pos_));
    }

    void skip_whitespace() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    // Whitespace, comments, and the XML declaration between elements.
    void skip_misc() {
        for (;;) {
            skip_whitespace();
            if (starts_with("<!--")) {
                auto end = input_.find("-->", pos_ + 4);
                if (end == std::string_view::npos) fail("unterminated comment");
                pos_ = end + 3;
            } else if (starts_with("<?")) {
                auto end = input_.find("?>", pos_ + 2);
                if (end == std::string_view::npos)
                    fail("unterminated declaration");
                pos_ = end + 2;
            } else {
                return;
            }
        }
    }

    static bool name_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
               c == ':';
    }
    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
               c == ':' || c == '-' || c == '.';
    }

    std::string parse_name() {
        if (eof() || !name_start(peek())) fail("expected name");
        std::size_t begin = pos_;
        while (!eof() && name_char(peek())) ++pos_;
        return std::string(input_.substr(begin, pos_ - begin));
    }

    std::string decode_entities(std::string_view raw) {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out.push_back(raw[i]);
                continue;
            }
            auto semi = raw.find(';', i + 1);
            if (semi == std::string_view::npos) fail("unterminated entity");
            std::string_view name = raw.substr(i + 1, semi - i - 1);
            if (name == "amp") out.push_back('&');
            else if (name == "lt") out.push_back('<');
            else if (name == "gt") out.push_back('>');
            else if (name == "quot") out.push_back('"');
            else if (name == "apos") out.push_back('\'');
            else if (!name.empty() && name[0] == '#') {
                long code = 0;
                try {
                    code = name[1] == 'x' || name[1] == 'X'
                               ? std::stol(std::string(name.substr(2)), nullptr, 16)
                               : std::stol(std::string(name.substr(1)));
                } catch (const std::exception&) {
                    fail("bad character reference");
                }
                append_utf8(out, code);
            } else {
                fail("unknown entity '&" + std::string(name) + ";'");
            }
            i = semi;
        }
        return out;
    }

    static void append_utf8(std::string& out, long code) {
        if (code < 0x80) {
            out.push_back(static_cast<char>(code));
        } else if (code < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (code >> 6)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else if (code < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (code >> 12)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (code >> 18)));
            out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        }
    }

    XmlNode parse_element() {
        XmlNode node;
        node.byte_offset = pos_;
        ++pos_;  // '<'
        node.name = parse_name();

        for (;;) {
            skip_whitespace();
            if (eof()) fail("unterminated start tag");
            if (peek() == '/') {
                ++pos_;
                if (eof() || peek() != '>') fail("expected '>'");
                ++pos_;
                return node;  // self-closing
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            std::string attr = parse_name();
            skip_whitespace();
            if (eof() || peek() != '=') fail("expected '=' after attribute");
            ++pos_;
            skip_whitespace();
            if (eof() || (peek() != '"' && peek() != '\''))
                fail("expected quoted attribute value");
            char quote = peek();
            ++pos_;
            std::size_t begin = pos_;
            while (!eof() && peek() != quote) {
                if (peek() == '<') fail("'<' in attribute value");
                ++pos_;
            }
            if (eof()) fail("unterminated attribute value");
            node.attributes.emplace_back(
                attr, decode_entities(input_.substr(begin, pos_ - begin)));
            ++pos_;  // closing quote
        }

        // Content until the matching end tag.
        for (;;) {
            if (eof()) fail("missing end tag for <" + node.name + ">");
            if (peek() == '<') {
                if (starts_with("</")) {
                    pos_ += 2;
                    std::string closing = parse_name();
                    if (closing != node.name)
                        fail("mismatched end tag </" + closing +
                             "> for <" + node.name + ">");
                    skip_whitespace();
                    if (eof() || peek() != '>') fail("expected '>'");
                    ++pos_;
                    return node;
                }
                if (starts_with("<!--")) {
                    auto end = input_.find("-->", pos_ + 4);
                    if (end == std::string_view::npos)
                        fail("unterminated comment");
                    pos_ = end + 3;
                    continue;
                }
                if (starts_with("<![CDATA[")) {
                    auto end = input_.find("]]>", pos_ + 9);
                    if (end == std::string_view::npos)
                        fail("unterminated CDATA section");
                    node.text.append(input_.substr(pos_ + 9, end - pos_ - 9));
                    pos_ = end + 3;
                    continue;
                }
                node.children.push_back(parse_element());
            } else {
                std::size_t begin = pos_;
                while (!eof() && peek() != '<') ++pos_;
                node.text.append(
                    decode_entities(input_.substr(begin, pos_ - begin)));
            }
        }
    }
};

// Dotted name for a nested generic property ("event" + "date" -> "event.date").
std::string join_name(const std::string& prefix, const std::string& name) {
    return prefix.empty() ? name : prefix + "." + name;
}

struct ElementBuilder {
    const XmlMapping& mapping;
    DataElement element;

    void consume(const XmlNode& node, const std::string& prefix) {
        for (const auto& child : node.children) {
            auto link_it = mapping.link_roles.find(child.name);
            if (link_it != mapping.link_roles.end()) {
                Link link;
                link.role = link_it->second;
                if (const auto* target =
                        child.attribute(mapping.link_target_attribute)) {
                    link.target = *target;
                } else {
                    link.target = trim(child.text);
                }
                link.target_kind = is_absolute_uri(link.target)
                                       ? LinkKind::Interlink
                                       : LinkKind::Internal;
                element.links.push_back(std::move(link));
                continue;
            }
            if (child.children.empty()) {
                add_property(join_name(prefix, child.name), child);
            } else {
                consume(child, join_name(prefix, child.name));
            }
        }
    }

    void add_property(const std::string& name, const XmlNode& node) {
        Property p;
        p.name = name;
        p.value = analyze_value(node.text, mapping.conventions);
        if (const auto* unit = node.attribute(mapping.unit_attribute))
            p.value.unit = *unit;
        if (const auto* q = node.attribute(mapping.qualifier_attribute)) {
            if (!q->empty()) p.value.qualifiers.push_back(*q);
        }
        element.properties.push_back(std::move(p));
    }
};

void collect_elements(const XmlNode& node, const XmlMapping& mapping,
                      Dataset& out) {
    auto type_it = mapping.element_types.find(node.name);
    if (type_it != mapping.element_types.end()) {
        ElementBuilder builder{mapping, {}};
        builder.element.type_name = type_it->second;
        if (const auto* id = node.attribute(mapping.id_attribute))
            builder.element.id = *id;
        else
            builder.element.id =
                "element-" + std::to_string(out.elements.size() + 1);
        builder.consume(node, "");
        out.elements.push_back(std::move(builder.element));
        return;
    }
    for (const auto& child : node.children)
        collect_elements(child, mapping, out);
}

}  // namespace

const std::string* XmlNode::attribute(std::string_view name) const {
    for (const auto& [key, value] : attributes)
        if (key == name) return &value;
    return nullptr;
}

XmlNode parse_xml_tree(std::string_view bytes) {
    return XmlParser(bytes).parse_document();
}

XmlMapping parse_xml_mapping(std::string_view json_bytes) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedInput, e.what());
    }
    XmlMapping m;
    if (!doc.contains("elements") || !doc["elements"].is_object())
        throw Error(ErrorCode::MappingError,
                    "mapping is missing the mandatory 'elements' object");
    for (const auto& [tag, type] : doc["elements"].items())
        m.element_types[tag] = type.get<std::string>();
    if (doc.contains("links"))
        for (const auto& [tag, role] : doc["links"].items())
            m.link_roles[tag] = role.get<std::string>();
    if (doc.contains("idAttribute")) m.id_attribute = doc["idAttribute"];
    if (doc.contains("linkTargetAttribute"))
        m.link_target_attribute = doc["linkTargetAttribute"];
    if (doc.contains("qualifierAttribute"))
        m.qualifier_attribute = doc["qualifierAttribute"];
    if (doc.contains("unitAttribute")) m.unit_attribute = doc["unitAttribute"];
    return m;
}

Dataset parse_xml(std::string_view bytes, const XmlMapping& mapping) {
    XmlNode root = parse_xml_tree(bytes);
    Dataset d;
    if (const auto* id = root.attribute(mapping.id_attribute))
        d.id = *id;
    collect_elements(root, mapping, d);
    if (d.id.empty() &&
        mapping.element_types.find(root.name) == mapping.element_types.end())
        d.id = root.name;
    return d;
}

}  // namespace hdq
