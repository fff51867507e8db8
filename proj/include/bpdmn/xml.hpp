#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bpdmn {

/// Minimal element tree for emitting XML. Attributes keep insertion order.
struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;
  std::vector<XmlElement> children;
  bool is_comment = false;

  explicit XmlElement(std::string n = {}) : name(std::move(n)) {}

  XmlElement& set(std::string key, std::string value) {
    attributes.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  XmlElement& add(std::string child_name) {
    children.emplace_back(std::move(child_name));
    return children.back();
  }
  XmlElement& add(XmlElement child) {
    children.push_back(std::move(child));
    return children.back();
  }
  XmlElement& comment(std::string body) {
    XmlElement c;
    c.is_comment = true;
    c.text = std::move(body);
    children.push_back(std::move(c));
    return *this;
  }
};

std::string xml_escape(std::string_view s, bool attribute);

/// Serializes with an XML declaration, two-space indentation and a trailing newline.
std::string to_xml(const XmlElement& root);

}  // namespace bpdmn
