#include "bpdmn/xml.hpp"

namespace bpdmn {

std::string xml_escape(std::string_view s, bool attribute) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += attribute ? "&quot;" : "\""; break;
      case '\'': out += attribute ? "&apos;" : "'"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

void write(const XmlElement& e, int depth, std::string& out) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  if (e.is_comment) {
    // "--" may not appear inside a comment.
    std::string body = e.text;
    for (std::size_t p; (p = body.find("--")) != std::string::npos;) body.replace(p, 2, "- -");
    out += indent + "<!-- " + body + " -->\n";
    return;
  }
  out += indent + "<" + e.name;
  for (const auto& [k, v] : e.attributes) out += " " + k + "=\"" + xml_escape(v, true) + "\"";
  if (e.children.empty() && e.text.empty()) {
    out += "/>\n";
    return;
  }
  out += ">";
  if (e.children.empty()) {
    out += xml_escape(e.text, false) + "</" + e.name + ">\n";
    return;
  }
  out += "\n";
  if (!e.text.empty()) out += indent + "  " + xml_escape(e.text, false) + "\n";
  for (const auto& c : e.children) write(c, depth + 1, out);
  out += indent + "</" + e.name + ">\n";
}

}  // namespace

std::string to_xml(const XmlElement& root) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  write(root, 0, out);
  return out;
}

}  // namespace bpdmn
