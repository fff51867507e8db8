#include "bpdmn/render.hpp"

#include <sstream>

namespace bpdmn {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string html(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string stereotype_label(const DataObject& o) {
  switch (o.stereotype.kind) {
    case Stereotype::Kind::document: return "document";
    case Stereotype::Kind::product: return "product";
    case Stereotype::Kind::message: return "message";
    case Stereotype::Kind::custom: return o.stereotype.label;
    default: return "";
  }
}

class DotWriter {
 public:
  DotWriter(const Diagram& d, const RenderOptions& o) : d_(d), opt_(o) {}

  std::string run() {
    out_ << "digraph " << quote(d_.id()) << " {\n";
    if (!d_.pools().empty() || !d_.stores().empty()) out_ << "  rankdir=LR;\n  node [fontsize=10];\n";
    for (const auto& p : d_.pools()) pool(p);
    for (const auto& s : d_.stores()) store(s);
    if (!opt_.hide_data)
      for (const auto& o : d_.objects()) object(o);
    for (const SequenceFlow* f : d_.all_sequence_flows()) sequence(*f);
    for (const auto& f : d_.message_flows()) message(f);
    for (const DataFlow* f : d_.all_data_flows()) data(*f);
    out_ << "}\n";
    return out_.str();
  }

 private:
  void pool(const Pool& p) {
    out_ << "  subgraph " << quote("cluster_" + p.id) << " {\n";
    out_ << "    label=" << quote(p.name) << ";\n";
    if (p.external) out_ << "    style=dashed;\n";
    for (const auto& n : p.nodes) node(n, 4);
    out_ << "  }\n";
  }

  void node(const Node& n, int depth) {
    std::string pad(static_cast<std::size_t>(depth), ' ');
    if (n.kind == NodeKind::sub_process && !n.children.empty()) {
      out_ << pad << "subgraph " << quote("cluster_" + n.id) << " {\n";
      out_ << pad << "  label=" << quote(n.name) << ";\n  " << pad << "style=rounded;\n";
      // Anchor for flows entering and leaving the sub-process.
      out_ << pad << "  " << quote(n.id) << " [label=" << quote(n.name)
           << ", shape=box, style=\"rounded,bold\", class=\"task\"];\n";
      for (const auto& c : n.children) node(c, depth + 2);
      out_ << pad << "}\n";
      return;
    }
    out_ << pad << quote(n.id) << " [";
    switch (n.kind) {
      case NodeKind::task:
      case NodeKind::sub_process:
        out_ << "label=" << quote(n.name + (n.multi_instance ? " |||" : ""))
             << ", shape=box, style=rounded, class=\"task\"";
        break;
      case NodeKind::gateway_exclusive_data:
        out_ << "label=\"X\", xlabel=" << quote(n.name) << ", shape=diamond, class=\"gateway\"";
        break;
      case NodeKind::gateway_parallel:
        out_ << "label=\"+\", xlabel=" << quote(n.name) << ", shape=diamond, class=\"gateway\"";
        break;
      case NodeKind::start_event_none:
      case NodeKind::start_event_message:
        out_ << "label=\"\", xlabel=" << quote(n.name) << ", shape=circle, class=\"event\"";
        break;
      case NodeKind::intermediate_message:
        out_ << "label=\"\", xlabel=" << quote(n.name) << ", shape=doublecircle, class=\"event\"";
        break;
      case NodeKind::end_event:
        out_ << "label=\"\", xlabel=" << quote(n.name) << ", shape=circle, penwidth=3, class=\"event\"";
        break;
    }
    out_ << "];\n";
  }

  // Open-ended box: left, top and bottom borders only.
  void store(const DataStore& s) {
    out_ << "  " << quote(s.id) << " [shape=plaintext, class=\"store\", label=<<TABLE BORDER=\"0\" "
         << "CELLBORDER=\"1\" CELLSPACING=\"0\"><TR><TD SIDES=\"LTB\">" << html(s.name) << "</TD></TR></TABLE>>];\n";
  }

  void object(const DataObject& o) {
    std::string label = o.name;
    std::string st = stereotype_label(o);
    if (!st.empty()) label = "<<" + st + ">> " + label;
    if (o.state) label += " [" + *o.state + "]";
    out_ << "  " << quote("obj:" + o.id) << " [label=" << quote(label) << ", shape=note, class=\"object\"";
    if (o.physicality == Physicality::physical) out_ << ", style=filled, fillcolor=lightgrey";
    out_ << "];\n";
  }

  void via_objects(const std::string& src, const std::string& tgt, const std::vector<ObjectAttachment>& atts,
                   const std::string& style) {
    if (opt_.hide_data) return;
    for (const auto& a : atts) {
      std::string o = quote("obj:" + a.object);
      out_ << "  " << quote(src) << " -> " << o << " [style=dotted, arrowhead=none" << style << "];\n";
      out_ << "  " << o << " -> " << quote(tgt) << " [style=dotted" << (a.optional ? ", label=\"0\"" : "") << "];\n";
    }
  }

  void sequence(const SequenceFlow& f) {
    out_ << "  " << quote(f.source) << " -> " << quote(f.target) << " [id=" << quote(f.id);
    if (f.guard) out_ << ", label=" << quote(print_expr(*f.guard));
    if (f.is_default) out_ << ", arrowtail=odiamond";
    out_ << "];\n";
    via_objects(f.source, f.target, f.attachments, "");
  }

  void message(const MessageFlow& f) {
    out_ << "  " << quote(f.source) << " -> " << quote(f.target) << " [id=" << quote(f.id)
         << ", style=dashed, arrowhead=empty];\n";
    via_objects(f.source, f.target, f.attachments, ", color=grey");
  }

  void data(const DataFlow& f) {
    out_ << "  " << quote(f.source) << " -> " << quote(f.target) << " [id=" << quote(f.id) << ", style=dashed";
    if (!opt_.hide_data && d_.find_object(f.object)) out_ << ", label=" << quote(d_.find_object(f.object)->name);
    if (f.optional) out_ << ", taillabel=\"0\"";
    out_ << "];\n";
  }

  const Diagram& d_;
  const RenderOptions& opt_;
  std::ostringstream out_;
};

}  // namespace

std::string to_dot(const Diagram& d, const RenderOptions& options) { return DotWriter(d, options).run(); }

}  // namespace bpdmn
