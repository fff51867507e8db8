#include "bpdmn/validator.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace bpdmn {

std::string_view to_string(Severity s) { return s == Severity::error ? "error" : "warning"; }

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic& diag) {
  return diag.rule + " " + std::string(to_string(diag.severity)) + " " + diag.element + ": " + diag.message;
}

namespace {

class Checker {
 public:
  explicit Checker(const Diagram& d) : d_(d) {}

  std::vector<Diagnostic> run() {
    sources_and_targets();
    optional_inputs();
    mappings();
    entity_graphs();
    store_scopes();
    message_pools();
    events();
    origin_stores();
    collapsed_stores();
    std::sort(out_.begin(), out_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      auto rule_no = [](const std::string& r) { return std::stoi(r.substr(1)); };
      return std::tuple(rule_no(a.rule), a.element, a.message) < std::tuple(rule_no(b.rule), b.element, b.message);
    });
    return std::move(out_);
  }

 private:
  void report(std::string rule, std::string element, std::string message, Severity sev = Severity::error) {
    out_.push_back({std::move(rule), sev, std::move(element), std::move(message)});
  }

  bool touches_external(const MessageFlow& f) const {
    for (const auto* end : {&f.source, &f.target}) {
      const Pool* p = d_.pool_of(*end);
      if (p && p->external) return true;
    }
    return false;
  }

  // V1
  void sources_and_targets() {
    std::map<std::string, bool> only_external_messages;
    auto use = [&](const std::string& obj, bool external_message) {
      auto [it, fresh] = only_external_messages.emplace(obj, external_message);
      if (!fresh) it->second = it->second && external_message;
    };
    for (const SequenceFlow* f : d_.all_sequence_flows())
      for (const auto& a : f->attachments) use(a.object, false);
    for (const auto& f : d_.message_flows())
      for (const auto& a : f.attachments) use(a.object, touches_external(f));
    for (const DataFlow* f : d_.all_data_flows()) use(f->object, false);
    for (const auto& m : d_.mappings()) {
      use(m.source_object, false);
      use(m.target_object, false);
    }
    for (const auto& [obj, external_only] : only_external_messages) {
      if (external_only) continue;
      if (object_sources(d_, obj).empty()) report("V1", obj, "object has no source");
      if (object_targets(d_, obj).empty()) report("V1", obj, "object has no target");
    }
  }

  // V2
  void optional_inputs() {
    for (const SequenceFlow* f : d_.all_sequence_flows())
      for (const auto& a : f->attachments)
        if (a.optional && a.direction == Direction::output)
          report("V2", f->id, "output attachment of '" + a.object + "' is marked optional");
    for (const auto& f : d_.message_flows())
      for (const auto& a : f.attachments)
        if (a.optional && a.direction == Direction::output)
          report("V2", f.id, "output attachment of '" + a.object + "' is marked optional");
    for (const DataFlow* f : d_.all_data_flows())
      if (f->optional && d_.kind_of(f->target) == ElementKind::store)
        report("V2", f->id, "data flow into store '" + f->target + "' is marked optional");
  }

  // Undirected-by-hierarchy reachability over nodes, stores and external pools.
  std::set<std::string> reachable_from(const std::string& start) const {
    std::map<std::string, std::vector<std::string>> adj;
    for (const SequenceFlow* f : d_.all_sequence_flows()) adj[f->source].push_back(f->target);
    for (const auto& f : d_.message_flows()) adj[f.source].push_back(f.target);
    for (const DataFlow* f : d_.all_data_flows()) adj[f->source].push_back(f->target);
    for (const Node* n : d_.all_nodes())
      for (const auto& c : n->children) {
        adj[n->id].push_back(c.id);
        adj[c.id].push_back(n->id);
      }
    std::set<std::string> seen{start};
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
      std::string cur = queue.front();
      queue.pop_front();
      for (const auto& next : adj[cur])
        if (seen.insert(next).second) queue.push_back(next);
    }
    return seen;
  }

  // V3
  void mappings() {
    for (const auto& m : d_.mappings()) {
      const DataObject* src = d_.find_object(m.source_object);
      const DataObject* dst = d_.find_object(m.target_object);
      if (m.rules.empty()) report("V3", m.id, "mapping has no copy rules");
      for (const auto& rule : m.rules) {
        for (const auto& path : rule.from.paths()) {
          auto dot = path.find('.');
          std::string obj = path.substr(0, dot);
          std::string var = dot == std::string::npos ? "" : path.substr(dot + 1);
          if (obj != src->id)
            report("V3", m.id, "copy source '" + path + "' is outside object '" + src->id + "'");
          else if (!src->find_variable(var))
            report("V3", m.id, "copy source '" + path + "' does not resolve in '" + src->id + "'");
        }
        const Variable* to = dst->find_variable(rule.to);
        if (!to)
          report("V3", m.id, "copy target '" + dst->id + "." + rule.to + "' does not resolve in '" + dst->id + "'");
        else if (!is_scalar(to->type))
          report("V3", m.id, "copy target '" + dst->id + "." + rule.to + "' is not a scalar variable");
      }
      std::set<std::string> producers, consumers;
      for (const auto& p : object_sources(d_, src->id))
        if (p.kind != Provenance::Kind::mapping) producers.insert(p.element);
      for (const auto& p : object_targets(d_, dst->id))
        if (p.kind == Provenance::Kind::task_input) consumers.insert(p.element);
      bool connected = false;
      for (const auto& p : producers) {
        auto reach = reachable_from(p);
        for (const auto& c : consumers)
          if (c != p && reach.count(c)) connected = true;
        if (connected) break;
      }
      if (!connected)
        report("V3", m.id,
               "no path from a producer of '" + src->id + "' to a consumer of '" + dst->id + "'");
    }
  }

  // V4
  void entity_graphs() {
    for (const auto& s : d_.stores()) {
      std::set<std::string> names;
      for (const auto& e : s.entities) {
        if (!names.insert(e.name).second) report("V4", s.id, "duplicate entity '" + e.name + "'");
        std::set<std::string> fields;
        for (const auto& f : e.fields)
          if (!fields.insert(f.name).second)
            report("V4", s.id, "duplicate field '" + f.name + "' in entity '" + e.name + "'");
      }
      for (const auto& r : s.relationships)
        for (const auto* end : {&r.left, &r.right})
          if (!names.count(*end))
            report("V4", s.id, "relationship '" + r.name + "' references unknown entity '" + *end + "'");
      std::map<std::string, std::vector<std::string>> parents;
      for (const auto& g : s.generalizations) {
        bool ok = true;
        for (const auto* end : {&g.parent, &g.child})
          if (!names.count(*end)) {
            report("V4", s.id, "generalization references unknown entity '" + *end + "'");
            ok = false;
          }
        if (g.parent == g.child) {
          report("V4", s.id, "entity '" + g.child + "' generalizes itself");
          ok = false;
        }
        if (ok) parents[g.child].push_back(g.parent);
      }
      // Colour-marking DFS for cycles.
      std::map<std::string, int> colour;
      bool cyclic = false;
      std::function<void(const std::string&)> visit = [&](const std::string& e) {
        colour[e] = 1;
        for (const auto& p : parents[e]) {
          if (colour[p] == 1) cyclic = true;
          else if (colour[p] == 0) visit(p);
        }
        colour[e] = 2;
      };
      for (const auto& n : names)
        if (colour[n] == 0) visit(n);
      if (cyclic) report("V4", s.id, "generalization cycle");
    }
  }

  // V5
  void store_scopes() {
    for (const DataFlow* f : d_.all_data_flows()) {
      bool src_store = d_.kind_of(f->source) == ElementKind::store;
      const std::string& store = src_store ? f->source : f->target;
      const std::string& node = src_store ? f->target : f->source;
      if (d_.kind_of(store) != ElementKind::store) continue;
      if (!resolve_scope(d_, store).count(node))
        report("V5", f->id, "node '" + node + "' is outside the scope of store '" + store + "'");
    }
  }

  // V6
  void message_pools() {
    for (const auto& f : d_.message_flows()) {
      const Pool* a = d_.pool_of(f.source);
      const Pool* b = d_.pool_of(f.target);
      if (a != b) continue;
      std::string msg = "message flow stays inside pool '" + a->id + "'";
      if (!f.attachments.empty()) {
        msg += " while carrying";
        for (const auto& att : f.attachments) msg += " '" + att.object + "'";
      }
      report("V6", f.id, msg);
    }
  }

  // V7
  void events() {
    auto check = [&](const std::string& owner, const std::vector<Node>& nodes, std::string_view what) {
      bool start = false, end = false;
      for (const auto& n : nodes) {
        start = start || is_start_event(n.kind);
        end = end || n.kind == NodeKind::end_event;
      }
      if (!start) report("V7", owner, std::string(what) + " has no start event");
      if (!end) report("V7", owner, std::string(what) + " has no end event");
    };
    for (const auto& p : d_.pools())
      if (!p.external) check(p.id, p.nodes, "pool");
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::sub_process && !n->children.empty()) check(n->id, n->children, "sub-process");
  }

  // V8
  void origin_stores() {
    for (const auto& o : d_.objects()) {
      if (!o.origin_store) continue;
      auto fields = d_.find_store(*o.origin_store)->qualified_fields();
      for (const auto& v : o.variables)
        if (!fields.count(v.name))
          report("V8", o.id, "variable '" + v.name + "' is not in store '" + *o.origin_store + "'");
    }
  }

  // V9
  void collapsed_stores() {
    for (const auto& s : d_.stores())
      if (s.collapsed && s.entities.empty())
        report("V9", s.id, "collapsed store has no internal structure", Severity::warning);
  }

  const Diagram& d_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const Diagram& d) { return Checker(d).run(); }

}  // namespace bpdmn
