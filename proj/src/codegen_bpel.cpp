#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "bpdmn/codegen.hpp"
#include "bpdmn/xml.hpp"
#include "codegen_common.hpp"

namespace bpdmn {

namespace {

constexpr const char* bpel_namespace = "http://docs.oasis-open.org/wsbpel/2.0/process/executable";
constexpr const char* exit_id = "";

std::string xsd_type(VarType t) {
  switch (t) {
    case VarType::number: return "xsd:double";
    case VarType::boolean: return "xsd:boolean";
    default: return "xsd:string";
  }
}

class BpelWriter {
 public:
  explicit BpelWriter(const Diagram& d) : d_(d) {}

  Translation run() {
    XmlElement root("process");
    std::string name = d_.id().empty() ? "process" : d_.id();
    root.set("name", name).set("targetNamespace", "urn:bpdmn:" + name).set("xmlns", bpel_namespace);
    root.add(variables());

    std::vector<const Pool*> pools;
    for (const auto& p : d_.pools())
      if (!p.external) pools.push_back(&p);
    std::sort(pools.begin(), pools.end(), [](const Pool* a, const Pool* b) { return a->id < b->id; });
    if (pools.size() == 1) {
      root.add(pool_body(*pools.front()));
    } else if (pools.size() > 1) {
      warn("diagram has " + std::to_string(pools.size()) + " process pools; they run side by side in one flow");
      XmlElement flow("flow");
      for (const Pool* p : pools) flow.add(pool_body(*p));
      root.add(std::move(flow));
    }
    for (const auto& s : d_.stores())
      if (s.scope.sub_process)
        warn("store '" + s.id + "' is scoped to sub-process '" + *s.scope.sub_process +
             "'; BPEL has no equivalent, its variables are declared process-wide");
    return {to_xml(root), std::move(warnings_)};
  }

 private:
  void warn(std::string w) { detail::push_unique(warnings_, w); }

  // Objects only ever seen on message flows have no BPEL counterpart.
  bool message_only(const DataObject& o) const {
    bool on_message = false;
    for (const auto& f : d_.message_flows())
      for (const auto& a : f.attachments)
        if (a.object == o.id) on_message = true;
    if (!on_message) return false;
    for (const SequenceFlow* f : d_.all_sequence_flows())
      for (const auto& a : f->attachments)
        if (a.object == o.id) return false;
    for (const DataFlow* f : d_.all_data_flows())
      if (f->object == o.id) return false;
    for (const auto& m : d_.mappings())
      if (m.source_object == o.id || m.target_object == o.id) return false;
    return true;
  }

  XmlElement variables() {
    XmlElement vars("variables");
    std::vector<const DataObject*> objects;
    for (const auto& o : d_.objects()) objects.push_back(&o);
    std::sort(objects.begin(), objects.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const DataObject* o : objects) {
      if (message_only(*o)) {
        warn("object '" + o->id + "' only travels on message flows; BPEL has no counterpart, skipped");
        continue;
      }
      vars.add("variable").set("name", o->id).set("messageType", o->message_type.value_or(o->id));
    }
    std::vector<const DataStore*> stores;
    for (const auto& s : d_.stores()) stores.push_back(&s);
    std::sort(stores.begin(), stores.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const DataStore* s : stores) {
      auto fields = detail::store_fields(*s);
      if (fields.empty()) continue;
      vars.comment("store " + s->id + ": one variable per entity field, typed with XML Schema simple types");
      for (const auto& f : fields)
        vars.add("variable").set("name", s->id + "." + f.path).set("type", xsd_type(f.type));
    }
    return vars;
  }

  // ---- control skeleton

  struct Region {
    std::set<std::string> nodes;
    std::map<std::string, std::vector<const SequenceFlow*>> succ;
    std::map<std::string, std::string> ipdom;
  };

  Region make_region(const std::vector<Node>& nodes) const {
    Region r;
    for (const auto& n : nodes) r.nodes.insert(n.id);
    for (const auto& id : r.nodes)
      for (const SequenceFlow* f : d_.outgoing(id))
        if (r.nodes.count(f->target)) r.succ[id].push_back(f);
    // Post-dominator sets by fixed-point iteration; "" is the virtual exit.
    std::set<std::string> universe = r.nodes;
    universe.insert(exit_id);
    std::map<std::string, std::set<std::string>> pdom;
    for (const auto& id : r.nodes) pdom[id] = universe;
    pdom[exit_id] = {exit_id};
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& id : r.nodes) {
        std::set<std::string> meet;
        const auto& out = r.succ[id];
        if (out.empty()) {
          meet = {exit_id};
        } else {
          meet = pdom[out.front()->target];
          for (const SequenceFlow* f : out) {
            std::set<std::string> next;
            const auto& other = pdom[f->target];
            std::set_intersection(meet.begin(), meet.end(), other.begin(), other.end(),
                                  std::inserter(next, next.begin()));
            meet = std::move(next);
          }
        }
        meet.insert(id);
        if (meet != pdom[id]) {
          pdom[id] = std::move(meet);
          changed = true;
        }
      }
    }
    for (const auto& id : r.nodes) {
      std::set<std::string> strict = pdom[id];
      strict.erase(id);
      for (const auto& cand : strict) {
        std::set<std::string> cand_set = cand == exit_id ? std::set<std::string>{exit_id} : pdom[cand];
        if (cand_set == strict) {
          r.ipdom[id] = cand;
          break;
        }
      }
    }
    return r;
  }

  std::optional<std::string> starter_pool(const Pool& pool) const {
    for (const auto& n : pool.nodes)
      if (n.kind == NodeKind::start_event_message)
        for (const MessageFlow* f : d_.incoming_messages(n.id)) return d_.pool_of(f->source)->id;
    return std::nullopt;
  }

  XmlElement pool_body(const Pool& pool) {
    current_starter_ = starter_pool(pool);
    XmlElement body = nodes_body(pool.nodes);
    XmlElement seq("sequence");
    seq.set("name", pool.id);
    if (body.name == "sequence")
      seq.children = std::move(body.children);
    else
      seq.add(std::move(body));
    return seq;
  }

  // Translates a set of sibling nodes starting at their start events.
  XmlElement nodes_body(const std::vector<Node>& nodes) {
    Region r = make_region(nodes);
    std::vector<std::string> entries;
    for (const auto& id : r.nodes)
      if (is_start_event(d_.find_node(id)->kind)) entries.push_back(id);
    if (entries.empty())
      for (const auto& id : r.nodes)
        if (d_.incoming(id).empty()) entries.push_back(id);
    std::set<std::string> visited;
    if (entries.size() == 1) return wrap(chain(r, entries.front(), exit_id, visited));
    XmlElement flow("flow");
    for (const auto& e : entries) flow.add(wrap(chain(r, e, exit_id, visited)));
    return flow;
  }

  static XmlElement wrap(std::vector<XmlElement> items) {
    XmlElement seq("sequence");
    seq.children = std::move(items);
    if (seq.children.empty()) seq.add("empty");
    return seq;
  }

  std::vector<XmlElement> chain(const Region& r, std::string cur, const std::string& stop,
                                std::set<std::string>& visited) {
    std::vector<XmlElement> out;
    std::vector<std::string> mine;
    struct Unwind {
      std::set<std::string>& path;
      std::vector<std::string>& mine;
      ~Unwind() {
        for (const auto& m : mine) path.erase(m);
      }
    } unwind{path_, mine};
    while (cur != exit_id && cur != stop) {
      if (!visited.insert(cur).second) {
        if (path_.count(cur)) warn("cyclic control flow through '" + cur + "' is not translated");
        break;
      }
      path_.insert(cur);
      mine.push_back(cur);
      const Node* n = d_.find_node(cur);
      for (auto& a : assigns_for(*n)) out.push_back(std::move(a));
      if (auto act = activity(*n)) out.push_back(std::move(*act));
      auto it = r.succ.find(cur);
      if (it == r.succ.end() || it->second.empty()) break;
      const auto& outs = it->second;
      if (outs.size() == 1) {
        cur = outs.front()->target;
        continue;
      }
      std::string join = r.ipdom.count(cur) ? r.ipdom.at(cur) : exit_id;
      if (n->kind == NodeKind::gateway_exclusive_data)
        out.push_back(choice(r, *n, outs, join, visited));
      else
        out.push_back(parallel(r, outs, join, visited));
      cur = join;
    }
    return out;
  }

  XmlElement parallel(const Region& r, const std::vector<const SequenceFlow*>& outs, const std::string& join,
                      std::set<std::string>& visited) {
    XmlElement flow("flow");
    for (const SequenceFlow* f : outs) flow.add(wrap(chain(r, f->target, join, visited)));
    return flow;
  }

  XmlElement choice(const Region& r, const Node& gw, const std::vector<const SequenceFlow*>& outs,
                    const std::string& join, std::set<std::string>& visited) {
    XmlElement node("if");
    const SequenceFlow* fallback = nullptr;
    bool first = true;
    for (const SequenceFlow* f : outs) {
      if (f->is_default) {
        fallback = f;
        continue;
      }
      std::optional<Expression> guard = f->guard ? f->guard : gw.condition;
      std::string cond = guard ? print_expr(*guard) : "true";
      XmlElement* target = &node;
      if (!first) target = &node.add("elseif");
      target->add("condition").text = cond;
      target->add(wrap(chain(r, f->target, join, visited)));
      first = false;
    }
    if (fallback) {
      if (first) {
        // Only a default branch: always taken.
        node.add("condition").text = "true";
        node.add(wrap(chain(r, fallback->target, join, visited)));
      } else {
        node.add("else").add(wrap(chain(r, fallback->target, join, visited)));
      }
    }
    return node;
  }

  std::vector<XmlElement> assigns_for(const Node& n) {
    std::vector<XmlElement> out;
    std::set<std::string> inputs;
    for (const auto& in : node_inputs(d_, n.id)) inputs.insert(in.object);
    std::vector<const DataMapping*> ms;
    for (const auto& m : d_.mappings())
      if (inputs.count(m.target_object) && !emitted_.count(m.id)) ms.push_back(&m);
    std::sort(ms.begin(), ms.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const DataMapping* m : ms) {
      emitted_.insert(m->id);
      XmlElement assign("assign");
      assign.set("name", m->id);
      for (const auto& rule : m->rules) {
        XmlElement& copy = assign.add("copy");
        XmlElement& from = copy.add("from");
        if (rule.from.is_path()) {
          auto path = rule.from.paths().front();
          auto dot = path.find('.');
          from.set("variable", path.substr(0, dot));
          if (dot != std::string::npos) from.set("part", path.substr(dot + 1));
        } else {
          from.set("expression", print_expr(rule.from));
        }
        copy.add("to").set("variable", m->target_object).set("part", rule.to);
      }
      out.push_back(std::move(assign));
    }
    return out;
  }

  void placeholders(XmlElement& e, const Node& n) const {
    e.set("partnerLink", n.id + "PL").set("portType", n.id + "PT").set("operation", n.id);
  }

  std::optional<XmlElement> activity(const Node& n) {
    switch (n.kind) {
      case NodeKind::task: return task(n);
      case NodeKind::sub_process: {
        XmlElement scope("scope");
        scope.set("name", n.name);
        if (!n.children.empty()) scope.add(nodes_body(n.children));
        else scope.add("empty");
        return scope;
      }
      case NodeKind::start_event_message:
      case NodeKind::intermediate_message: {
        XmlElement recv("receive");
        recv.set("name", n.name);
        placeholders(recv, n);
        std::string var = received_object(n);
        if (!var.empty()) recv.set("variable", var);
        if (n.kind == NodeKind::start_event_message) recv.set("createInstance", "yes");
        return recv;
      }
      case NodeKind::end_event:
        if (auto r = reply(n)) return r;
        return std::nullopt;
      default: return std::nullopt;
    }
  }

  std::string received_object(const Node& n) const {
    for (const auto& in : node_inputs(d_, n.id))
      if (in.route == NodeInput::Route::message_flow) return in.object;
    for (const auto& out : node_outputs(d_, n.id))
      if (out.route == NodeOutput::Route::sequence_flow) return out.object;
    return {};
  }

  std::optional<XmlElement> reply(const Node& n) {
    if (!current_starter_) return std::nullopt;
    for (const MessageFlow* f : d_.outgoing_messages(n.id)) {
      if (d_.pool_of(f->target)->id != *current_starter_) continue;
      XmlElement r("reply");
      r.set("name", n.name);
      placeholders(r, n);
      std::string var;
      for (const auto& a : f->attachments)
        if (var.empty()) var = a.object;
      if (var.empty())
        for (const auto& out : node_outputs(d_, n.id))
          if (var.empty()) var = out.object;
      if (!var.empty()) r.set("variable", var);
      return r;
    }
    return std::nullopt;
  }

  XmlElement task(const Node& n) {
    if (auto r = reply(n)) return *r;
    XmlElement inv("invoke");
    inv.set("name", n.name);
    placeholders(inv, n);
    std::vector<std::string> ins, outs;
    for (const auto& in : node_inputs(d_, n.id)) detail::push_unique(ins, in.object);
    for (const auto& out : node_outputs(d_, n.id))
      if (out.route != NodeOutput::Route::message_flow) detail::push_unique(outs, out.object);
    if (!ins.empty()) inv.set("inputVariable", ins.front());
    if (!outs.empty()) inv.set("outputVariable", outs.front());
    if (ins.size() > 1)
      warn("task '" + n.id + "' has " + std::to_string(ins.size()) + " input objects; invoke uses '" + ins.front() + "'");
    if (outs.size() > 1)
      warn("task '" + n.id + "' has " + std::to_string(outs.size()) + " output objects; invoke uses '" + outs.front() + "'");
    return inv;
  }

  const Diagram& d_;
  std::vector<std::string> warnings_;
  std::set<std::string> emitted_;
  std::optional<std::string> current_starter_;
  std::set<std::string> path_;  // nodes on the chains currently being translated
};

}  // namespace

Translation to_bpel(const Diagram& d) {
  detail::require_valid(d);
  return BpelWriter(d).run();
}

}  // namespace bpdmn
