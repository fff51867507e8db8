#include "bpdmn/patterns.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

#include "bpdmn/validator.hpp"

namespace bpdmn {

std::string_view to_symbol(Support s) {
  switch (s) {
    case Support::supported: return "+";
    case Support::partial: return "+/-";
    case Support::unsupported: return "-";
  }
  return "?";
}

std::string_view to_string(PatternGroup g) {
  switch (g) {
    case PatternGroup::visibility: return "data visibility";
    case PatternGroup::internal_interaction: return "data interaction (internal)";
    case PatternGroup::external_interaction: return "data interaction (external)";
    case PatternGroup::transfer: return "data transfer";
    case PatternGroup::routing: return "data based routing";
    case PatternGroup::additional: return "additional requirements";
  }
  return "?";
}

namespace {

constexpr auto Y = Support::supported;
constexpr auto P = Support::partial;
constexpr auto N = Support::unsupported;
using G = PatternGroup;

constexpr std::array<PatternInfo, pattern_count> matrix{{
    {1, "p1", "Task data", G::visibility, Y, Y},
    {2, "p2", "Block data", G::visibility, Y, Y},
    {3, "p3", "Scope data", G::visibility, N, N},
    {4, "p4", "Multiple Instance data", G::visibility, P, Y},
    {5, "p5", "Case data", G::visibility, Y, Y},
    {6, "p6", "Folder data", G::visibility, N, N},
    {7, "p7", "Workflow data", G::visibility, N, Y},
    {8, "p8", "Environment data", G::visibility, N, Y},
    {9, "p9", "between tasks", G::internal_interaction, Y, Y},
    {10, "p10", "Block Task to Sub-wf Decomp.", G::internal_interaction, Y, Y},
    {11, "p11", "Sub-wf Decomp. to Block Task", G::internal_interaction, Y, Y},
    {12, "p12", "to Multiple Instance Task", G::internal_interaction, N, Y},
    {13, "p13", "from Multiple Instance Task", G::internal_interaction, N, Y},
    {14, "p14", "Case to Case", G::internal_interaction, N, Y},
    {15, "p15", "Task to Env. - Push", G::external_interaction, Y, Y},
    {16, "p16", "Env. to Task - Pull", G::external_interaction, Y, Y},
    {17, "p17", "Env. to Task - Push", G::external_interaction, Y, Y},
    {18, "p18", "Task to Env. - Pull", G::external_interaction, Y, Y},
    {19, "p19", "Case to Env. - Push", G::external_interaction, N, Y},
    {20, "p20", "Env. to Case - Pull", G::external_interaction, N, Y},
    {21, "p21", "Env. to Case - Push", G::external_interaction, N, Y},
    {22, "p22", "Case to Env. - Pull", G::external_interaction, N, Y},
    {23, "p23", "Workflow to Env. - Push", G::external_interaction, N, Y},
    {24, "p24", "Env. to Workflow - Pull", G::external_interaction, N, Y},
    {25, "p25", "Env. to Workflow - Push", G::external_interaction, N, Y},
    {26, "p26", "Workflow to Env. - Pull", G::external_interaction, N, Y},
    {27, "p27", "by Value - Incoming", G::transfer, Y, Y},
    {28, "p28", "by Value - Outcoming", G::transfer, Y, Y},
    {29, "p29", "Copy in/Copy out", G::transfer, P, Y},
    {30, "p30", "by Reference - Unlocked", G::transfer, N, Y},
    {31, "p31", "by Reference - Locked", G::transfer, Y, Y},
    {32, "p32", "Data Transformation - input", G::transfer, P, Y},
    {33, "p33", "Data Transformation - output", G::transfer, P, Y},
    {34, "p34", "Task Precondition - Data exist.", G::routing, Y, Y},
    {35, "p35", "Task Precondition - Data val.", G::routing, N, N},
    {36, "p36", "Task Postcondition - Data exist.", G::routing, Y, Y},
    {37, "p37", "Task Postcondition - Data val.", G::routing, N, N},
    {38, "p38", "Event Based Task Trigger", G::routing, Y, Y},
    {39, "p39", "Data Based Task Trigger", G::routing, Y, Y},
    {40, "p40", "Data-based Routing", G::routing, Y, Y},
    {41, "structure", "Structure", G::additional, N, Y},
    {42, "explicit_data_flow", "Explicit Data Flow", G::additional, P, Y},
    {43, "data_control_flow", "Data / Control Flow", G::additional, P, Y},
    {44, "process_data_store", "Process Data Store", G::additional, N, Y},
}};

}  // namespace

const std::array<PatternInfo, pattern_count>& capability_matrix() { return matrix; }

const PatternInfo& pattern_info(PatternId id) {
  if (id < 1 || id > pattern_count) throw std::out_of_range("pattern id out of range");
  return matrix[static_cast<std::size_t>(id - 1)];
}

std::optional<PatternId> parse_pattern_id(std::string_view text) {
  for (const auto& row : matrix)
    if (row.key == text) return row.id;
  if (!text.empty() && text.size() <= 2 && std::all_of(text.begin(), text.end(), ::isdigit)) {
    int n = std::stoi(std::string(text));
    if (n >= 1 && n <= 40) return n;
  }
  return std::nullopt;
}

std::size_t PatternReport::total() const {
  std::size_t n = 0;
  for (const auto& [id, ws] : instances) n += ws.size();
  return n;
}

namespace {

class Detectors {
 public:
  explicit Detectors(const Diagram& d) : d_(d) {
    for (const Node* n : d_.all_nodes()) {
      for (const auto& in : node_inputs(d_, n->id)) inputs_[n->id].push_back(in);
      for (const auto& out : node_outputs(d_, n->id)) outputs_[n->id].push_back(out);
    }
  }

  PatternReport run() {
    PatternReport r;
    for (const auto& row : matrix) r.instances[row.id];
    auto add = [&](PatternId id, std::vector<Witness> ws) {
      std::sort(ws.begin(), ws.end());
      ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
      r.instances[id] = std::move(ws);
    };
    add(1, task_data());
    add(2, block_data());
    add(4, multi_instance_data());
    add(5, case_data());
    add(7, workflow_data());
    add(8, environment_data());
    add(9, between_tasks());
    add(10, block_to_sub());
    add(11, sub_to_block());
    add(12, to_multi_instance());
    add(13, from_multi_instance());
    add(14, case_to_case());
    add(15, task_push_env());
    add(16, env_pull_task());
    add(17, env_push_task());
    add(18, task_pull_env());
    add(19, case_push_env());
    add(20, env_pull_case());
    add(21, env_push_case());
    add(22, case_pull_env());
    add(23, workflow_push_env());
    add(24, env_pull_workflow());
    add(25, env_push_workflow());
    add(26, workflow_pull_env());
    add(27, by_value_in());
    add(28, by_value_out());
    add(29, copy_in_out());
    add(30, by_ref_unlocked());
    add(31, by_ref_locked());
    add(32, transform_input());
    add(33, transform_output());
    add(34, precondition_exists());
    add(36, postcondition_exists());
    add(38, event_trigger());
    add(39, data_trigger());
    add(40, data_routing());
    add(pattern_structure, structure());
    add(pattern_explicit_data_flow, explicit_data_flow());
    add(pattern_data_control_flow, data_control_flow());
    add(pattern_process_data_store, process_data_store());
    return r;
  }

 private:
  using Ws = std::vector<Witness>;

  bool is_task(const std::string& id) const {
    const Node* n = d_.find_node(id);
    return n && n->kind == NodeKind::task;
  }
  bool is_store(const std::string& id) const { return d_.kind_of(id) == ElementKind::store; }
  bool external(const std::string& id) const {
    const Pool* p = d_.pool_of(id);
    return p && p->external;
  }
  bool diagram_store(const std::string& id) const {
    const DataStore* s = d_.find_store(id);
    return s && s->scope.is_diagram();
  }
  const std::vector<NodeInput>& ins(const std::string& n) const {
    static const std::vector<NodeInput> none;
    auto it = inputs_.find(n);
    return it == inputs_.end() ? none : it->second;
  }
  const std::vector<NodeOutput>& outs(const std::string& n) const {
    static const std::vector<NodeOutput> none;
    auto it = outputs_.find(n);
    return it == outputs_.end() ? none : it->second;
  }
  // (node, store) pairs for reads and writes.
  std::vector<std::pair<std::string, std::string>> reads() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const DataFlow* f : d_.all_data_flows())
      if (is_store(f->source)) out.emplace_back(f->target, f->source);
    return out;
  }
  std::vector<std::pair<std::string, std::string>> writes() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const DataFlow* f : d_.all_data_flows())
      if (is_store(f->target)) out.emplace_back(f->source, f->target);
    return out;
  }
  std::vector<std::pair<std::string, std::string>> accesses() const {
    auto out = reads();
    auto w = writes();
    out.insert(out.end(), w.begin(), w.end());
    return out;
  }

  // 1: an object whose every carrying flow ends at one and the same task.
  Ws task_data() const {
    Ws out;
    for (const auto& o : d_.objects()) {
      std::set<std::string> nodes;
      bool any = false;
      auto note = [&](const std::string& a, const std::string& b) {
        any = true;
        for (const auto* e : {&a, &b})
          if (d_.kind_of(*e) == ElementKind::node) nodes.insert(*e);
          else if (!is_store(*e)) nodes.insert("#" + *e);
      };
      for (const SequenceFlow* f : d_.all_sequence_flows())
        for (const auto& a : f->attachments)
          if (a.object == o.id) note(f->source, f->target);
      for (const auto& f : d_.message_flows())
        for (const auto& a : f.attachments)
          if (a.object == o.id) note(f.source, f.target);
      for (const DataFlow* f : d_.all_data_flows())
        if (f->object == o.id) note(f->source, f->target);
      bool mapped = std::any_of(d_.mappings().begin(), d_.mappings().end(), [&](const DataMapping& m) {
        return m.source_object == o.id || m.target_object == o.id;
      });
      if (any && !mapped && nodes.size() == 1 && is_task(*nodes.begin())) out.push_back({*nodes.begin(), o.id});
    }
    return out;
  }

  // 2: a sub-process-scoped store accessed by a node inside that sub-process.
  Ws block_data() const {
    Ws out;
    for (const auto& [node, store] : accesses()) {
      const DataStore* s = d_.find_store(store);
      if (s->scope.sub_process && d_.is_descendant(node, *s->scope.sub_process))
        out.push_back({*s->scope.sub_process, store, node});
    }
    return out;
  }

  bool multi_instance(const std::string& id) const {
    const Node* n = d_.find_node(id);
    return n && n->multi_instance;
  }

  // 4: a multi-instance task reading or writing a store.
  Ws multi_instance_data() const {
    Ws out;
    for (const auto& [node, store] : accesses())
      if (multi_instance(node)) out.push_back({node, store});
    return out;
  }

  // 5: a diagram-scoped store accessed by at least two distinct nodes.
  Ws case_data() const {
    Ws out;
    std::map<std::string, std::set<std::string>> by_store;
    for (const auto& [node, store] : accesses())
      if (diagram_store(store)) by_store[store].insert(node);
    for (const auto& [store, nodes] : by_store)
      if (nodes.size() >= 2) {
        Witness w(nodes.begin(), nodes.end());
        w.insert(store);
        out.push_back(w);
      }
    return out;
  }

  // 7: a diagram-scoped database or warehouse store used by the process.
  Ws workflow_data() const {
    Ws out;
    for (const auto& [node, store] : accesses()) {
      const DataStore* s = d_.find_store(store);
      if (s->scope.is_diagram() &&
          (s->icon.kind == StoreIcon::Kind::database || s->icon.kind == StoreIcon::Kind::warehouse))
        out.push_back({store, node});
    }
    return out;
  }

  // 8: an object that points into the environment (URL or physical item) and is used.
  Ws environment_data() const {
    Ws out;
    for (const auto& o : d_.objects()) {
      if (!o.url && o.physicality != Physicality::physical) continue;
      if (!object_sources(d_, o.id).empty() || !object_targets(d_, o.id).empty()) out.push_back({o.id});
    }
    return out;
  }

  // 9: an object output by one task and required or optional input of another task.
  Ws between_tasks() const {
    Ws out;
    for (const Node* n : d_.all_nodes()) {
      if (n->kind != NodeKind::task) continue;
      for (const auto& o : outs(n->id)) {
        if (o.route == NodeOutput::Route::store) continue;
        for (const Node* m : d_.all_nodes())
          if (m != n && m->kind == NodeKind::task)
            for (const auto& i : ins(m->id))
              if (i.object == o.object && i.route != NodeInput::Route::store) out.push_back({n->id, o.object, m->id});
      }
    }
    return out;
  }

  // 10: an input of a sub-process that one of its children also consumes.
  Ws block_to_sub() const {
    Ws out;
    for (const Node* sp : d_.all_nodes()) {
      if (sp->kind != NodeKind::sub_process) continue;
      for (const auto& i : ins(sp->id))
        for (const Node* c : d_.subtree(*sp))
          if (c != sp)
            for (const auto& ci : ins(c->id))
              if (ci.object == i.object) out.push_back({sp->id, i.object, c->id});
    }
    return out;
  }

  // 11: an output of a child that the enclosing sub-process also delivers.
  Ws sub_to_block() const {
    Ws out;
    for (const Node* sp : d_.all_nodes()) {
      if (sp->kind != NodeKind::sub_process) continue;
      for (const auto& o : outs(sp->id))
        for (const Node* c : d_.subtree(*sp))
          if (c != sp)
            for (const auto& co : outs(c->id))
              if (co.object == o.object) out.push_back({c->id, o.object, sp->id});
    }
    return out;
  }

  // 12: a multi-instance task with an input object.
  Ws to_multi_instance() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->multi_instance)
        for (const auto& i : ins(n->id)) out.push_back({n->id, i.object});
    return out;
  }

  // 13: a multi-instance task with an output object.
  Ws from_multi_instance() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->multi_instance)
        for (const auto& o : outs(n->id)) out.push_back({n->id, o.object});
    return out;
  }

  // 14: a diagram-scoped store written by one node and read by another, so data outlives the case.
  Ws case_to_case() const {
    Ws out;
    for (const auto& [writer, ws] : writes())
      for (const auto& [reader, rs] : reads())
        if (ws == rs && writer != reader && diagram_store(ws)) out.push_back({writer, ws, reader});
    return out;
  }

  std::vector<const MessageFlow*> to_external(const std::string& node) const {
    std::vector<const MessageFlow*> out;
    for (const MessageFlow* f : d_.outgoing_messages(node))
      if (external(f->target)) out.push_back(f);
    return out;
  }
  std::vector<const MessageFlow*> from_external(const std::string& node) const {
    std::vector<const MessageFlow*> out;
    for (const MessageFlow* f : d_.incoming_messages(node))
      if (external(f->source)) out.push_back(f);
    return out;
  }
  static bool carries(const MessageFlow& f, Direction dir) {
    return std::any_of(f.attachments.begin(), f.attachments.end(),
                       [&](const ObjectAttachment& a) { return a.direction == dir; });
  }

  // 15: a task sending a message to an external participant.
  Ws task_push_env() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::task)
        for (const MessageFlow* f : to_external(n->id)) out.push_back({n->id, f->id});
    return out;
  }

  // 16: a task that requests from an external participant and receives a data-carrying answer from it.
  Ws env_pull_task() const {
    Ws out;
    for (const Node* n : d_.all_nodes()) {
      if (n->kind != NodeKind::task) continue;
      for (const MessageFlow* req : to_external(n->id))
        for (const MessageFlow* ans : from_external(n->id))
          if (d_.pool_of(req->target) == d_.pool_of(ans->source) && carries(*ans, Direction::input))
            out.push_back({n->id, req->id, ans->id});
    }
    return out;
  }

  // 17: a task receiving data pushed by an external participant.
  Ws env_push_task() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::task)
        for (const MessageFlow* f : from_external(n->id))
          if (carries(*f, Direction::input)) out.push_back({n->id, f->id});
    return out;
  }

  // 18: a task answering an external participant's request with a data-carrying message.
  Ws task_pull_env() const {
    Ws out;
    for (const Node* n : d_.all_nodes()) {
      if (n->kind != NodeKind::task) continue;
      for (const MessageFlow* req : from_external(n->id))
        for (const MessageFlow* ans : to_external(n->id))
          if (d_.pool_of(req->source) == d_.pool_of(ans->target) && carries(*ans, Direction::output))
            out.push_back({n->id, req->id, ans->id});
    }
    return out;
  }

  // 19: an event (not a task) sending case data to an external participant.
  Ws case_push_env() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::end_event || n->kind == NodeKind::intermediate_message)
        for (const MessageFlow* f : to_external(n->id)) out.push_back({n->id, f->id});
    return out;
  }

  // 20: an intermediate message event in which the case collects data from an external participant.
  Ws env_pull_case() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::intermediate_message)
        for (const MessageFlow* f : from_external(n->id)) out.push_back({n->id, f->id});
    return out;
  }

  // 21: a message start event triggered by an external participant.
  Ws env_push_case() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::start_event_message)
        for (const MessageFlow* f : from_external(n->id)) out.push_back({f->source, f->id, n->id});
    return out;
  }

  // 22: an external participant that sends into the case and is answered by it.
  Ws case_pull_env() const {
    Ws out;
    for (const auto& in : d_.message_flows()) {
      if (!external(in.source) || external(in.target)) continue;
      for (const auto& back : d_.message_flows())
        if (back.target == in.source && !external(back.source) &&
            d_.pool_of(back.source) == d_.pool_of(in.target))
          out.push_back({in.source, in.id, back.id});
    }
    return out;
  }

  // 23: a node writing into a diagram-scoped store.
  Ws workflow_push_env() const {
    Ws out;
    for (const auto& [node, store] : writes())
      if (diagram_store(store)) out.push_back({node, store});
    return out;
  }

  // 24: a node reading from a diagram-scoped store.
  Ws env_pull_workflow() const {
    Ws out;
    for (const auto& [node, store] : reads())
      if (diagram_store(store)) out.push_back({store, node});
    return out;
  }

  // 25: an object received from an external participant that is then inserted into a diagram-scoped store.
  Ws env_push_workflow() const {
    Ws out;
    for (const auto& f : d_.message_flows()) {
      if (!external(f.source)) continue;
      for (const auto& a : f.attachments)
        for (const auto& [node, store] : writes())
          if (diagram_store(store))
            for (const DataFlow* df : d_.incoming_data(store))
              if (df->object == a.object) out.push_back({f.id, a.object, store});
    }
    return out;
  }

  // 26: an object extracted from a diagram-scoped store and sent to an external participant.
  Ws workflow_pull_env() const {
    Ws out;
    for (const DataFlow* df : d_.all_data_flows()) {
      if (!is_store(df->source) || !diagram_store(df->source)) continue;
      for (const auto& f : d_.message_flows())
        if (external(f.target))
          for (const auto& a : f.attachments)
            if (a.object == df->object) out.push_back({df->source, df->object, f.id});
    }
    return out;
  }

  // 27: a task receiving an object by value over a control or data flow.
  Ws by_value_in() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::task)
        for (const auto& i : ins(n->id))
          if (i.route == NodeInput::Route::sequence_flow || i.route == NodeInput::Route::data_flow)
            out.push_back({n->id, i.object});
    return out;
  }

  // 28: a task emitting an object by value over a control or data flow.
  Ws by_value_out() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::task)
        for (const auto& o : outs(n->id))
          if (o.route == NodeOutput::Route::sequence_flow || o.route == NodeOutput::Route::data_flow)
            out.push_back({n->id, o.object});
    return out;
  }

  // 29: a task copying data out of a store and back into the same store.
  Ws copy_in_out() const {
    Ws out;
    for (const auto& [r, rs] : reads())
      for (const auto& [w, ws] : writes())
        if (r == w && rs == ws) out.push_back({r, rs});
    return out;
  }

  // 30: a store shared by reference among at least two nodes, with no lock.
  Ws by_ref_unlocked() const {
    Ws out;
    std::map<std::string, std::set<std::string>> by_store;
    for (const auto& [node, store] : accesses()) by_store[store].insert(node);
    for (const auto& [store, nodes] : by_store)
      if (nodes.size() >= 2) {
        Witness w(nodes.begin(), nodes.end());
        w.insert(store);
        out.push_back(w);
      }
    return out;
  }

  // 31: a store referenced by exactly one node, which therefore holds it exclusively.
  Ws by_ref_locked() const {
    Ws out;
    std::map<std::string, std::set<std::string>> by_store;
    for (const auto& [node, store] : accesses()) by_store[store].insert(node);
    for (const auto& [store, nodes] : by_store)
      if (nodes.size() == 1) out.push_back({store, *nodes.begin()});
    return out;
  }

  // 32: a mapping feeding an input object of a node.
  Ws transform_input() const {
    Ws out;
    for (const auto& m : d_.mappings())
      for (const auto& t : object_targets(d_, m.target_object))
        if (t.kind == Provenance::Kind::task_input) out.push_back({m.id, t.element});
    return out;
  }

  // 33: a mapping reading an object that some node produced.
  Ws transform_output() const {
    Ws out;
    for (const auto& m : d_.mappings())
      for (const auto& s : object_sources(d_, m.source_object))
        if (s.kind != Provenance::Kind::mapping && s.kind != Provenance::Kind::store_extraction)
          out.push_back({s.element, m.id});
    return out;
  }

  // 34: a task that may not start without a required input object.
  Ws precondition_exists() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::task)
        for (const auto& i : ins(n->id))
          if (!i.optional) out.push_back({n->id, i.object});
    return out;
  }

  // 36: a task output that a later node requires, so the task must produce it.
  Ws postcondition_exists() const {
    Ws out;
    for (const Node* n : d_.all_nodes()) {
      if (n->kind != NodeKind::task) continue;
      for (const auto& o : outs(n->id))
        for (const auto& t : object_targets(d_, o.object))
          if (t.kind == Provenance::Kind::task_input && t.element != n->id) {
            bool required = std::any_of(ins(t.element).begin(), ins(t.element).end(),
                                        [&](const NodeInput& i) { return i.object == o.object && !i.optional; });
            if (required) out.push_back({n->id, o.object, t.element});
          }
    }
    return out;
  }

  // 38: a message event whose incoming message triggers the following work.
  Ws event_trigger() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::start_event_message || n->kind == NodeKind::intermediate_message)
        for (const MessageFlow* f : d_.incoming_messages(n->id)) out.push_back({n->id, f->id});
    return out;
  }

  // 39: a task gated by a required object delivered over an explicit data flow.
  Ws data_trigger() const {
    Ws out;
    for (const Node* n : d_.all_nodes())
      if (n->kind == NodeKind::task)
        for (const auto& i : ins(n->id))
          if (!i.optional && (i.route == NodeInput::Route::data_flow || i.route == NodeInput::Route::store))
            out.push_back({n->id, i.object});
    return out;
  }

  // 40: an exclusive gateway whose branch choice reads object data.
  Ws data_routing() const {
    Ws out;
    for (const Node* n : d_.all_nodes()) {
      if (n->kind != NodeKind::gateway_exclusive_data) continue;
      for (const SequenceFlow* f : d_.outgoing(n->id)) {
        const Expression* g = f->guard ? &*f->guard : (n->condition ? &*n->condition : nullptr);
        if (g && !g->paths().empty()) out.push_back({n->id, f->id});
      }
    }
    return out;
  }

  // structure: a store with entities or an object with a dot-qualified variable.
  Ws structure() const {
    Ws out;
    for (const auto& s : d_.stores())
      if (!s.entities.empty()) out.push_back({s.id});
    for (const auto& o : d_.objects())
      if (std::any_of(o.variables.begin(), o.variables.end(),
                      [](const Variable& v) { return v.name.find('.') != std::string::npos; }))
        out.push_back({o.id});
    return out;
  }

  // explicit data flow: any dashed data flow.
  Ws explicit_data_flow() const {
    Ws out;
    for (const DataFlow* f : d_.all_data_flows()) out.push_back({f->id, f->object});
    return out;
  }

  // data/control flow: an object riding on a sequence flow.
  Ws data_control_flow() const {
    Ws out;
    for (const SequenceFlow* f : d_.all_sequence_flows())
      for (const auto& a : f->attachments) out.push_back({f->id, a.object});
    return out;
  }

  // process data store: a store accessed by a process node.
  Ws process_data_store() const {
    Ws out;
    for (const auto& [node, store] : accesses()) out.push_back({store, node});
    return out;
  }

  const Diagram& d_;
  std::map<std::string, std::vector<NodeInput>> inputs_;
  std::map<std::string, std::vector<NodeOutput>> outputs_;
};

}  // namespace

PatternReport analyze(const Diagram& d) {
  auto diags = validate(d);
  if (has_errors(diags)) throw PreconditionError("diagram has validation errors: " + format_diagnostic(diags.front()));
  return Detectors(d).run();
}

std::string format_matrix() {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "%-4s %-34s %-5s %-5s\n", "#", "Pattern", "BPMN", "BPDMN");
  out += line;
  std::optional<PatternGroup> group;
  for (const auto& row : matrix) {
    if (row.group != group) {
      group = row.group;
      out += "-- " + std::string(to_string(row.group)) + "\n";
    }
    std::string num = row.id <= 40 ? std::to_string(row.id) : "*";
    std::snprintf(line, sizeof line, "%-4s %-34s %-5s %-5s\n", num.c_str(), std::string(row.name).c_str(),
                  std::string(to_symbol(row.bpmn)).c_str(), std::string(to_symbol(row.bpdmn)).c_str());
    out += line;
  }
  return out;
}

}  // namespace bpdmn
