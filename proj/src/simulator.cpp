#include "bpdmn/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>

namespace bpdmn {

StuckGatewayError::StuckGatewayError(std::string gateway)
    : SimulationError("gateway '" + gateway + "' has no true guard and no default flow"), gateway_(std::move(gateway)) {}

int ExecutionState::token_count() const {
  int n = 0;
  for (const auto& [flow, count] : tokens) n += count;
  return n;
}

std::string_view to_string(TraceEvent::Kind k) {
  switch (k) {
    case TraceEvent::Kind::node_fired: return "node_fired";
    case TraceEvent::Kind::object_bound: return "object_bound";
    case TraceEvent::Kind::store_changed: return "store_changed";
    case TraceEvent::Kind::message_sent: return "message_sent";
    case TraceEvent::Kind::message_received: return "message_received";
  }
  return "?";
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::completed: return "completed";
    case Status::deadlocked: return "deadlocked";
    case Status::step_limit: return "step-limit";
  }
  return "?";
}

std::string format_event(const TraceEvent& e) {
  char head[32];
  std::snprintf(head, sizeof head, "step %02d: ", e.step);
  std::string out = head;
  out += to_string(e.kind);
  out += " " + e.subject;
  switch (e.kind) {
    case TraceEvent::Kind::object_bound: out += "." + e.detail + " = " + to_literal(e.value); break;
    case TraceEvent::Kind::node_fired: break;
    default:
      if (!e.detail.empty()) out += " " + e.detail;
  }
  return out;
}

std::vector<std::string> RunResult::fired() const {
  std::vector<std::string> out;
  for (const auto& e : trace)
    if (e.kind == TraceEvent::Kind::node_fired) out.push_back(e.subject);
  return out;
}

int RunResult::count_fired(std::string_view node) const {
  int n = 0;
  for (const auto& e : trace)
    if (e.kind == TraceEvent::Kind::node_fired && e.subject == node) ++n;
  return n;
}

Status classify(const ExecutionState& state) {
  if (state.token_count() == 0 && state.active.empty() && state.end_reached) return Status::completed;
  return Status::deadlocked;
}

namespace {

Value default_value(VarType t) {
  switch (t) {
    case VarType::string: return Value::string("");
    case VarType::number: return Value::number(0);
    case VarType::boolean: return Value::boolean(false);
    case VarType::record: break;
  }
  return {};
}

bool matches_type(const Value& v, VarType t) {
  switch (t) {
    case VarType::string: return v.type() == Value::Type::string;
    case VarType::number: return v.type() == Value::Type::number;
    case VarType::boolean: return v.type() == Value::Type::boolean;
    case VarType::record: return false;
  }
  return false;
}

Environment flatten(const ObjectBindings& b) {
  Environment env;
  for (const auto& [obj, vars] : b)
    for (const auto& [var, val] : vars) env[obj + "." + var] = val;
  return env;
}

std::string record_text(const Record& r) {
  std::string out = "+{";
  bool first = true;
  for (const auto& [k, v] : r) {
    if (!first) out += ", ";
    first = false;
    out += k + "=" + to_literal(v);
  }
  return out + "}";
}

std::pair<std::string, std::string> split_path(const std::string& path) {
  auto dot = path.find('.');
  if (dot == std::string::npos) return {path, ""};
  return {path.substr(0, dot), path.substr(dot + 1)};
}

const TaskBehavior* behavior_of(const SimulationSetup& setup, std::string_view node) {
  auto it = setup.behaviors.find(node);
  return it == setup.behaviors.end() ? nullptr : &it->second;
}

bool parent_active(const ExecutionState& state, const Diagram& d, std::string_view node) {
  const Node* parent = d.parent_of(node);
  return !parent || state.active.count(parent->id);
}

bool receives_messages(const Diagram& d, std::string_view node) { return !d.incoming_messages(node).empty(); }

bool externally_triggered(const Diagram& d, const Node& n) {
  auto incoming = d.incoming_messages(n.id);
  if (incoming.empty()) return true;
  for (const MessageFlow* f : incoming) {
    const Pool* p = d.pool_of(f->source);
    if (p && p->external) return true;
  }
  return false;
}

// Position of the first pending message addressed to `node`, if any.
std::optional<std::size_t> pending_message(const ExecutionState& state, const Diagram& d, std::string_view node) {
  const Pool* pool = d.pool_of(node);
  auto it = state.inbox.find(pool->id);
  if (it == state.inbox.end()) return std::nullopt;
  for (std::size_t i = 0; i < it->second.size(); ++i) {
    const MessageFlow* f = d.find_message_flow(it->second[i].flow);
    if (f && f->target == node) return i;
  }
  return std::nullopt;
}


bool shares_field(const Record& r, const DataObject& o) {
  for (const auto& v : o.variables)
    if (r.count(v.name)) return true;
  return false;
}

// Most recent record satisfying the read, or nullptr.
const Record* find_record(const ExecutionState& state, const Diagram& d, const SimulationSetup& setup,
                          std::string_view node, const std::string& store, const std::string& object) {
  auto sit = state.stores.find(store);
  if (sit == state.stores.end()) return nullptr;
  const DataObject* obj = d.find_object(object);
  const StoreRead* explicit_read = nullptr;
  if (const TaskBehavior* b = behavior_of(setup, node))
    for (const auto& r : b->reads)
      if (r.object == object && r.store == store) explicit_read = &r;
  const auto& records = sit->second;
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (!explicit_read) {
      if (shares_field(*it, *obj)) return &*it;
      continue;
    }
    bool entity_ok = std::any_of(it->begin(), it->end(), [&](const auto& kv) {
      return kv.first.rfind(explicit_read->entity + ".", 0) == 0;
    });
    if (!entity_ok) continue;
    if (!explicit_read->filter) return &*it;
    Environment env = flatten(state.bindings);
    for (const auto& [k, v] : *it) env[object + "." + k] = v;
    try {
      Value ok = eval_expr(*explicit_read->filter, env);
      if (ok.type() == Value::Type::boolean && ok.as_boolean()) return &*it;
    } catch (const EvalError&) {
    }
  }
  return nullptr;
}

// A mapping can feed `object` once its source is bound, or when the source is read from a store by the
// same node in the same firing.
bool mapping_ready(const ExecutionState& state, const Diagram& d, const SimulationSetup& setup, std::string_view node,
                   std::string_view object) {
  for (const auto& m : d.mappings()) {
    if (m.target_object != object) continue;
    if (state.bindings.count(m.source_object)) return true;
    for (const DataFlow* f : d.incoming_data(node))
      if (f->object == m.source_object && d.kind_of(f->source) == ElementKind::store &&
          find_record(state, d, setup, node, f->source, f->object))
        return true;
  }
  return false;
}

bool input_available(const ExecutionState& state, const Diagram& d, const SimulationSetup& setup,
                     std::string_view node, const NodeInput& in) {
  switch (in.route) {
    case NodeInput::Route::message_flow: {
      if (state.bindings.count(in.object)) return true;
      const Pool* pool = d.pool_of(node);
      auto it = state.inbox.find(pool->id);
      if (it == state.inbox.end()) return false;
      for (const auto& m : it->second)
        if (m.flow == in.via && m.snapshot.count(in.object)) return true;
      return false;
    }
    case NodeInput::Route::store:
      return find_record(state, d, setup, node, in.store, in.object) != nullptr || state.bindings.count(in.object);
    case NodeInput::Route::sequence_flow:
    case NodeInput::Route::data_flow:
      return state.bindings.count(in.object) || mapping_ready(state, d, setup, node, in.object);
  }
  return false;
}

bool control_ready(const ExecutionState& state, const Diagram& d, const Node& n) {
  auto has_token = [&](const SequenceFlow* f) {
    auto it = state.tokens.find(f->id);
    return it != state.tokens.end() && it->second > 0;
  };
  auto incoming = d.incoming(n.id);
  switch (n.kind) {
    case NodeKind::start_event_none: return false;
    case NodeKind::start_event_message:
      return !externally_triggered(d, n) && parent_active(state, d, n.id) &&
             pending_message(state, d, n.id).has_value();
    case NodeKind::gateway_exclusive_data: return std::any_of(incoming.begin(), incoming.end(), has_token);
    default:
      if (incoming.empty()) return false;
      if (!std::all_of(incoming.begin(), incoming.end(), has_token)) return false;
      if (receives_messages(d, n.id)) return pending_message(state, d, n.id).has_value();
      return true;
  }
}

class Firing {
 public:
  Firing(ExecutionState& s, const Diagram& d, const SimulationSetup& setup, const Node& n)
      : s_(s), d_(d), setup_(setup), n_(n), behavior_(behavior_of(setup, n.id)) {}

  std::vector<TraceEvent> run() {
    int step = ++s_.step_count;
    step_ = step;
    emit(TraceEvent::Kind::node_fired, n_.id);
    s_.completed.insert(n_.id);
    consume_tokens();
    receive_message();
    read_stores();
    apply_mappings();

    if (n_.kind == NodeKind::sub_process && !n_.children.empty()) {
      activate();
    } else {
      execute();
      send_messages();
      if (n_.kind == NodeKind::end_event) s_.end_reached = true;
      emit_tokens(n_);
    }
    complete_sub_processes();
    return std::move(events_);
  }

 private:
  void emit(TraceEvent::Kind kind, std::string subject, std::string detail = {}, Value value = {}) {
    events_.push_back({step_, kind, std::move(subject), std::move(detail), std::move(value)});
  }

  void bind(const std::string& obj, const std::string& var, const Value& v) {
    s_.bindings[obj][var] = v;
    emit(TraceEvent::Kind::object_bound, obj, var, v);
  }

  void consume_tokens() {
    auto incoming = d_.incoming(n_.id);
    for (const SequenceFlow* f : incoming) {
      auto it = s_.tokens.find(f->id);
      if (it == s_.tokens.end() || it->second == 0) continue;
      if (--it->second == 0) s_.tokens.erase(it);
      if (n_.kind == NodeKind::gateway_exclusive_data) break;
    }
  }

  void receive_message() {
    if (!receives_messages(d_, n_.id)) return;
    auto pos = pending_message(s_, d_, n_.id);
    if (!pos) return;
    auto& queue = s_.inbox[d_.pool_of(n_.id)->id];
    Message msg = queue[*pos];
    queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(*pos));
    if (queue.empty()) s_.inbox.erase(d_.pool_of(n_.id)->id);
    std::string carried;
    for (const auto& [obj, vars] : msg.snapshot) carried += (carried.empty() ? "" : ",") + obj;
    emit(TraceEvent::Kind::message_received, msg.flow, carried);
    for (const auto& [obj, vars] : msg.snapshot)
      for (const auto& [var, val] : vars) bind(obj, var, val);
  }

  void read_stores() {
    for (const auto& in : d_.incoming_data(n_.id)) {
      if (d_.kind_of(in->source) != ElementKind::store) continue;
      const Record* rec = find_record(s_, d_, setup_, n_.id, in->source, in->object);
      if (!rec) continue;
      for (const auto& v : d_.find_object(in->object)->variables) {
        auto it = rec->find(v.name);
        if (it != rec->end()) bind(in->object, v.name, it->second);
      }
      s_.bindings[in->object];  // an empty match still counts as read
    }
    // Explicit reads whose object is not otherwise an input of this node.
    if (!behavior_) return;
    for (const auto& r : behavior_->reads) {
      bool covered = false;
      for (const auto& in : d_.incoming_data(n_.id))
        if (in->source == r.store && in->object == r.object) covered = true;
      if (covered) continue;
      if (const Record* rec = find_record(s_, d_, setup_, n_.id, r.store, r.object))
        for (const auto& v : d_.find_object(r.object)->variables)
          if (auto it = rec->find(v.name); it != rec->end()) bind(r.object, v.name, it->second);
    }
  }

  void apply_mappings() {
    std::set<std::string> inputs;
    for (const auto& in : node_inputs(d_, n_.id)) inputs.insert(in.object);
    for (const auto& m : d_.mappings()) {
      if (!inputs.count(m.target_object) || !s_.bindings.count(m.source_object)) continue;
      Environment env = flatten(s_.bindings);
      for (const auto& rule : m.rules) bind(m.target_object, rule.to, eval_expr(rule.from, env));
    }
  }

  Environment environment() const {
    Environment env = flatten(s_.bindings);
    // Absent optional inputs read as null.
    for (const auto& in : node_inputs(d_, n_.id))
      if (!s_.bindings.count(in.object))
        for (const auto& v : d_.find_object(in.object)->variables) env.emplace(in.object + "." + v.name, Value());
    return env;
  }

  std::vector<std::string> output_objects() const {
    std::vector<std::string> out;
    for (const auto& o : node_outputs(d_, n_.id))
      if (std::find(out.begin(), out.end(), o.object) == out.end()) out.push_back(o.object);
    return out;
  }

  void insert(const std::string& store, Record rec) {
    emit(TraceEvent::Kind::store_changed, store, record_text(rec));
    s_.stores[store].push_back(std::move(rec));
  }

  void execute() {
    if (n_.kind != NodeKind::task && n_.kind != NodeKind::sub_process && !behavior_) return;
    auto outputs = output_objects();
    std::map<std::string, std::map<std::string, Value>> produced;
    Environment env = environment();
    int instances = n_.multi_instance ? n_.instances : 1;
    for (int i = 0; i < instances; ++i) {
      if (n_.multi_instance) env["instance.index"] = Value::number(i);
      if (!behavior_) continue;
      for (const auto& e : behavior_->effects) {
        auto [obj, var] = split_path(e.target);
        if (std::find(outputs.begin(), outputs.end(), obj) == outputs.end())
          throw SimulationError("effect target '" + e.target + "' is not an output of '" + n_.id + "'");
        if (!d_.find_object(obj)->find_variable(var))
          throw SimulationError("effect target '" + e.target + "' is not a declared variable");
        Value v = eval_expr(e.value, env);
        produced[obj][var] = v;
        env[e.target] = v;
      }
      for (const auto& ins : behavior_->inserts) {
        Record rec;
        for (const auto& [field, expr] : ins.fields) rec[ins.entity + "." + field] = eval_expr(expr, env);
        insert(ins.store, std::move(rec));
      }
    }
    if (n_.kind != NodeKind::task && n_.kind != NodeKind::sub_process && produced.empty()) return;
    bind_outputs(outputs, produced);
    implicit_inserts();
  }

  void bind_outputs(const std::vector<std::string>& outputs,
                    const std::map<std::string, std::map<std::string, Value>>& produced) {
    std::vector<std::string> input_objects;
    for (const auto& in : node_inputs(d_, n_.id)) input_objects.push_back(in.object);
    for (const auto& obj : outputs) {
      const DataObject* o = d_.find_object(obj);
      auto pit = produced.find(obj);
      for (const auto& v : o->variables) {
        if (!is_scalar(v.type)) continue;
        std::optional<Value> val;
        if (pit != produced.end())
          if (auto it = pit->second.find(v.name); it != pit->second.end()) val = it->second;
        for (const auto& src : input_objects) {
          if (val || src == obj) break;
          auto b = s_.bindings.find(src);
          if (b == s_.bindings.end()) continue;
          if (auto it = b->second.find(v.name); it != b->second.end() && !it->second.is_null()) val = it->second;
        }
        if (!val) {
          auto b = s_.bindings.find(obj);
          if (b != s_.bindings.end())
            if (auto it = b->second.find(v.name); it != b->second.end()) val = it->second;
        }
        bind(obj, v.name, val.value_or(default_value(v.type)));
      }
      s_.bindings[obj];
    }
  }

  void implicit_inserts() {
    for (const DataFlow* f : d_.outgoing_data(n_.id)) {
      if (d_.kind_of(f->target) != ElementKind::store) continue;
      bool explicit_insert = behavior_ && std::any_of(behavior_->inserts.begin(), behavior_->inserts.end(),
                                                     [&](const StoreInsert& i) { return i.store == f->target; });
      if (explicit_insert) continue;
      Record rec;
      const auto& vars = s_.bindings[f->object];
      for (const auto& v : d_.find_object(f->object)->variables)
        if (auto it = vars.find(v.name); it != vars.end()) rec[v.name] = it->second;
      insert(f->target, std::move(rec));
    }
  }

  void send_messages() {
    for (const MessageFlow* f : d_.outgoing_messages(n_.id)) {
      Message msg{f->id, {}};
      std::string carried;
      for (const auto& a : f->attachments) {
        auto it = s_.bindings.find(a.object);
        if (it == s_.bindings.end() || msg.snapshot.count(a.object)) continue;
        msg.snapshot[a.object] = it->second;
        carried += (carried.empty() ? "" : ",") + a.object;
      }
      emit(TraceEvent::Kind::message_sent, f->id, carried);
      const Pool* target = d_.pool_of(f->target);
      if (!target->external) s_.inbox[target->id].push_back(std::move(msg));
    }
  }

  void emit_tokens(const Node& n) {
    auto outgoing = d_.outgoing(n.id);
    if (n.kind != NodeKind::gateway_exclusive_data) {
      for (const SequenceFlow* f : outgoing) ++s_.tokens[f->id];
      return;
    }
    Environment env = environment();
    const SequenceFlow* fallback = nullptr;
    for (const SequenceFlow* f : outgoing) {
      if (f->is_default) {
        fallback = f;
        continue;
      }
      std::optional<Expression> guard = f->guard;
      if (!guard) guard = n.condition;
      bool taken = true;
      if (guard) {
        Value v;
        try {
          v = eval_expr(*guard, env);
        } catch (const EvalError& e) {
          throw SimulationError("guard on '" + f->id + "': " + e.what());
        }
        if (v.type() != Value::Type::boolean && !v.is_null())
          throw SimulationError("guard on '" + f->id + "' is not boolean");
        taken = v.type() == Value::Type::boolean && v.as_boolean();
      }
      if (taken) {
        ++s_.tokens[f->id];
        return;
      }
    }
    if (!fallback) throw StuckGatewayError(n.id);
    ++s_.tokens[fallback->id];
  }

  void activate() {
    s_.active.insert(n_.id);
    for (const auto& c : n_.children)
      if (c.kind == NodeKind::start_event_none || (c.kind == NodeKind::start_event_message && externally_triggered(d_, c)))
        for (const SequenceFlow* f : d_.outgoing(c.id)) ++s_.tokens[f->id];
  }

  bool idle(const Node& sp) const {
    for (const Node* n : d_.subtree(sp)) {
      if (n->id == sp.id) continue;
      if (s_.active.count(n->id)) return false;
      for (const SequenceFlow* f : d_.incoming(n->id))
        if (s_.tokens.count(f->id)) return false;
    }
    return true;
  }

  void complete_sub_processes() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& id : std::set<std::string>(s_.active)) {
        const Node* sp = d_.find_node(id);
        if (!idle(*sp)) continue;
        s_.active.erase(id);
        for (const auto& obj : output_objects_of(*sp)) {
          if (s_.bindings.count(obj)) continue;
          for (const auto& v : d_.find_object(obj)->variables)
            if (is_scalar(v.type)) bind(obj, v.name, default_value(v.type));
          s_.bindings[obj];
        }
        for (const MessageFlow* f : d_.outgoing_messages(sp->id)) {
          Message msg{f->id, {}};
          for (const auto& a : f->attachments)
            if (auto it = s_.bindings.find(a.object); it != s_.bindings.end()) msg.snapshot[a.object] = it->second;
          emit(TraceEvent::Kind::message_sent, f->id);
          const Pool* target = d_.pool_of(f->target);
          if (!target->external) s_.inbox[target->id].push_back(std::move(msg));
        }
        emit_tokens(*sp);
        changed = true;
      }
    }
  }

  std::vector<std::string> output_objects_of(const Node& n) const {
    std::vector<std::string> out;
    for (const auto& o : node_outputs(d_, n.id))
      if (std::find(out.begin(), out.end(), o.object) == out.end()) out.push_back(o.object);
    return out;
  }

  ExecutionState& s_;
  const Diagram& d_;
  const SimulationSetup& setup_;
  const Node& n_;
  const TaskBehavior* behavior_;
  int step_ = 0;
  std::vector<TraceEvent> events_;
};

// Binds one object from the start inputs, honouring optional variables.
std::map<std::string, Value> start_binding(const Diagram& d, const SimulationSetup& setup, const std::string& object) {
  const DataObject* o = d.find_object(object);
  std::map<std::string, Value> out;
  auto it = setup.start_inputs.find(object);
  for (const auto& v : o->variables) {
    if (!is_scalar(v.type)) continue;
    const Value* given = nullptr;
    if (it != setup.start_inputs.end())
      if (auto vit = it->second.find(v.name); vit != it->second.end()) given = &vit->second;
    if (!given) {
      if (!v.optional) throw InitError("missing start input '" + object + "." + v.name + "'");
      out[v.name] = Value();
      continue;
    }
    if (!matches_type(*given, v.type))
      throw InitError("start input '" + object + "." + v.name + "' should be " + std::string(to_string(v.type)));
    out[v.name] = *given;
  }
  if (it != setup.start_inputs.end())
    for (const auto& [name, val] : it->second)
      if (!o->find_variable(name)) throw InitError("start input '" + object + "." + name + "' is not declared");
  return out;
}

}  // namespace

ExecutionState init(const Diagram& d, const SimulationSetup& setup) {
  if (d.all_nodes().empty()) throw InitError("no start event");
  ExecutionState s;
  for (const auto& [store, records] : setup.initial_records) s.stores[store] = records;

  for (const auto& [task, b] : setup.behaviors) {
    for (const auto& ins : b.inserts)
      if (!d.find_store(ins.store)->find_entity(ins.entity))
        throw InitError("insert into unknown entity '" + ins.store + "." + ins.entity + "'");
  }

  for (const auto& pool : d.pools()) {
    for (const auto& n : pool.nodes) {
      if (n.kind == NodeKind::start_event_none) {
        for (const SequenceFlow* f : d.outgoing(n.id)) ++s.tokens[f->id];
      } else if (n.kind == NodeKind::start_event_message && externally_triggered(d, n)) {
        std::set<std::string> objects;
        for (const auto& in : node_inputs(d, n.id))
          if (in.route == NodeInput::Route::message_flow) objects.insert(in.object);
        for (const auto& out : node_outputs(d, n.id))
          if (out.route == NodeOutput::Route::sequence_flow) objects.insert(out.object);
        for (const auto& obj : objects) s.bindings[obj] = start_binding(d, setup, obj);
        for (const SequenceFlow* f : d.outgoing(n.id)) ++s.tokens[f->id];
      }
    }
  }
  // Messages from black-box participants to anything but a start event are waiting at time zero.
  for (const auto& f : d.message_flows()) {
    const Pool* from = d.pool_of(f.source);
    const Node* to = d.find_node(f.target);
    if (!from->external || !to || to->kind == NodeKind::start_event_message) continue;
    Message msg{f.id, {}};
    for (const auto& a : f.attachments) msg.snapshot[a.object] = start_binding(d, setup, a.object);
    s.inbox[d.pool_of(f.target)->id].push_back(std::move(msg));
  }
  return s;
}

std::set<std::string> enabled(const ExecutionState& state, const Diagram& d, const SimulationSetup& setup) {
  std::set<std::string> out;
  for (const Node* n : d.all_nodes()) {
    if (!control_ready(state, d, *n)) continue;
    bool data_ok = true;
    for (const auto& in : node_inputs(d, n->id)) {
      if (in.optional) continue;
      if (!input_available(state, d, setup, n->id, in)) {
        data_ok = false;
        break;
      }
    }
    if (data_ok) out.insert(n->id);
  }
  return out;
}

std::vector<TraceEvent> fire(ExecutionState& state, const Diagram& d, const SimulationSetup& setup,
                             std::string_view node) {
  const Node* n = d.find_node(node);
  if (!n) throw SimulationError("unknown node '" + std::string(node) + "'");
  return Firing(state, d, setup, *n).run();
}

std::vector<TraceEvent> step(ExecutionState& state, const Diagram& d, const SimulationSetup& setup, Policy policy,
                             std::mt19937_64* rng) {
  auto en = enabled(state, d, setup);
  if (en.empty()) throw SimulationError("no node is enabled");
  auto pick = en.begin();
  if (policy == Policy::random) {
    if (!rng) throw SimulationError("random policy needs a generator");
    std::uniform_int_distribution<std::size_t> dist(0, en.size() - 1);
    std::advance(pick, static_cast<std::ptrdiff_t>(dist(*rng)));
  }
  return fire(state, d, setup, *pick);
}

RunResult run(const Diagram& d, const SimulationSetup& setup, const RunOptions& options) {
  RunResult result;
  result.final_state = init(d, setup);
  std::mt19937_64 rng(options.seed);
  ExecutionState& s = result.final_state;
  while (true) {
    auto en = enabled(s, d, setup);
    if (en.empty()) {
      result.status = classify(s);
      break;
    }
    if (s.step_count >= options.max_steps) {
      result.status = Status::step_limit;
      break;
    }
    auto events = step(s, d, setup, options.policy, &rng);
    result.trace.insert(result.trace.end(), events.begin(), events.end());
  }
  return result;
}

}  // namespace bpdmn
