#include "bpdmn/model.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace bpdmn {

ModelError::ModelError(std::string element, const std::string& message, Kind kind)
    : std::runtime_error(element.empty() ? message : element + ": " + message),
      element_(std::move(element)),
      kind_(kind) {}

std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::task: return "task";
    case NodeKind::sub_process: return "sub_process";
    case NodeKind::gateway_exclusive_data: return "gateway_exclusive_data";
    case NodeKind::gateway_parallel: return "gateway_parallel";
    case NodeKind::start_event_none: return "start_event_none";
    case NodeKind::start_event_message: return "start_event_message";
    case NodeKind::end_event: return "end_event";
    case NodeKind::intermediate_message: return "intermediate_message";
  }
  return "?";
}

std::string_view to_string(VarType t) {
  switch (t) {
    case VarType::string: return "string";
    case VarType::number: return "number";
    case VarType::boolean: return "boolean";
    case VarType::record: return "record";
  }
  return "?";
}

std::string_view to_string(Direction d) { return d == Direction::input ? "input" : "output"; }
std::string_view to_string(Physicality p) { return p == Physicality::digital ? "digital" : "physical"; }

std::string_view to_string(ElementKind k) {
  switch (k) {
    case ElementKind::pool: return "pool";
    case ElementKind::node: return "node";
    case ElementKind::sequence_flow: return "sequence flow";
    case ElementKind::message_flow: return "message flow";
    case ElementKind::data_flow: return "data flow";
    case ElementKind::store: return "store";
    case ElementKind::object: return "object";
    case ElementKind::mapping: return "mapping";
  }
  return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view s) {
  for (auto k : {NodeKind::task, NodeKind::sub_process, NodeKind::gateway_exclusive_data,
                 NodeKind::gateway_parallel, NodeKind::start_event_none, NodeKind::start_event_message,
                 NodeKind::end_event, NodeKind::intermediate_message}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<VarType> parse_var_type(std::string_view s) {
  for (auto t : {VarType::string, VarType::number, VarType::boolean, VarType::record}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "input") return Direction::input;
  if (s == "output") return Direction::output;
  return std::nullopt;
}

std::optional<Physicality> parse_physicality(std::string_view s) {
  if (s == "digital") return Physicality::digital;
  if (s == "physical") return Physicality::physical;
  return std::nullopt;
}

std::string_view to_string(Provenance::Kind k) {
  switch (k) {
    case Provenance::Kind::store_extraction: return "store_extraction";
    case Provenance::Kind::activity_output: return "activity_output";
    case Provenance::Kind::message_received: return "message_received";
    case Provenance::Kind::message_start: return "message_start";
    case Provenance::Kind::store_insertion: return "store_insertion";
    case Provenance::Kind::message_sent: return "message_sent";
    case Provenance::Kind::task_input: return "task_input";
    case Provenance::Kind::mapping: return "mapping";
  }
  return "?";
}

const Variable* DataObject::find_variable(std::string_view n) const {
  for (const auto& v : variables)
    if (v.name == n) return &v;
  return nullptr;
}

const Entity* DataStore::find_entity(std::string_view n) const {
  for (const auto& e : entities)
    if (e.name == n) return &e;
  return nullptr;
}

std::set<std::string> DataStore::qualified_fields() const {
  std::set<std::string> out;
  for (const auto& e : entities) {
    // Walk up the generalization hierarchy; `seen` guards against cycles.
    std::set<std::string> seen;
    std::vector<std::string> todo{e.name};
    while (!todo.empty()) {
      std::string cur = todo.back();
      todo.pop_back();
      if (!seen.insert(cur).second) continue;
      if (const Entity* ent = find_entity(cur)) {
        for (const auto& f : ent->fields) out.insert(e.name + "." + f.name);
      }
      for (const auto& g : generalizations)
        if (g.child == cur) todo.push_back(g.parent);
    }
  }
  return out;
}

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto start_ok = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto char_ok = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  if (!start_ok(s.front())) return false;
  return std::all_of(s.begin(), s.end(), char_ok);
}

void check_variable(const std::string& owner, const Variable& v) {
  if (v.name.empty()) throw ModelError(owner, "variable with empty name");
  std::size_t start = 0;
  while (true) {
    std::size_t dot = v.name.find('.', start);
    std::string_view seg = std::string_view(v.name).substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (seg.empty()) throw ModelError(owner, "variable '" + v.name + "' has an empty path segment");
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
}

template <typename T>
std::vector<const T*> sorted_by_id(std::vector<const T*> v) {
  std::sort(v.begin(), v.end(), [](const T* a, const T* b) { return a->id < b->id; });
  return v;
}

}  // namespace

Diagram::Diagram() : impl_(std::make_shared<const Impl>()) {}

Diagram::Diagram(DiagramParts parts) {
  auto impl = std::make_shared<Impl>();

  // Derive sub-process local stores from store scopes before freezing.
  std::function<void(std::vector<Node>&)> clear_locals = [&](std::vector<Node>& nodes) {
    for (auto& n : nodes) {
      n.local_stores.clear();
      clear_locals(n.children);
    }
  };
  for (auto& p : parts.pools) clear_locals(p.nodes);
  std::vector<const DataStore*> store_order;
  for (const auto& s : parts.stores) store_order.push_back(&s);
  store_order = sorted_by_id(store_order);
  std::function<Node*(std::vector<Node>&, const std::string&)> find_mut = [&](std::vector<Node>& nodes,
                                                                              const std::string& id) -> Node* {
    for (auto& n : nodes) {
      if (n.id == id) return &n;
      if (Node* c = find_mut(n.children, id)) return c;
    }
    return nullptr;
  };
  for (const DataStore* s : store_order) {
    if (!s->scope.sub_process) continue;
    Node* owner = nullptr;
    for (auto& p : parts.pools)
      if ((owner = find_mut(p.nodes, *s->scope.sub_process))) break;
    if (!owner || owner->kind != NodeKind::sub_process)
      throw ModelError(s->id, "store scope '" + *s->scope.sub_process + "' is not a sub-process",
                       owner ? ModelError::Kind::structure : ModelError::Kind::dangling_reference);
    owner->local_stores.push_back(s->id);
  }

  impl->parts = std::move(parts);
  DiagramParts& p = impl->parts;

  auto declare = [&](const std::string& id, ElementKind kind) {
    if (!is_identifier(id)) throw ModelError(id, "invalid identifier '" + id + "'");
    if (!impl->kinds.emplace(id, kind).second) throw ModelError(id, "duplicate identifier");
  };

  for (const auto& pool : p.pools) {
    declare(pool.id, ElementKind::pool);
    std::function<void(const std::vector<Node>&, const Node*)> walk = [&](const std::vector<Node>& nodes,
                                                                          const Node* parent) {
      for (const auto& n : nodes) {
        declare(n.id, ElementKind::node);
        impl->nodes.emplace(n.id, &n);
        impl->node_pool.emplace(n.id, &pool);
        impl->node_parent.emplace(n.id, parent);
        if (!n.children.empty() && n.kind != NodeKind::sub_process)
          throw ModelError(n.id, "only sub-processes may have children");
        if (n.condition && n.kind != NodeKind::gateway_exclusive_data)
          throw ModelError(n.id, "condition is only allowed on data-based exclusive gateways");
        if (n.multi_instance && n.kind != NodeKind::task)
          throw ModelError(n.id, "only tasks may be multi-instance");
        if (n.instances < 1) throw ModelError(n.id, "instance count must be at least 1");
        if (!n.multi_instance && n.instances != 1)
          throw ModelError(n.id, "instance count requires a multi-instance task");
        walk(n.children, &n);
      }
    };
    walk(pool.nodes, nullptr);
    if (pool.external && !pool.nodes.empty()) throw ModelError(pool.id, "external pools have no nodes");
    for (const auto& f : pool.sequence_flows) declare(f.id, ElementKind::sequence_flow);
    for (const auto& f : pool.data_flows) declare(f.id, ElementKind::data_flow);
  }
  for (const auto& f : p.message_flows) declare(f.id, ElementKind::message_flow);
  for (const auto& s : p.stores) declare(s.id, ElementKind::store);
  for (const auto& o : p.objects) declare(o.id, ElementKind::object);
  for (const auto& m : p.mappings) declare(m.id, ElementKind::mapping);

  auto kind = [&](const std::string& id) -> std::optional<ElementKind> {
    auto it = impl->kinds.find(id);
    if (it == impl->kinds.end()) return std::nullopt;
    return it->second;
  };
  auto require_object = [&](const std::string& owner, const std::string& obj) {
    if (kind(obj) != ElementKind::object) throw ModelError(owner, "unknown object '" + obj + "'", ModelError::Kind::dangling_reference);
  };

  for (const auto& pool : p.pools) {
    for (const auto& f : pool.sequence_flows) {
      for (const auto* end : {&f.source, &f.target}) {
        if (kind(*end) != ElementKind::node) throw ModelError(f.id, "unknown node '" + *end + "'", ModelError::Kind::dangling_reference);
        if (impl->node_pool.at(*end) != &pool)
          throw ModelError(f.id, "sequence flow leaves its pool at '" + *end + "'");
      }
      if (f.source == f.target) throw ModelError(f.id, "sequence flow source equals target");
      if ((f.guard || f.is_default) && impl->nodes.at(f.source)->kind != NodeKind::gateway_exclusive_data)
        throw ModelError(f.id, "guards and default markers need a data-based exclusive gateway source");
      if (f.guard && f.is_default) throw ModelError(f.id, "a default flow carries no guard");
      for (const auto& a : f.attachments) require_object(f.id, a.object);
    }
    for (const auto& f : pool.data_flows) {
      int stores = 0;
      for (const auto* end : {&f.source, &f.target}) {
        auto k = kind(*end);
        if (k == ElementKind::store) {
          ++stores;
        } else if (k == ElementKind::node) {
          if (impl->node_pool.at(*end) != &pool)
            throw ModelError(f.id, "data flow node '" + *end + "' belongs to another pool");
        } else {
          throw ModelError(f.id, "unknown data flow endpoint '" + *end + "'", ModelError::Kind::dangling_reference);
        }
      }
      if (stores == 2) throw ModelError(f.id, "data flow between two stores");
      if (f.source == f.target) throw ModelError(f.id, "data flow source equals target");
      require_object(f.id, f.object);
    }
  }
  for (const auto& f : p.message_flows) {
    for (const auto* end : {&f.source, &f.target}) {
      auto k = kind(*end);
      bool ok = k == ElementKind::node;
      if (k == ElementKind::pool) {
        for (const auto& pool : p.pools)
          if (pool.id == *end) ok = pool.external;
      }
      if (!ok)
        throw ModelError(f.id, "message flow endpoint '" + *end + "' is not a node or external pool",
                         k ? ModelError::Kind::structure : ModelError::Kind::dangling_reference);
    }
    if (f.source == f.target) throw ModelError(f.id, "message flow source equals target");
    for (const auto& a : f.attachments) require_object(f.id, a.object);
  }
  for (const auto& o : p.objects) {
    if (!is_valid_path(o.id)) throw ModelError(o.id, "object id is a reserved word");
    for (const auto& v : o.variables) check_variable(o.id, v);
    if (o.origin_store && kind(*o.origin_store) != ElementKind::store)
      throw ModelError(o.id, "unknown origin store '" + *o.origin_store + "'", ModelError::Kind::dangling_reference);
  }
  for (const auto& s : p.stores) {
    for (const auto& e : s.entities)
      for (const auto& f : e.fields) check_variable(s.id, f);
  }
  for (const auto& m : p.mappings) {
    require_object(m.id, m.source_object);
    require_object(m.id, m.target_object);
  }

  for (const auto& [id, n] : impl->nodes) impl->all_nodes.push_back(n);
  impl_ = std::move(impl);
}

std::optional<ElementKind> Diagram::kind_of(std::string_view id) const {
  auto it = impl_->kinds.find(id);
  if (it == impl_->kinds.end()) return std::nullopt;
  return it->second;
}

const Pool* Diagram::find_pool(std::string_view id) const {
  for (const auto& p : pools())
    if (p.id == id) return &p;
  return nullptr;
}

const Node* Diagram::find_node(std::string_view id) const {
  auto it = impl_->nodes.find(id);
  return it == impl_->nodes.end() ? nullptr : it->second;
}

const SequenceFlow* Diagram::find_sequence_flow(std::string_view id) const {
  for (const auto& p : pools())
    for (const auto& f : p.sequence_flows)
      if (f.id == id) return &f;
  return nullptr;
}

const MessageFlow* Diagram::find_message_flow(std::string_view id) const {
  for (const auto& f : message_flows())
    if (f.id == id) return &f;
  return nullptr;
}

const DataFlow* Diagram::find_data_flow(std::string_view id) const {
  for (const auto& p : pools())
    for (const auto& f : p.data_flows)
      if (f.id == id) return &f;
  return nullptr;
}

const DataStore* Diagram::find_store(std::string_view id) const {
  for (const auto& s : stores())
    if (s.id == id) return &s;
  return nullptr;
}

const DataObject* Diagram::find_object(std::string_view id) const {
  for (const auto& o : objects())
    if (o.id == id) return &o;
  return nullptr;
}

const DataMapping* Diagram::find_mapping(std::string_view id) const {
  for (const auto& m : mappings())
    if (m.id == id) return &m;
  return nullptr;
}

const Pool* Diagram::pool_of(std::string_view id) const {
  auto it = impl_->node_pool.find(id);
  if (it != impl_->node_pool.end()) return it->second;
  return find_pool(id);
}

const Node* Diagram::parent_of(std::string_view id) const {
  auto it = impl_->node_parent.find(id);
  return it == impl_->node_parent.end() ? nullptr : it->second;
}

std::vector<const Node*> Diagram::subtree(const Node& n) const {
  std::vector<const Node*> out{&n};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& c : out[i]->children) out.push_back(&c);
  return out;
}

bool Diagram::is_descendant(std::string_view node, std::string_view ancestor) const {
  for (const Node* p = parent_of(node); p; p = parent_of(p->id))
    if (p->id == ancestor) return true;
  return false;
}

std::vector<const SequenceFlow*> Diagram::incoming(std::string_view node) const {
  std::vector<const SequenceFlow*> out;
  if (const Pool* p = pool_of(node))
    for (const auto& f : p->sequence_flows)
      if (f.target == node) out.push_back(&f);
  return sorted_by_id(std::move(out));
}

std::vector<const SequenceFlow*> Diagram::outgoing(std::string_view node) const {
  std::vector<const SequenceFlow*> out;
  if (const Pool* p = pool_of(node))
    for (const auto& f : p->sequence_flows)
      if (f.source == node) out.push_back(&f);
  return sorted_by_id(std::move(out));
}

std::vector<const MessageFlow*> Diagram::incoming_messages(std::string_view node) const {
  std::vector<const MessageFlow*> out;
  for (const auto& f : message_flows())
    if (f.target == node) out.push_back(&f);
  return sorted_by_id(std::move(out));
}

std::vector<const MessageFlow*> Diagram::outgoing_messages(std::string_view node) const {
  std::vector<const MessageFlow*> out;
  for (const auto& f : message_flows())
    if (f.source == node) out.push_back(&f);
  return sorted_by_id(std::move(out));
}

std::vector<const DataFlow*> Diagram::all_data_flows() const {
  std::vector<const DataFlow*> out;
  for (const auto& p : pools())
    for (const auto& f : p.data_flows) out.push_back(&f);
  return sorted_by_id(std::move(out));
}

std::vector<const SequenceFlow*> Diagram::all_sequence_flows() const {
  std::vector<const SequenceFlow*> out;
  for (const auto& p : pools())
    for (const auto& f : p.sequence_flows) out.push_back(&f);
  return sorted_by_id(std::move(out));
}

std::vector<const DataFlow*> Diagram::incoming_data(std::string_view id) const {
  std::vector<const DataFlow*> out;
  for (const DataFlow* f : all_data_flows())
    if (f->target == id) out.push_back(f);
  return out;
}

std::vector<const DataFlow*> Diagram::outgoing_data(std::string_view id) const {
  std::vector<const DataFlow*> out;
  for (const DataFlow* f : all_data_flows())
    if (f->source == id) out.push_back(f);
  return out;
}

std::set<std::string> resolve_scope(const Diagram& d, std::string_view store_id) {
  const DataStore* store = d.find_store(store_id);
  if (!store) throw NotFoundError("unknown store '" + std::string(store_id) + "'");
  std::set<std::string> out;
  if (store->scope.is_diagram()) {
    for (const Node* n : d.all_nodes()) out.insert(n->id);
    return out;
  }
  const Node* root = d.find_node(*store->scope.sub_process);
  for (const Node* n : d.subtree(*root)) out.insert(n->id);
  return out;
}

namespace {

enum class Side { source, target };

std::vector<Provenance> provenance(const Diagram& d, std::string_view object, Side side) {
  if (!d.find_object(object)) throw NotFoundError("unknown object '" + std::string(object) + "'");
  std::vector<Provenance> out;
  using K = Provenance::Kind;

  for (const SequenceFlow* f : d.all_sequence_flows()) {
    for (std::size_t i = 0; i < f->attachments.size(); ++i) {
      const auto& a = f->attachments[i];
      if (a.object != object) continue;
      if (a.direction == Direction::output && side == Side::source) {
        bool msg_start = d.find_node(f->source)->kind == NodeKind::start_event_message;
        out.push_back({msg_start ? K::message_start : K::activity_output, f->source, f->id, int(i)});
      } else if (a.direction == Direction::input && side == Side::target) {
        out.push_back({K::task_input, f->target, f->id, int(i)});
      }
    }
  }
  for (const auto& f : d.message_flows()) {
    for (std::size_t i = 0; i < f.attachments.size(); ++i) {
      const auto& a = f.attachments[i];
      if (a.object != object) continue;
      if (a.direction == Direction::output && side == Side::target) {
        out.push_back({K::message_sent, f.source, f.id, int(i)});
      } else if (a.direction == Direction::input && side == Side::source) {
        const Node* tgt = d.find_node(f.target);
        bool msg_start = tgt && tgt->kind == NodeKind::start_event_message;
        out.push_back({msg_start ? K::message_start : K::message_received, f.target, f.id, int(i)});
      }
    }
  }
  for (const DataFlow* f : d.all_data_flows()) {
    if (f->object != object) continue;
    bool from_store = d.kind_of(f->source) == ElementKind::store;
    bool to_store = d.kind_of(f->target) == ElementKind::store;
    if (side == Side::source) {
      if (from_store) out.push_back({K::store_extraction, f->source, f->id});
      else out.push_back({K::activity_output, f->source, f->id});
    } else {
      if (to_store) out.push_back({K::store_insertion, f->target, f->id});
      else out.push_back({K::task_input, f->target, f->id});
    }
  }
  for (const auto& m : d.mappings()) {
    if (side == Side::source && m.target_object == object) out.push_back({K::mapping, m.id, m.id});
    if (side == Side::target && m.source_object == object) out.push_back({K::mapping, m.id, m.id});
  }
  return out;
}

}  // namespace

std::vector<Provenance> object_sources(const Diagram& d, std::string_view object) {
  return provenance(d, object, Side::source);
}

std::vector<Provenance> object_targets(const Diagram& d, std::string_view object) {
  return provenance(d, object, Side::target);
}

std::vector<NodeInput> node_inputs(const Diagram& d, std::string_view node) {
  std::vector<NodeInput> out;
  struct Carrier {
    std::string id;
    const std::vector<ObjectAttachment>* attachments;
    NodeInput::Route route;
  };
  std::vector<Carrier> carriers;
  for (const SequenceFlow* f : d.incoming(node))
    carriers.push_back({f->id, &f->attachments, NodeInput::Route::sequence_flow});
  for (const MessageFlow* f : d.incoming_messages(node))
    carriers.push_back({f->id, &f->attachments, NodeInput::Route::message_flow});
  std::sort(carriers.begin(), carriers.end(), [](const Carrier& a, const Carrier& b) { return a.id < b.id; });
  for (const auto& c : carriers)
    for (const auto& a : *c.attachments)
      if (a.direction == Direction::input) out.push_back({a.object, c.route, c.id, {}, a.optional});
  for (const DataFlow* f : d.incoming_data(node)) {
    if (d.kind_of(f->source) == ElementKind::store)
      out.push_back({f->object, NodeInput::Route::store, f->id, f->source, f->optional});
    else
      out.push_back({f->object, NodeInput::Route::data_flow, f->id, {}, f->optional});
  }
  return out;
}

std::vector<NodeOutput> node_outputs(const Diagram& d, std::string_view node) {
  std::vector<NodeOutput> out;
  struct Carrier {
    std::string id;
    const std::vector<ObjectAttachment>* attachments;
    NodeOutput::Route route;
  };
  std::vector<Carrier> carriers;
  for (const SequenceFlow* f : d.outgoing(node))
    carriers.push_back({f->id, &f->attachments, NodeOutput::Route::sequence_flow});
  for (const MessageFlow* f : d.outgoing_messages(node))
    carriers.push_back({f->id, &f->attachments, NodeOutput::Route::message_flow});
  std::sort(carriers.begin(), carriers.end(), [](const Carrier& a, const Carrier& b) { return a.id < b.id; });
  for (const auto& c : carriers)
    for (const auto& a : *c.attachments)
      if (a.direction == Direction::output) out.push_back({a.object, c.route, c.id, {}});
  for (const DataFlow* f : d.outgoing_data(node)) {
    if (d.kind_of(f->target) == ElementKind::store)
      out.push_back({f->object, NodeOutput::Route::store, f->id, f->target});
    else
      out.push_back({f->object, NodeOutput::Route::data_flow, f->id, {}});
  }
  return out;
}

Diagram without_element(const Diagram& d, std::string_view id) {
  DiagramParts p = d.parts();
  std::set<std::string, std::less<>> gone{std::string(id)};

  std::function<void(std::vector<Node>&)> drop_nodes = [&](std::vector<Node>& nodes) {
    for (auto it = nodes.begin(); it != nodes.end();) {
      if (gone.count(it->id)) {
        // Children disappear with their parent.
        std::function<void(const Node&)> mark = [&](const Node& n) {
          gone.insert(n.id);
          for (const auto& c : n.children) mark(c);
        };
        mark(*it);
        it = nodes.erase(it);
      } else {
        drop_nodes(it->children);
        ++it;
      }
    }
  };
  auto drop_attachments = [&](std::vector<ObjectAttachment>& atts) {
    std::erase_if(atts, [&](const ObjectAttachment& a) { return gone.count(a.object) > 0; });
  };

  for (auto it = p.pools.begin(); it != p.pools.end();) {
    if (gone.count(it->id)) {
      std::function<void(const Node&)> mark = [&](const Node& n) {
        gone.insert(n.id);
        for (const auto& c : n.children) mark(c);
      };
      for (const auto& n : it->nodes) mark(n);
      it = p.pools.erase(it);
    } else {
      ++it;
    }
  }
  for (auto& pool : p.pools) drop_nodes(pool.nodes);
  std::erase_if(p.stores, [&](const DataStore& s) { return gone.count(s.id) > 0; });
  std::erase_if(p.objects, [&](const DataObject& o) { return gone.count(o.id) > 0; });
  for (auto& s : p.stores)
    if (s.scope.sub_process && gone.count(*s.scope.sub_process)) s.scope.sub_process.reset();
  for (auto& o : p.objects)
    if (o.origin_store && gone.count(*o.origin_store)) o.origin_store.reset();
  std::erase_if(p.mappings, [&](const DataMapping& m) {
    return gone.count(m.id) || gone.count(m.source_object) || gone.count(m.target_object);
  });
  for (auto& pool : p.pools) {
    std::erase_if(pool.sequence_flows, [&](const SequenceFlow& f) {
      return gone.count(f.id) || gone.count(f.source) || gone.count(f.target);
    });
    for (auto& f : pool.sequence_flows) drop_attachments(f.attachments);
    std::erase_if(pool.data_flows, [&](const DataFlow& f) {
      return gone.count(f.id) || gone.count(f.source) || gone.count(f.target) || gone.count(f.object);
    });
  }
  std::erase_if(p.message_flows, [&](const MessageFlow& f) {
    return gone.count(f.id) || gone.count(f.source) || gone.count(f.target);
  });
  for (auto& f : p.message_flows) drop_attachments(f.attachments);
  return Diagram(std::move(p));
}

}  // namespace bpdmn
