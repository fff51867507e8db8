#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bpdmn/expr.hpp"

namespace bpdmn {

/// Structural violation detected while building a Diagram.
class ModelError : public std::runtime_error {
 public:
  enum class Kind { structure, dangling_reference };
  ModelError(std::string element, const std::string& message, Kind kind = Kind::structure);
  /// Id of the offending element; empty when the problem is diagram-wide.
  const std::string& element() const { return element_; }
  Kind kind() const { return kind_; }

 private:
  std::string element_;
  Kind kind_;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind {
  task,
  sub_process,
  gateway_exclusive_data,
  gateway_parallel,
  start_event_none,
  start_event_message,
  end_event,
  intermediate_message,
};

enum class VarType { string, number, boolean, record };
enum class Direction { input, output };
enum class Physicality { digital, physical };

std::string_view to_string(NodeKind k);
std::string_view to_string(VarType t);
std::string_view to_string(Direction d);
std::string_view to_string(Physicality p);
std::optional<NodeKind> parse_node_kind(std::string_view s);
std::optional<VarType> parse_var_type(std::string_view s);
std::optional<Direction> parse_direction(std::string_view s);
std::optional<Physicality> parse_physicality(std::string_view s);

inline bool is_start_event(NodeKind k) {
  return k == NodeKind::start_event_none || k == NodeKind::start_event_message;
}
inline bool is_gateway(NodeKind k) {
  return k == NodeKind::gateway_exclusive_data || k == NodeKind::gateway_parallel;
}
inline bool is_scalar(VarType t) { return t != VarType::record; }

struct Variable {
  std::string name;  // dot-qualified, e.g. `Device.deviceID`
  VarType type = VarType::string;
  bool optional = false;
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Node {
  std::string id;
  std::string name;
  NodeKind kind = NodeKind::task;
  bool multi_instance = false;
  int instances = 1;
  std::optional<Expression> condition;
  std::vector<Node> children;
  /// Derived from store scopes when the Diagram is built.
  std::vector<std::string> local_stores;
  friend bool operator==(const Node&, const Node&) = default;
};

struct ObjectAttachment {
  std::string object;
  Direction direction = Direction::input;
  bool optional = false;
  friend bool operator==(const ObjectAttachment&, const ObjectAttachment&) = default;
};

struct SequenceFlow {
  std::string id;
  std::string source;
  std::string target;
  std::vector<ObjectAttachment> attachments;
  std::optional<Expression> guard;
  bool is_default = false;
  friend bool operator==(const SequenceFlow&, const SequenceFlow&) = default;
};

/// Endpoints are node ids, or the id of an external pool.
struct MessageFlow {
  std::string id;
  std::string source;
  std::string target;
  std::vector<ObjectAttachment> attachments;
  friend bool operator==(const MessageFlow&, const MessageFlow&) = default;
};

/// Dashed-line data flow; at most one endpoint is a store.
struct DataFlow {
  std::string id;
  std::string source;
  std::string target;
  std::string object;
  bool optional = false;
  friend bool operator==(const DataFlow&, const DataFlow&) = default;
};

struct Pool {
  std::string id;
  std::string name;
  /// Black-box participant: no process of its own.
  bool external = false;
  std::vector<Node> nodes;
  std::vector<SequenceFlow> sequence_flows;
  std::vector<DataFlow> data_flows;
  friend bool operator==(const Pool&, const Pool&) = default;
};

struct Stereotype {
  enum class Kind { generic, document, product, message, custom };
  Kind kind = Kind::generic;
  std::string label;  // custom only
  friend bool operator==(const Stereotype&, const Stereotype&) = default;
};

struct StoreIcon {
  enum class Kind { database, warehouse, folder, custom };
  Kind kind = Kind::database;
  std::string label;  // custom only
  friend bool operator==(const StoreIcon&, const StoreIcon&) = default;
};

struct DataObject {
  std::string id;
  std::string name;
  Stereotype stereotype;
  Physicality physicality = Physicality::digital;
  std::vector<Variable> variables;
  /// WSDL message type used by BPEL; defaults to the object id.
  std::optional<std::string> message_type;
  std::optional<std::string> url;
  std::optional<std::string> state;
  std::optional<std::string> origin_store;

  const Variable* find_variable(std::string_view name) const;
  friend bool operator==(const DataObject&, const DataObject&) = default;
};

struct Entity {
  std::string name;
  std::vector<Variable> fields;
  friend bool operator==(const Entity&, const Entity&) = default;
};

struct Relationship {
  std::string name;
  std::string left;
  std::string right;
  friend bool operator==(const Relationship&, const Relationship&) = default;
};

struct Generalization {
  std::string parent;
  std::string child;
  friend bool operator==(const Generalization&, const Generalization&) = default;
};

struct StoreScope {
  std::optional<std::string> sub_process;  // nullopt: whole diagram
  bool is_diagram() const { return !sub_process.has_value(); }
  friend bool operator==(const StoreScope&, const StoreScope&) = default;
};

struct DataStore {
  std::string id;
  std::string name;
  StoreIcon icon;
  std::vector<Entity> entities;
  std::vector<Relationship> relationships;
  std::vector<Generalization> generalizations;
  StoreScope scope;
  bool collapsed = false;

  const Entity* find_entity(std::string_view name) const;
  /// `Entity.field` paths including fields inherited through generalizations.
  std::set<std::string> qualified_fields() const;
  friend bool operator==(const DataStore&, const DataStore&) = default;
};

struct CopyRule {
  Expression from;
  std::string to;  // variable path in the target object
  friend bool operator==(const CopyRule&, const CopyRule&) = default;
};

struct DataMapping {
  std::string id;
  std::string source_object;
  std::string target_object;
  std::vector<CopyRule> rules;
  friend bool operator==(const DataMapping&, const DataMapping&) = default;
};

/// Plain aggregate used to assemble a Diagram.
struct DiagramParts {
  std::string id;
  std::vector<Pool> pools;
  std::vector<DataStore> stores;
  std::vector<DataObject> objects;
  std::vector<DataMapping> mappings;
  std::vector<MessageFlow> message_flows;
  friend bool operator==(const DiagramParts&, const DiagramParts&) = default;
};

enum class ElementKind { pool, node, sequence_flow, message_flow, data_flow, store, object, mapping };
std::string_view to_string(ElementKind k);

/// Immutable BPDMN diagram. Copies share the underlying model.
class Diagram {
 public:
  Diagram();
  /// Throws ModelError on duplicate ids, dangling references, or broken element invariants.
  explicit Diagram(DiagramParts parts);

  const DiagramParts& parts() const { return impl_->parts; }
  const std::string& id() const { return impl_->parts.id; }
  const std::vector<Pool>& pools() const { return impl_->parts.pools; }
  const std::vector<DataStore>& stores() const { return impl_->parts.stores; }
  const std::vector<DataObject>& objects() const { return impl_->parts.objects; }
  const std::vector<DataMapping>& mappings() const { return impl_->parts.mappings; }
  const std::vector<MessageFlow>& message_flows() const { return impl_->parts.message_flows; }

  std::optional<ElementKind> kind_of(std::string_view id) const;

  const Pool* find_pool(std::string_view id) const;
  const Node* find_node(std::string_view id) const;
  const SequenceFlow* find_sequence_flow(std::string_view id) const;
  const MessageFlow* find_message_flow(std::string_view id) const;
  const DataFlow* find_data_flow(std::string_view id) const;
  const DataStore* find_store(std::string_view id) const;
  const DataObject* find_object(std::string_view id) const;
  const DataMapping* find_mapping(std::string_view id) const;

  /// Pool containing a node, or the pool itself for an external-pool endpoint id.
  const Pool* pool_of(std::string_view node_or_pool) const;
  /// Innermost enclosing sub-process, or nullptr for top-level nodes.
  const Node* parent_of(std::string_view node_id) const;
  /// Every node (including nested children), sorted by id.
  const std::vector<const Node*>& all_nodes() const { return impl_->all_nodes; }
  /// The node and all of its transitive children.
  std::vector<const Node*> subtree(const Node& n) const;
  bool is_descendant(std::string_view node, std::string_view ancestor) const;

  // Adjacency, each sorted by flow id.
  std::vector<const SequenceFlow*> incoming(std::string_view node) const;
  std::vector<const SequenceFlow*> outgoing(std::string_view node) const;
  std::vector<const MessageFlow*> incoming_messages(std::string_view node) const;
  std::vector<const MessageFlow*> outgoing_messages(std::string_view node) const;
  std::vector<const DataFlow*> incoming_data(std::string_view node_or_store) const;
  std::vector<const DataFlow*> outgoing_data(std::string_view node_or_store) const;
  std::vector<const DataFlow*> all_data_flows() const;
  std::vector<const SequenceFlow*> all_sequence_flows() const;

 private:
  struct Impl {
    DiagramParts parts;
    std::map<std::string, ElementKind, std::less<>> kinds;
    std::map<std::string, const Node*, std::less<>> nodes;
    std::map<std::string, const Pool*, std::less<>> node_pool;
    std::map<std::string, const Node*, std::less<>> node_parent;
    std::vector<const Node*> all_nodes;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Nodes permitted to read or write the store.
std::set<std::string> resolve_scope(const Diagram& d, std::string_view store);

struct Provenance {
  enum class Kind {
    // sources
    store_extraction,
    activity_output,
    message_received,
    message_start,
    // targets
    store_insertion,
    message_sent,
    task_input,
    // both (mapping source object is a target, mapping target object a source)
    mapping,
  };
  Kind kind;
  /// Producing/consuming element: node, store, or mapping id.
  std::string element;
  /// Carrier: flow id, or the mapping id.
  std::string via;
  /// Attachment index on `via`, or -1 when the record does not stem from an attachment.
  int attachment = -1;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};
std::string_view to_string(Provenance::Kind k);

std::vector<Provenance> object_sources(const Diagram& d, std::string_view object);
std::vector<Provenance> object_targets(const Diagram& d, std::string_view object);

/// Input object of a node together with the route that delivers it.
struct NodeInput {
  enum class Route { sequence_flow, message_flow, data_flow, store };
  std::string object;
  Route route;
  std::string via;    // flow id
  std::string store;  // route == store
  bool optional = false;
};

struct NodeOutput {
  enum class Route { sequence_flow, message_flow, data_flow, store };
  std::string object;
  Route route;
  std::string via;
  std::string store;
};

/// Inputs ordered by (sequence/message attachments, then data flows), each by flow id.
std::vector<NodeInput> node_inputs(const Diagram& d, std::string_view node);
std::vector<NodeOutput> node_outputs(const Diagram& d, std::string_view node);

/// Copy of the diagram with the element and everything referencing it removed.
Diagram without_element(const Diagram& d, std::string_view id);

}  // namespace bpdmn
