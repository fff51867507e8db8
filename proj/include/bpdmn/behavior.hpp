#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bpdmn/expr.hpp"

namespace bpdmn {

/// One stored record: qualified field path (`Entity.field`) to value.
using Record = std::map<std::string, Value>;

/// Object id -> variable path -> value.
using ObjectBindings = std::map<std::string, std::map<std::string, Value>>;

/// `target := value`, where target is an object-qualified path into an output object.
struct Effect {
  std::string target;
  Expression value;
  friend bool operator==(const Effect&, const Effect&) = default;
};

struct StoreInsert {
  std::string store;
  std::string entity;
  /// field name (relative to entity) -> value expression
  std::vector<std::pair<std::string, Expression>> fields;
  friend bool operator==(const StoreInsert&, const StoreInsert&) = default;
};

/// Copies the most recent matching record of `entity` into `object`.
struct StoreRead {
  std::string store;
  std::string entity;
  std::optional<Expression> filter;
  std::string object;
  friend bool operator==(const StoreRead&, const StoreRead&) = default;
};

/// Opaque task internals supplied alongside a model for simulation.
struct TaskBehavior {
  std::vector<Effect> effects;
  std::vector<StoreInsert> inserts;
  std::vector<StoreRead> reads;
  friend bool operator==(const TaskBehavior&, const TaskBehavior&) = default;
};

using Behaviors = std::map<std::string, TaskBehavior, std::less<>>;

struct SimulationSetup {
  Behaviors behaviors;
  ObjectBindings start_inputs;
  std::map<std::string, std::vector<Record>> initial_records;
  bool empty() const { return behaviors.empty() && start_inputs.empty() && initial_records.empty(); }
  friend bool operator==(const SimulationSetup&, const SimulationSetup&) = default;
};

}  // namespace bpdmn
