#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bpdmn/behavior.hpp"
#include "bpdmn/model.hpp"

namespace bpdmn {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by init when the start inputs are incomplete or the diagram cannot start.
class InitError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// An exclusive gateway found no true guard and has no default flow.
class StuckGatewayError : public SimulationError {
 public:
  StuckGatewayError(std::string gateway);
  const std::string& gateway() const { return gateway_; }

 private:
  std::string gateway_;
};

struct Message {
  std::string flow;
  ObjectBindings snapshot;
  friend bool operator==(const Message&, const Message&) = default;
};

struct ExecutionState {
  std::map<std::string, int> tokens;  // sequence flow id -> count
  ObjectBindings bindings;
  std::map<std::string, std::vector<Record>> stores;
  std::map<std::string, std::deque<Message>> inbox;  // pool id -> pending messages
  std::set<std::string> completed;                   // nodes fired at least once
  std::set<std::string> active;                      // running sub-processes
  bool end_reached = false;
  int step_count = 0;

  int token_count() const;
  friend bool operator==(const ExecutionState&, const ExecutionState&) = default;
};

struct TraceEvent {
  enum class Kind { node_fired, object_bound, store_changed, message_sent, message_received };
  int step = 0;
  Kind kind = Kind::node_fired;
  std::string subject;  // node, object, store or message flow id
  std::string detail;   // variable path, store delta, or carried objects
  Value value;          // object_bound only
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};
std::string_view to_string(TraceEvent::Kind k);

/// `step 03: node_fired check_cc`
std::string format_event(const TraceEvent& e);

enum class Policy { smallest_id, random };
enum class Status { completed, deadlocked, step_limit };
std::string_view to_string(Status s);

struct RunOptions {
  int max_steps = 1000;
  Policy policy = Policy::smallest_id;
  std::uint64_t seed = 0;
};

struct RunResult {
  std::vector<TraceEvent> trace;
  Status status = Status::completed;
  ExecutionState final_state;

  /// Node ids in firing order.
  std::vector<std::string> fired() const;
  int count_fired(std::string_view node) const;
};

/// Places the initial tokens and binds message-start objects from the start inputs.
ExecutionState init(const Diagram& d, const SimulationSetup& setup);

/// Nodes whose control and data preconditions both hold.
std::set<std::string> enabled(const ExecutionState& state, const Diagram& d, const SimulationSetup& setup);

/// Fires one enabled node and returns its events, stamped with the new step number.
std::vector<TraceEvent> fire(ExecutionState& state, const Diagram& d, const SimulationSetup& setup,
                             std::string_view node);

/// Chooses a node per policy and fires it. Throws SimulationError if nothing is enabled.
std::vector<TraceEvent> step(ExecutionState& state, const Diagram& d, const SimulationSetup& setup,
                             Policy policy = Policy::smallest_id, std::mt19937_64* rng = nullptr);

RunResult run(const Diagram& d, const SimulationSetup& setup, const RunOptions& options = {});

/// Terminal classification of a state with nothing enabled.
Status classify(const ExecutionState& state);

}  // namespace bpdmn
