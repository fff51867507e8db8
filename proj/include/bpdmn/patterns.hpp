#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bpdmn/model.hpp"
#include "bpdmn/validator.hpp"

namespace bpdmn {

/// Workflow data patterns 1..40, then the four additional requirements 41..44.
using PatternId = int;
inline constexpr PatternId pattern_structure = 41;
inline constexpr PatternId pattern_explicit_data_flow = 42;
inline constexpr PatternId pattern_data_control_flow = 43;
inline constexpr PatternId pattern_process_data_store = 44;
inline constexpr int pattern_count = 44;

enum class Support { supported, partial, unsupported };
std::string_view to_symbol(Support s);  // "+", "+/-", "-"

enum class PatternGroup { visibility, internal_interaction, external_interaction, transfer, routing, additional };
std::string_view to_string(PatternGroup g);

struct PatternInfo {
  PatternId id;
  std::string_view key;   // "p7", "structure", ...
  std::string_view name;  // row label
  PatternGroup group;
  Support bpmn;
  Support bpdmn;
};

/// All 44 rows in table order.
const std::array<PatternInfo, pattern_count>& capability_matrix();
const PatternInfo& pattern_info(PatternId id);
/// Accepts "7", "p7" or an extra's key.
std::optional<PatternId> parse_pattern_id(std::string_view text);

/// Element ids witnessing one occurrence of a pattern.
using Witness = std::set<std::string>;

struct PatternReport {
  std::map<PatternId, std::vector<Witness>> instances;  // every id present, possibly empty
  const std::vector<Witness>& of(PatternId id) const { return instances.at(id); }
  std::size_t total() const;
};

/// Runs every detector. Throws PreconditionError when the diagram has validation errors.
PatternReport analyze(const Diagram& d);

/// Table-style rendering of the capability matrix.
std::string format_matrix();

}  // namespace bpdmn
