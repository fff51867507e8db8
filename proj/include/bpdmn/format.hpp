#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bpdmn/behavior.hpp"
#include "bpdmn/model.hpp"

namespace bpdmn {

struct SourceSpan {
  int line = 1;
  int column = 1;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Diagnostic raised by the BPDMN-JSON reader. Always carries a span.
class FormatError : public std::runtime_error {
 public:
  enum class Kind { malformed, schema, dangling_reference };
  FormatError(Kind kind, SourceSpan span, const std::string& message);
  Kind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }
  /// Message without the location prefix.
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  SourceSpan span_;
  std::string detail_;
};

struct ParseOptions {
  /// Unknown keys become warnings instead of errors.
  bool lenient = false;
};

/// A fixture file: the model plus its optional simulation sections.
struct Document {
  Diagram diagram;
  SimulationSetup simulation;
  std::vector<std::string> warnings;
};

inline constexpr std::string_view format_version = "1.0";
inline constexpr std::string_view file_extension = ".bpdmn.json";

Document parse_document(std::string_view text, const ParseOptions& options = {});
Diagram parse_diagram(std::string_view text, const ParseOptions& options = {});

/// Simulation sections only (`behaviors`, `start_inputs`, `initial_records`), e.g. from a sidecar file.
SimulationSetup parse_simulation(std::string_view text, const Diagram& against, const ParseOptions& options = {});

/// Canonical form: fixed key order, id-sorted elements, two-space indent, trailing newline.
std::string serialize_diagram(const Diagram& d);
std::string serialize_document(const Diagram& d, const SimulationSetup& simulation);

}  // namespace bpdmn
