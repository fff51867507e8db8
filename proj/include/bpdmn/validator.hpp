#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bpdmn/model.hpp"

namespace bpdmn {

enum class Severity { error, warning };
std::string_view to_string(Severity s);

struct Diagnostic {
  std::string rule;  // "V1" .. "V9"
  Severity severity = Severity::error;
  std::string element;
  std::string message;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Runs the full rule catalog. Result is sorted by rule, element, then message.
std::vector<Diagnostic> validate(const Diagram& d);

bool has_errors(const std::vector<Diagnostic>& diags);

/// Raised by consumers that require a diagram without validation errors.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `RULE severity element: message`
std::string format_diagnostic(const Diagnostic& diag);

}  // namespace bpdmn
