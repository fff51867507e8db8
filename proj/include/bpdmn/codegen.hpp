#pragma once

#include <string>
#include <vector>

#include "bpdmn/model.hpp"

namespace bpdmn {

struct Translation {
  std::string text;  // XML document
  std::vector<std::string> warnings;
};

/// BPEL process fragment. Throws PreconditionError if the diagram has validation errors.
Translation to_bpel(const Diagram& d);

/// XPDL package fragment. Throws PreconditionError if the diagram has validation errors.
Translation to_xpdl(const Diagram& d);

/// Placeholder attributes the BPEL generator fills in for WSDL plumbing.
inline const std::vector<std::string>& bpel_placeholder_attributes() {
  static const std::vector<std::string> names{"partnerLink", "portType", "operation"};
  return names;
}

}  // namespace bpdmn
