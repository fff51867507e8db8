#pragma once

#include <string>

#include "bpdmn/model.hpp"

namespace bpdmn {

struct RenderOptions {
  /// Drop data object nodes and the edges that route through them.
  bool hide_data = false;
};

/// Graphviz dot text. Every node carries a `class` attribute (task, gateway, event, store, object).
std::string to_dot(const Diagram& d, const RenderOptions& options = {});

}  // namespace bpdmn
