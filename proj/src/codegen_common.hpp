#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "bpdmn/model.hpp"
#include "bpdmn/validator.hpp"

namespace bpdmn::detail {

struct StoreField {
  std::string path;  // Entity.field
  std::string name;  // field name without the entity
  VarType type;
};

/// Scalar leaves of every entity, inherited fields included, in entity then field order.
inline std::vector<StoreField> store_fields(const DataStore& s) {
  std::vector<StoreField> out;
  for (const auto& e : s.entities) {
    std::vector<std::string> chain{e.name};
    for (std::size_t i = 0; i < chain.size() && i < s.entities.size(); ++i)
      for (const auto& g : s.generalizations)
        if (g.child == chain[i] && std::find(chain.begin(), chain.end(), g.parent) == chain.end())
          chain.push_back(g.parent);
    for (const auto& owner : chain) {
      const Entity* ent = s.find_entity(owner);
      if (!ent) continue;
      for (const auto& f : ent->fields) {
        if (!is_scalar(f.type)) continue;
        std::string path = e.name + "." + f.name;
        bool dup = std::any_of(out.begin(), out.end(), [&](const StoreField& x) { return x.path == path; });
        if (!dup) out.push_back({path, f.name, f.type});
      }
    }
  }
  return out;
}

inline void require_valid(const Diagram& d) {
  auto diags = validate(d);
  for (const auto& diag : diags)
    if (diag.severity == Severity::error)
      throw PreconditionError("diagram has validation errors: " + format_diagnostic(diag));
}

template <typename T>
void push_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace bpdmn::detail
