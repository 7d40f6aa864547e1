#pragma once

#include <vector>

#include "jsw/algebra.hpp"
#include "jsw/json.hpp"

namespace jsw {

// Reference validator: top-down semantics with variables unfolded through
// their definitions. Requires the document to be guarded and closing.
bool validate(Context& ctx, const JsonValue& j, const SchemaDoc& doc);

// Map from variable to the finite witness set collected so far. Insertion
// order is preserved; the generator always draws the first element.
struct Assignment {
  std::unordered_map<NameId, std::vector<JsonValue>> sets;

  bool bound(NameId x) const { return sets.count(x) > 0; }
  bool witnessed(NameId x) const {
    auto it = sets.find(x);
    return it != sets.end() && !it->second.empty();
  }
  const std::vector<JsonValue>& values(NameId x) const;
};

// Bottom-up evaluation: variables are interpreted by the assignment, all
// other operators by their semantic rules.
bool assignment_eval(Context& ctx, TermId s, const Assignment& a, const JsonValue& j);

}  // namespace jsw
