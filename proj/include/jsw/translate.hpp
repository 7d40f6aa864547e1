#pragma once

#include <string>
#include <vector>

#include "jsw/algebra.hpp"
#include "jsw/json.hpp"

namespace jsw {

// Rewrites every $ref so it points at #/definitions/<name>, copying referred
// subschemas into definitions under path-derived names. Idempotent. "#" is
// kept as-is (it resolves to the document root at translation time).
JsonValue normalize_refs(const JsonValue& raw);

struct Translation {
  SchemaDoc doc;
  std::vector<std::string> warnings;
};

// Draft-06 (plus minContains/maxContains) to the core algebra. Expects the
// document to be ref-normalized; runs normalize_refs itself if needed.
Translation translate(Context& ctx, const JsonValue& raw);

// const/enum structural encoding.
TermId translate_const(Context& ctx, const JsonValue& j);

// oneOf formula over branch variables: one holds, all others are violated.
TermId one_of_formula(Context& ctx, const std::vector<NameId>& branch_vars);

// Pattern whose language is exactly the strings satisfying s (vars resolved
// through env). Throws ExpansionBudgetExceeded past `max_nodes` EERE nodes.
EereId patt_of_s(Context& ctx, TermId s, const Environment& env, size_t max_nodes);

// Total JSON tree node count (budget baseline for PattOfS).
size_t json_node_count(const JsonValue& j);

}  // namespace jsw
