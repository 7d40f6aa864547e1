#include "jsw/validate.hpp"

#include <functional>

#include "jsw/error.hpp"

namespace jsw {

namespace {

JsonType type_of(const JsonValue& j) {
  switch (j.type()) {
    case JsonValue::Type::Null: return JsonType::Null;
    case JsonValue::Type::Bool: return JsonType::Bool;
    case JsonValue::Type::Num: return JsonType::Num;
    case JsonValue::Type::Str: return JsonType::Str;
    case JsonValue::Type::Object: return JsonType::Obj;
    case JsonValue::Type::Array: return JsonType::Arr;
  }
  return JsonType::Null;
}

bool in_interval(const Decimal& v, const ExtDecimal& lo, const ExtDecimal& hi, bool exclusive) {
  ExtDecimal ev = ExtDecimal::finite(v);
  int cl = ExtDecimal::cmp(lo, ev);
  int ch = ExtDecimal::cmp(ev, hi);
  return exclusive ? (cl < 0 && ch < 0) : (cl <= 0 && ch <= 0);
}

bool count_in(uint64_t n, const ExtNat& lo, const ExtNat& hi) {
  if (!lo.is_inf() && n < lo.v) return false;
  if (lo.is_inf()) return false;  // pro_inf^inf style bounds are unsatisfiable
  if (!hi.is_inf() && n > hi.v) return false;
  return true;
}

// Shared evaluator; `resolver` interprets variables.
template <typename VarEval>
bool eval(Context& ctx, TermId s, const JsonValue& j, VarEval&& var_eval) {
  const Term& t = ctx.terms.node(s);
  switch (t.kind) {
    case TermKind::Bot: return false;
    case TermKind::IsBoolValue: return !j.is_bool() || j.as_bool() == t.bval;
    case TermKind::Pattern: return !j.is_str() || ctx.matches(t.patt, j.as_str());
    case TermKind::Betw: return !j.is_num() || in_interval(j.as_num(), t.lo, t.hi, false);
    case TermKind::XBetw: return !j.is_num() || in_interval(j.as_num(), t.lo, t.hi, true);
    case TermKind::MulOf: return !j.is_num() || Decimal::is_multiple_of(j.as_num(), t.q);
    case TermKind::NotMulOf: return !j.is_num() || !Decimal::is_multiple_of(j.as_num(), t.q);
    case TermKind::Props: {
      if (!j.is_object()) return true;
      for (const auto& [k, v] : j.as_object()) {
        if (ctx.matches(t.patt, k) && !eval(ctx, t.a, v, var_eval)) return false;
      }
      return true;
    }
    case TermKind::Req: {
      if (!j.is_object()) return true;
      return j.as_object().count(ctx.names.str(t.var)) > 0;
    }
    case TermKind::PattReq: {
      if (!j.is_object()) return true;
      for (const auto& [k, v] : j.as_object()) {
        if (ctx.matches(t.patt, k) && eval(ctx, t.a, v, var_eval)) return true;
      }
      return false;
    }
    case TermKind::Pro: return !j.is_object() || count_in(j.as_object().size(), t.lo_n, t.hi_n);
    case TermKind::Item: {
      if (!j.is_array()) return true;
      const auto& arr = j.as_array();
      if (arr.size() < t.lo_n.v) return true;
      return eval(ctx, t.a, arr[t.lo_n.v - 1], var_eval);
    }
    case TermKind::Items: {
      if (!j.is_array()) return true;
      const auto& arr = j.as_array();
      for (uint64_t idx = t.lo_n.v; idx < arr.size(); ++idx) {
        if (!eval(ctx, t.a, arr[idx], var_eval)) return false;
      }
      return true;
    }
    case TermKind::Cont: {
      if (!j.is_array()) return true;
      uint64_t n = 0;
      for (const auto& v : j.as_array()) {
        if (eval(ctx, t.a, v, var_eval)) ++n;
      }
      return count_in(n, t.lo_n, t.hi_n);
    }
    case TermKind::ContAfter: {
      if (!j.is_array()) return true;
      const auto& arr = j.as_array();
      for (uint64_t idx = t.lo_n.v; idx < arr.size(); ++idx) {
        if (eval(ctx, t.a, arr[idx], var_eval)) return true;
      }
      return false;
    }
    case TermKind::Type: return type_of(j) == t.type;
    case TermKind::Var: return var_eval(t.var, j);
    case TermKind::And: return eval(ctx, t.a, j, var_eval) && eval(ctx, t.b, j, var_eval);
    case TermKind::Or: return eval(ctx, t.a, j, var_eval) || eval(ctx, t.b, j, var_eval);
    case TermKind::Not: return !eval(ctx, t.a, j, var_eval);
  }
  throw Error(ErrorCode::Internal, "bad term");
}

}  // namespace

bool validate(Context& ctx, const JsonValue& j, const SchemaDoc& doc) {
  check_closing(ctx, doc);
  if (!check_guarded(ctx, doc.env)) {
    throw Error(ErrorCode::UnguardedRecursion, "document is not guarded");
  }
  // Unfolding a variable recurses into its body; guardedness bounds the
  // total unfolding by the depth of j.
  std::function<bool(NameId, const JsonValue&)> var_eval = [&](NameId x, const JsonValue& v) {
    return eval(ctx, doc.env.body(x), v, var_eval);
  };
  return eval(ctx, doc.root, j, var_eval);
}

const std::vector<JsonValue>& Assignment::values(NameId x) const {
  auto it = sets.find(x);
  if (it == sets.end()) throw Error(ErrorCode::UnboundVariable, "unbound variable");
  return it->second;
}

bool assignment_eval(Context& ctx, TermId s, const Assignment& a, const JsonValue& j) {
  auto var_eval = [&](NameId x, const JsonValue& v) {
    auto it = a.sets.find(x);
    if (it == a.sets.end()) throw Error(ErrorCode::UnboundVariable, "unbound variable");
    for (const auto& w : it->second) {
      if (json_equal(w, v)) return true;
    }
    return false;
  };
  return eval(ctx, s, j, var_eval);
}

}  // namespace jsw
