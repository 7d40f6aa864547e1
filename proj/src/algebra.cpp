#include "jsw/algebra.hpp"

#include <chrono>
#include <functional>

#include "jsw/error.hpp"

namespace jsw {

NameId NameTable::intern(std::string_view s) {
  std::string key(s);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  NameId id = static_cast<NameId>(names_.size());
  names_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

std::string NameTable::unique(const std::string& base,
                              const std::unordered_map<NameId, uint32_t>& taken) {
  auto in_use = [&](const std::string& s) {
    auto it = index_.find(s);
    return it != index_.end() && taken.count(it->second) > 0;
  };
  if (!in_use(base)) return base;
  for (uint32_t n = 2;; ++n) {
    std::string cand = base + "~" + std::to_string(n);
    if (!in_use(cand)) return cand;
  }
}

const char* type_name(JsonType t) {
  switch (t) {
    case JsonType::Null: return "Null";
    case JsonType::Bool: return "Bool";
    case JsonType::Str: return "Str";
    case JsonType::Num: return "Num";
    case JsonType::Obj: return "Obj";
    case JsonType::Arr: return "Arr";
  }
  return "?";
}

bool Term::operator==(const Term& o) const {
  return kind == o.kind && bval == o.bval && patt == o.patt && lo == o.lo && hi == o.hi &&
         Decimal::cmp(q, o.q) == 0 && lo_n == o.lo_n && hi_n == o.hi_n && type == o.type &&
         var == o.var && a == o.a && b == o.b;
}

namespace {
std::string term_key(const Term& t) {
  std::string k;
  k += static_cast<char>('A' + static_cast<int>(t.kind));
  k += t.bval ? '1' : '0';
  auto num = [&](uint64_t v) {
    k += std::to_string(v);
    k += ',';
  };
  num(t.patt);
  k += t.lo.to_string();
  k += ',';
  k += t.hi.to_string();
  k += ',';
  k += t.q.to_string();
  k += ',';
  num(t.lo_n.v);
  num(t.hi_n.v);
  num(static_cast<uint64_t>(t.type));
  num(t.var);
  num(t.a);
  num(t.b);
  return k;
}
}  // namespace

TermArena::TermArena() {
  Term bot;
  bot.kind = TermKind::Bot;
  nodes_.push_back(bot);
  memo_[term_key(bot)] = 0;
  top_ = pro(ExtNat(0), ExtNat::inf());
}

TermId TermArena::add(Term t) {
  std::string k = term_key(t);
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  TermId id = static_cast<TermId>(nodes_.size());
  nodes_.push_back(std::move(t));
  memo_.emplace(std::move(k), id);
  return id;
}

TermId TermArena::is_bool(bool b) {
  Term t;
  t.kind = TermKind::IsBoolValue;
  t.bval = b;
  return add(t);
}

TermId TermArena::pattern(EereId r) {
  Term t;
  t.kind = TermKind::Pattern;
  t.patt = r;
  return add(t);
}

TermId TermArena::betw(ExtDecimal lo, ExtDecimal hi) {
  Term t;
  t.kind = TermKind::Betw;
  t.lo = lo;
  t.hi = hi;
  return add(t);
}

TermId TermArena::xbetw(ExtDecimal lo, ExtDecimal hi) {
  Term t;
  t.kind = TermKind::XBetw;
  t.lo = lo;
  t.hi = hi;
  return add(t);
}

TermId TermArena::mul_of(Decimal q) {
  Term t;
  t.kind = TermKind::MulOf;
  t.q = q.abs();  // sign of the divisor is irrelevant
  return add(t);
}

TermId TermArena::not_mul_of(Decimal q) {
  Term t;
  t.kind = TermKind::NotMulOf;
  t.q = q.abs();
  return add(t);
}

TermId TermArena::props(EereId r, TermId s) {
  Term t;
  t.kind = TermKind::Props;
  t.patt = r;
  t.a = s;
  return add(t);
}

TermId TermArena::req(std::string_view key, NameTable& names) {
  Term t;
  t.kind = TermKind::Req;
  t.var = names.intern(key);  // member names share the name table
  return add(t);
}

TermId TermArena::patt_req(EereId r, TermId s) {
  Term t;
  t.kind = TermKind::PattReq;
  t.patt = r;
  t.a = s;
  return add(t);
}

TermId TermArena::pro(ExtNat lo, ExtNat hi) {
  Term t;
  t.kind = TermKind::Pro;
  t.lo_n = lo;
  t.hi_n = hi;
  return add(t);
}

TermId TermArena::item(uint64_t l, TermId s) {
  Term t;
  t.kind = TermKind::Item;
  t.lo_n = ExtNat(l);
  t.a = s;
  return add(t);
}

TermId TermArena::items(uint64_t i, TermId s) {
  Term t;
  t.kind = TermKind::Items;
  t.lo_n = ExtNat(i);
  t.a = s;
  return add(t);
}

TermId TermArena::cont(ExtNat lo, ExtNat hi, TermId s) {
  Term t;
  t.kind = TermKind::Cont;
  t.lo_n = lo;
  t.hi_n = hi;
  t.a = s;
  return add(t);
}

TermId TermArena::cont_after(uint64_t i, TermId s) {
  Term t;
  t.kind = TermKind::ContAfter;
  t.lo_n = ExtNat(i);
  t.a = s;
  return add(t);
}

TermId TermArena::type(JsonType ty) {
  Term t;
  t.kind = TermKind::Type;
  t.type = ty;
  return add(t);
}

TermId TermArena::var(NameId x) {
  Term t;
  t.kind = TermKind::Var;
  t.var = x;
  return add(t);
}

TermId TermArena::conj(TermId a, TermId b) {
  if (a == bot() || b == bot()) return bot();
  if (a == top()) return b;
  if (b == top() || a == b) return a;
  Term t;
  t.kind = TermKind::And;
  t.a = a;
  t.b = b;
  return add(t);
}

TermId TermArena::disj(TermId a, TermId b) {
  if (a == top() || b == top()) return top();
  if (a == bot()) return b;
  if (b == bot() || a == b) return a;
  Term t;
  t.kind = TermKind::Or;
  t.a = a;
  t.b = b;
  return add(t);
}

TermId TermArena::neg(TermId a) {
  if (kind(a) == TermKind::Not) return node(a).a;
  Term t;
  t.kind = TermKind::Not;
  t.a = a;
  return add(t);
}

bool TermArena::is_ito(TermId id) const {
  switch (kind(id)) {
    case TermKind::IsBoolValue:
    case TermKind::Pattern:
    case TermKind::Betw:
    case TermKind::XBetw:
    case TermKind::MulOf:
    case TermKind::NotMulOf:
    case TermKind::Props:
    case TermKind::Req:
    case TermKind::PattReq:
    case TermKind::Pro:
    case TermKind::Item:
    case TermKind::Items:
    case TermKind::Cont:
    case TermKind::ContAfter: return true;
    default: return false;
  }
}

JsonType TermArena::ito_type(TermId id) const {
  switch (kind(id)) {
    case TermKind::IsBoolValue: return JsonType::Bool;
    case TermKind::Pattern: return JsonType::Str;
    case TermKind::Betw:
    case TermKind::XBetw:
    case TermKind::MulOf:
    case TermKind::NotMulOf: return JsonType::Num;
    case TermKind::Props:
    case TermKind::Req:
    case TermKind::PattReq:
    case TermKind::Pro: return JsonType::Obj;
    case TermKind::Item:
    case TermKind::Items:
    case TermKind::Cont:
    case TermKind::ContAfter: return JsonType::Arr;
    default: throw Error(ErrorCode::Internal, "ito_type on a non-ITO term");
  }
}

void Environment::define(NameId x, TermId s) {
  if (has(x)) throw Error(ErrorCode::Internal, "variable defined twice");
  index.emplace(x, static_cast<uint32_t>(defs.size()));
  defs.emplace_back(x, s);
}

void Context::check_deadline() const {
  if (!deadline_ms) return;
  auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now().time_since_epoch())
                 .count();
  if (now > *deadline_ms) throw Error(ErrorCode::Timeout, "time budget exceeded");
}

void Context::set_deadline_after_ms(long long ms) {
  auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now().time_since_epoch())
                 .count();
  deadline_ms = now + ms;
}

bool Context::matches(EereId r, const std::string& s) {
  return dfas.compile(patterns, r)->accepts(utf8_to_codepoints(s));
}

namespace {

void collect_vars(const TermArena& terms, TermId id, std::vector<NameId>& out, bool unguarded_only) {
  const Term& t = terms.node(id);
  switch (t.kind) {
    case TermKind::Var: out.push_back(t.var); return;
    case TermKind::And:
    case TermKind::Or:
      collect_vars(terms, t.a, out, unguarded_only);
      collect_vars(terms, t.b, out, unguarded_only);
      return;
    case TermKind::Not: collect_vars(terms, t.a, out, unguarded_only); return;
    case TermKind::Props:
    case TermKind::PattReq:
    case TermKind::Item:
    case TermKind::Items:
    case TermKind::Cont:
    case TermKind::ContAfter:
      if (!unguarded_only) collect_vars(terms, t.a, out, unguarded_only);
      return;
    default: return;
  }
}

}  // namespace

void check_closing(const Context& ctx, const SchemaDoc& doc) {
  std::vector<NameId> used;
  collect_vars(ctx.terms, doc.root, used, false);
  for (const auto& [x, body] : doc.env.defs) collect_vars(ctx.terms, body, used, false);
  for (NameId x : used) {
    if (!doc.env.has(x)) {
      throw Error(ErrorCode::UndefinedVariable, "undefined variable " + ctx.names.str(x));
    }
  }
}

bool check_guarded(const Context& ctx, const Environment& env) {
  // DFS over the "directly depends on" edges (variable occurrences not
  // below an ITO).
  enum { White, Grey, Black };
  std::unordered_map<NameId, uint8_t> color;
  std::function<bool(NameId)> visit = [&](NameId x) -> bool {
    auto& c = color[x];
    if (c == Grey) return false;
    if (c == Black) return true;
    c = Grey;
    if (env.has(x)) {
      std::vector<NameId> deps;
      collect_vars(ctx.terms, env.body(x), deps, true);
      for (NameId y : deps) {
        if (!visit(y)) return false;
      }
    }
    color[x] = Black;
    return true;
  };
  for (const auto& [x, body] : env.defs) {
    if (!visit(x)) return false;
  }
  return true;
}

std::string term_to_string(const Context& ctx, TermId id) {
  const Term& t = ctx.terms.node(id);
  auto sub = [&](TermId c) { return term_to_string(ctx, c); };
  auto natpair = [&](const ExtNat& a, const ExtNat& b) {
    return "_" + a.to_string() + "^" + b.to_string();
  };
  switch (t.kind) {
    case TermKind::Bot: return "f";
    case TermKind::IsBoolValue: return std::string("isBoolValue(") + (t.bval ? "true" : "false") + ")";
    case TermKind::Pattern: return "pattern(" + ctx.patterns.to_string(t.patt) + ")";
    case TermKind::Betw: return "betw_" + t.lo.to_string() + "^" + t.hi.to_string();
    case TermKind::XBetw: return "xBetw_" + t.lo.to_string() + "^" + t.hi.to_string();
    case TermKind::MulOf: return "mulOf(" + t.q.to_string() + ")";
    case TermKind::NotMulOf: return "notMulOf(" + t.q.to_string() + ")";
    case TermKind::Props: return "props(" + ctx.patterns.to_string(t.patt) + " : " + sub(t.a) + ")";
    case TermKind::Req: return "req(" + ctx.names.str(t.var) + ")";
    case TermKind::PattReq:
      return "pattReq(" + ctx.patterns.to_string(t.patt) + " : " + sub(t.a) + ")";
    case TermKind::Pro:
      if (id == ctx.terms.top()) return "t";
      return "pro" + natpair(t.lo_n, t.hi_n);
    case TermKind::Item: return "item_" + t.lo_n.to_string() + "(" + sub(t.a) + ")";
    case TermKind::Items: return "items_" + t.lo_n.to_string() + "(" + sub(t.a) + ")";
    case TermKind::Cont: return "cont" + natpair(t.lo_n, t.hi_n) + "(" + sub(t.a) + ")";
    case TermKind::ContAfter: return "contAfter_" + t.lo_n.to_string() + "(" + sub(t.a) + ")";
    case TermKind::Type: return std::string("type(") + type_name(t.type) + ")";
    case TermKind::Var: return ctx.names.str(t.var);
    case TermKind::And: return "(" + sub(t.a) + " & " + sub(t.b) + ")";
    case TermKind::Or: return "(" + sub(t.a) + " | " + sub(t.b) + ")";
    case TermKind::Not: return "not(" + sub(t.a) + ")";
  }
  return "?";
}

std::string doc_to_string(const Context& ctx, const SchemaDoc& doc) {
  std::string out = "root: " + term_to_string(ctx, doc.root) + "\n";
  for (const auto& [x, body] : doc.env.defs) {
    out += ctx.names.str(x) + ": " + term_to_string(ctx, body) + "\n";
  }
  return out;
}

}  // namespace jsw
