#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "jsw/decimal.hpp"
#include "jsw/pattern.hpp"

namespace jsw {

using NameId = uint32_t;
using TermId = uint32_t;

class NameTable {
 public:
  NameId intern(std::string_view s);
  const std::string& str(NameId id) const { return names_[id]; }
  bool known(std::string_view s) const { return index_.count(std::string(s)) > 0; }
  // base, or base~2, base~3, ... until unused in `taken`
  std::string unique(const std::string& base, const std::unordered_map<NameId, uint32_t>& taken);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NameId> index_;
};

// Order matters: canonical per-type splits and witness search follow it.
enum class JsonType : uint8_t { Null, Bool, Str, Num, Obj, Arr };
const char* type_name(JsonType t);

enum class TermKind : uint8_t {
  Bot,          // f: satisfied by nothing
  IsBoolValue,  // bval
  Pattern,      // patt
  Betw,         // lo..hi inclusive
  XBetw,        // lo..hi exclusive
  MulOf,        // q
  NotMulOf,     // q
  Props,        // patt : child
  Req,          // key
  PattReq,      // patt : child
  Pro,          // lo_n..hi_n members
  Item,         // lo_n (>=1) : child
  Items,        // lo_n : child
  Cont,         // lo_n..hi_n : child
  ContAfter,    // lo_n : child
  Type,         // type
  Var,          // var
  And,          // a, b
  Or,           // a, b
  Not,          // a
};

struct Term {
  TermKind kind;
  bool bval = false;
  EereId patt = 0;
  ExtDecimal lo, hi;
  Decimal q;
  ExtNat lo_n, hi_n;
  JsonType type = JsonType::Null;
  NameId var = 0;
  TermId a = 0, b = 0;

  bool operator==(const Term& o) const;
};

// Hash-consed term arena: structurally equal terms share one id, which the
// GDNF set-of-sets representation and the ROBDD leaf mapping rely on.
class TermArena {
 public:
  TermArena();

  TermId bot() const { return 0; }
  TermId top() const { return top_; }  // pro_0^inf
  TermId is_bool(bool b);
  TermId pattern(EereId r);
  TermId betw(ExtDecimal lo, ExtDecimal hi);
  TermId xbetw(ExtDecimal lo, ExtDecimal hi);
  TermId mul_of(Decimal q);
  TermId not_mul_of(Decimal q);
  TermId props(EereId r, TermId s);
  TermId req(std::string_view key, NameTable& names);
  TermId patt_req(EereId r, TermId s);
  TermId pro(ExtNat lo, ExtNat hi);
  TermId item(uint64_t l, TermId s);
  TermId items(uint64_t i, TermId s);
  TermId cont(ExtNat lo, ExtNat hi, TermId s);
  TermId cont_after(uint64_t i, TermId s);
  TermId type(JsonType t);
  TermId var(NameId x);
  // simplifying builders: t and f are absorbed
  TermId conj(TermId a, TermId b);
  TermId disj(TermId a, TermId b);
  TermId neg(TermId a);

  const Term& node(TermId id) const { return nodes_[id]; }
  TermKind kind(TermId id) const { return nodes_[id].kind; }
  size_t size() const { return nodes_.size(); }

  bool is_ito(TermId id) const;
  bool is_to(TermId id) const { return is_ito(id) || kind(id) == TermKind::Type; }
  // type an ITO constrains (callable only on ITOs)
  JsonType ito_type(TermId id) const;

 private:
  TermId add(Term t);
  std::vector<Term> nodes_;
  std::unordered_map<std::string, TermId> memo_;
  TermId top_ = 0;
};

struct Environment {
  std::vector<std::pair<NameId, TermId>> defs;
  std::unordered_map<NameId, uint32_t> index;

  bool has(NameId x) const { return index.count(x) > 0; }
  TermId body(NameId x) const { return defs[index.at(x)].second; }
  void define(NameId x, TermId s);
  void set_body(NameId x, TermId s) { defs[index.at(x)].second = s; }
};

struct SchemaDoc {
  TermId root = 0;
  Environment env;
};

struct Context {
  uint64_t max_automaton_states = 1'000'000;
  bool minimize_dfas = false;
  std::optional<long long> deadline_ms;  // steady-clock epoch milliseconds

  NameTable names;
  PatternArena patterns;
  TermArena terms;
  DfaOps dfas{1'000'000};

  void set_state_budget(uint64_t b) {
    max_automaton_states = b;
    dfas = DfaOps(b);
  }
  void check_deadline() const;
  void set_deadline_after_ms(long long ms);

  bool matches(EereId r, const std::string& s);
};

// Closing check: every referenced variable defined. Throws UndefinedVariable.
void check_closing(const Context& ctx, const SchemaDoc& doc);
// True iff no cyclic chain of unguarded dependencies ("directly depends on").
bool check_guarded(const Context& ctx, const Environment& env);

// Debug serialization mirroring the algebra notation.
std::string term_to_string(const Context& ctx, TermId id);
std::string doc_to_string(const Context& ctx, const SchemaDoc& doc);

}  // namespace jsw
