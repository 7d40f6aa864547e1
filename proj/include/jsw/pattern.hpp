#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "jsw/json.hpp"

namespace jsw {

// Inclusive codepoint interval.
struct CpRange {
  uint32_t lo = 0;
  uint32_t hi = 0;
  bool operator==(const CpRange&) const = default;
};

// The alphabet is the set of Unicode scalar values (surrogates excluded,
// since witnesses must serialize as JSON text).
namespace alphabet {
constexpr uint32_t kMaxCp = 0x10FFFF;
constexpr uint32_t kSurrLo = 0xD800;
constexpr uint32_t kSurrHi = 0xDFFF;
std::vector<CpRange> full();
std::vector<CpRange> normalize(std::vector<CpRange> ranges);      // sort, merge, drop surrogates
std::vector<CpRange> complement(const std::vector<CpRange>& rs);  // relative to full()
std::vector<CpRange> intersect(const std::vector<CpRange>& a, const std::vector<CpRange>& b);
bool contains(const std::vector<CpRange>& rs, uint32_t cp);
}  // namespace alphabet

enum class ReKind : uint8_t {
  Never,       // empty language
  Epsilon,     // {""}
  CharSet,     // one codepoint from `ranges`
  Concat,      // left . right
  Union,       // left | right
  Repeat,      // left{min,max}; max == kRepInf means unbounded
  Complement,  // external complement
  Intersect,   // external intersection
};

constexpr uint32_t kRepInf = UINT32_MAX;

using EereId = uint32_t;

struct ReNode {
  ReKind kind;
  EereId left = 0;
  EereId right = 0;
  uint32_t min = 0, max = 0;     // Repeat
  std::vector<CpRange> ranges;   // CharSet
};

enum class Anchoring { Anchored, Unanchored };

// Hash-consed EERE arena. Complement/Intersect never occur below
// Concat/Union/Repeat (external-only extension); the parser and builders
// keep that invariant.
class PatternArena {
 public:
  PatternArena();

  EereId never();
  EereId epsilon();
  EereId charset(std::vector<CpRange> ranges);
  EereId any();  // full alphabet
  EereId concat(EereId a, EereId b);
  EereId alt(EereId a, EereId b);
  EereId repeat(EereId a, uint32_t min, uint32_t max);
  EereId star(EereId a) { return repeat(a, 0, kRepInf); }
  EereId complement(EereId a);
  EereId intersect(EereId a, EereId b);

  // Language {k} exactly.
  EereId exact(std::string_view k);
  // ECMA-262 subset; Unanchored gives JSON Schema search semantics
  // (language Sigma* L Sigma* with ^/$ honored at the extremes).
  EereId parse(std::string_view src, Anchoring anchoring);

  const ReNode& node(EereId id) const { return nodes_[id]; }
  size_t size(EereId id) const;       // AST node count
  std::string to_string(EereId id) const;  // debug form

 private:
  EereId add(ReNode n);
  std::vector<ReNode> nodes_;
  std::unordered_map<std::string, EereId> memo_;
};

// Deterministic, complete automaton over the scalar-value alphabet.
// Transitions per state are sorted disjoint ranges covering the alphabet.
struct Dfa {
  struct Edge {
    CpRange range;
    uint32_t to;
  };
  std::vector<std::vector<Edge>> trans;
  std::vector<bool> accepting;
  uint32_t initial = 0;

  uint32_t state_count() const { return static_cast<uint32_t>(trans.size()); }
  uint32_t step(uint32_t state, uint32_t cp) const;
  bool accepts(const std::u32string& word) const;
};

struct EnumerationResult {
  bool impossible = false;             // |L| < requested count
  std::vector<std::u32string> words;   // shortest-first, preferred-lex order
};

class DfaOps {
 public:
  explicit DfaOps(uint64_t state_budget) : budget_(state_budget) {}

  std::shared_ptr<const Dfa> compile(const PatternArena& arena, EereId id);
  static bool is_empty(const Dfa& d);
  // i distinct language members in canonical order, or impossible.
  EnumerationResult enumerate(const Dfa& d, uint64_t i) const;
  bool has_at_least(const Dfa& d, uint64_t n) const;
  std::shared_ptr<const Dfa> product(const Dfa& a, const Dfa& b, bool a_and_b) const;
  static Dfa complement_of(Dfa d);
  static Dfa minimize(const Dfa& d);
  static std::string to_dot(const Dfa& d);

  uint64_t budget() const { return budget_; }

 private:
  Dfa compile_uncached(const PatternArena& arena, EereId id) const;
  uint64_t budget_;
  std::unordered_map<EereId, std::shared_ptr<const Dfa>> cache_;
};

// Canonical word order used everywhere a representative string is chosen:
// shortest first, then per-position symbol preference (lowercase, uppercase,
// digits, other printable ASCII, remaining codepoints ascending).
uint32_t symbol_rank(uint32_t cp);

}  // namespace jsw
