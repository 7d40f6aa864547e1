#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jsw/json.hpp"
#include "jsw/pattern.hpp"

namespace jsw::test {

// Deterministic generator so every run sees the same sequence.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return next() % n; }
};

// Small value domain: all JSON values of depth <= max_depth built from a
// fixed atom set, fixed keys {a,b}, containers with <= 2 children.
inline std::vector<JsonValue> small_values(int max_depth) {
  std::vector<JsonValue> atoms = {
      JsonValue::null(),          JsonValue::boolean(true),  JsonValue::boolean(false),
      JsonValue::number(INT64_C(0)), JsonValue::number(INT64_C(1)), JsonValue::string("a"),
      JsonValue::string(""),
  };
  if (max_depth <= 1) return atoms;
  std::vector<JsonValue> inner = small_values(max_depth - 1);
  std::vector<JsonValue> out = atoms;
  out.push_back(JsonValue::object({}));
  out.push_back(JsonValue::array({}));
  for (const auto& x : inner) {
    out.push_back(JsonValue::object({{"a", x}}));
    out.push_back(JsonValue::array({x}));
  }
  // pairs only from atoms, to keep the domain small
  for (const auto& x : atoms) {
    for (const auto& y : atoms) {
      out.push_back(JsonValue::object({{"a", x}, {"b", y}}));
      out.push_back(JsonValue::array({x, y}));
    }
  }
  return out;
}

// Random JSON value of depth <= depth (used by fuzz oracles).
inline JsonValue random_value(Rng& rng, int depth) {
  uint64_t pick = rng.below(depth <= 1 ? 6 : 8);
  switch (pick) {
    case 0: return JsonValue::null();
    case 1: return JsonValue::boolean(rng.below(2) == 0);
    case 2: return JsonValue::number(static_cast<int64_t>(rng.below(21)) - 10);
    case 3: {
      Decimal d = Decimal::from_int(static_cast<int64_t>(rng.below(200)) - 100);
      d.exponent -= static_cast<int32_t>(rng.below(2));
      d.normalize();
      return JsonValue::number(d);
    }
    case 4: {
      static const char* words[] = {"", "a", "b", "ab", "abz", "z", "foo", "a.b"};
      return JsonValue::string(words[rng.below(8)]);
    }
    case 5: {
      static const char* words[] = {"x", "aa", "ba", "az", "bz", "12"};
      return JsonValue::string(words[rng.below(6)]);
    }
    case 6: {
      JsonValue::Array arr;
      uint64_t n = rng.below(4);
      for (uint64_t i = 0; i < n; ++i) arr.push_back(random_value(rng, depth - 1));
      return JsonValue::array(std::move(arr));
    }
    default: {
      JsonValue::Object obj;
      static const char* keys[] = {"a", "b", "foo", "abz", "k1", "z"};
      uint64_t n = rng.below(4);
      for (uint64_t i = 0; i < n; ++i) obj[keys[rng.below(6)]] = random_value(rng, depth - 1);
      return JsonValue::object(std::move(obj));
    }
  }
}

// Reference matcher for basic REs (no external operators), exponential but
// only used against the compiled automaton on tiny inputs.
inline bool re_match_oracle(const PatternArena& arena, EereId id, const std::u32string& w,
                            size_t from, size_t to) {
  const ReNode& n = arena.node(id);
  switch (n.kind) {
    case ReKind::Never: return false;
    case ReKind::Epsilon: return from == to;
    case ReKind::CharSet:
      return to == from + 1 && alphabet::contains(n.ranges, static_cast<uint32_t>(w[from]));
    case ReKind::Concat:
      for (size_t mid = from; mid <= to; ++mid) {
        if (re_match_oracle(arena, n.left, w, from, mid) &&
            re_match_oracle(arena, n.right, w, mid, to)) {
          return true;
        }
      }
      return false;
    case ReKind::Union:
      return re_match_oracle(arena, n.left, w, from, to) ||
             re_match_oracle(arena, n.right, w, from, to);
    case ReKind::Repeat: {
      // match k copies, min <= k <= max
      auto rec = [&](auto&& self, size_t pos, uint32_t done) -> bool {
        if (done >= n.min && pos == to) return true;
        if (n.max != kRepInf && done == n.max) return false;
        for (size_t mid = pos; mid <= to; ++mid) {
          if (mid == pos && arena.node(n.left).kind != ReKind::Epsilon && done >= n.min && false) {}
          if (re_match_oracle(arena, n.left, w, pos, mid)) {
            if (mid == pos && done + 1 > w.size() + n.min + 1) return false;  // epsilon loop guard
            if (self(self, mid, done + 1)) return true;
          }
        }
        return false;
      };
      return rec(rec, from, 0);
    }
    case ReKind::Complement:
    case ReKind::Intersect: return false;  // not used by the oracle
  }
  return false;
}

inline bool re_match_oracle(const PatternArena& arena, EereId id, const std::u32string& w) {
  return re_match_oracle(arena, id, w, 0, w.size());
}

// All words of length <= max_len over the given alphabet.
inline std::vector<std::u32string> all_words(const std::u32string& sigma, size_t max_len) {
  std::vector<std::u32string> out{U""};
  size_t begin = 0;
  for (size_t len = 1; len <= max_len; ++len) {
    size_t end = out.size();
    for (size_t i = begin; i < end; ++i) {
      for (char32_t c : sigma) out.push_back(out[i] + std::u32string(1, c));
    }
    begin = end;
  }
  return out;
}

}  // namespace jsw::test
