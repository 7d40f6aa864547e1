#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jsw {

// Arbitrary-precision unsigned integer, little-endian base-1e9 limbs.
struct BigUint {
  static constexpr uint32_t kBase = 1000000000u;
  std::vector<uint32_t> limb;

  BigUint() = default;
  static BigUint from_u64(uint64_t v);
  static BigUint from_digits(std::string_view digits);

  bool is_zero() const { return limb.empty(); }
  void trim();

  static int cmp(const BigUint& a, const BigUint& b);
  static BigUint add(const BigUint& a, const BigUint& b);
  static BigUint sub(const BigUint& a, const BigUint& b);  // requires a >= b
  static BigUint mul(const BigUint& a, const BigUint& b);
  // quotient/remainder; b must be nonzero
  static std::pair<BigUint, BigUint> divmod(const BigUint& a, const BigUint& b);
  static BigUint gcd(BigUint a, BigUint b);

  BigUint mul_pow10(uint32_t k) const;
  bool divisible_by_10() const;
  BigUint div10() const;

  std::optional<uint64_t> to_u64() const;
  std::string to_string() const;  // decimal digits, no sign
};

// Exact decimal: value = (negative ? -1 : +1) * magnitude * 10^exponent.
// Normalized: magnitude has no trailing decimal zeros; zero has exponent 0
// and negative=false.
struct Decimal {
  bool negative = false;
  BigUint magnitude;
  int32_t exponent = 0;

  Decimal() = default;
  static Decimal from_int(int64_t v);
  // Parses a JSON number (RFC 8259 grammar).
  static Decimal parse(std::string_view text);

  bool is_zero() const { return magnitude.is_zero(); }
  bool is_integer() const;  // integral value (exponent >= 0 after normalization)
  Decimal negated() const;
  Decimal abs() const;
  void normalize();

  static int cmp(const Decimal& a, const Decimal& b);
  static Decimal add(const Decimal& a, const Decimal& b);
  static Decimal sub(const Decimal& a, const Decimal& b);
  static Decimal mul(const Decimal& a, const Decimal& b);

  // True iff a = i*q for some integer i. q = 0 means a must be 0.
  static bool is_multiple_of(const Decimal& a, const Decimal& q);
  // Least common "multiple" of two positive decimals: smallest positive d
  // with is_multiple_of(d, a) and is_multiple_of(d, b).
  static Decimal lcm(const Decimal& a, const Decimal& b);
  // Smallest integer k (as a Decimal) with k >= a / b; b > 0.
  static Decimal ceil_div(const Decimal& a, const Decimal& b);

  bool operator==(const Decimal& o) const { return cmp(*this, o) == 0; }
  bool operator<(const Decimal& o) const { return cmp(*this, o) < 0; }
  bool operator<=(const Decimal& o) const { return cmp(*this, o) <= 0; }

  // Round-trippable text: plain notation for small adjusted exponents,
  // scientific otherwise.
  std::string to_string() const;
};

// Decimal extended with -inf / +inf, used for interval bounds.
struct ExtDecimal {
  enum class Kind : uint8_t { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Decimal value;

  static ExtDecimal neg_inf() { return {Kind::NegInf, {}}; }
  static ExtDecimal pos_inf() { return {Kind::PosInf, {}}; }
  static ExtDecimal finite(Decimal d) { return {Kind::Finite, std::move(d)}; }

  bool is_finite() const { return kind == Kind::Finite; }
  static int cmp(const ExtDecimal& a, const ExtDecimal& b);
  bool operator==(const ExtDecimal& o) const { return cmp(*this, o) == 0; }
  std::string to_string() const;
};

// Natural number with infinity, used for occurrence bounds (pro, cont, ...).
struct ExtNat {
  static constexpr uint64_t kInf = UINT64_MAX;
  uint64_t v = 0;

  ExtNat() = default;
  explicit ExtNat(uint64_t n) : v(n) {}
  static ExtNat inf() { return ExtNat(kInf); }
  bool is_inf() const { return v == kInf; }
  bool operator==(const ExtNat& o) const = default;
  std::string to_string() const { return is_inf() ? "inf" : std::to_string(v); }
};

// Deterministic primality (Miller-Rabin with fixed bases, exact for u64).
bool is_prime_u64(uint64_t n);

}  // namespace jsw
