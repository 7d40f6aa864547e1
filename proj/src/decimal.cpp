#include "jsw/decimal.hpp"

#include <algorithm>
#include <cassert>

#include "jsw/error.hpp"

namespace jsw {

namespace {
// Alignment guard: refuse to materialize more than this many extra digits.
constexpr int64_t kMaxShiftDigits = 200000;

void check_shift(int64_t digits) {
  if (digits > kMaxShiftDigits) {
    throw Error(ErrorCode::NumberTooLarge, "decimal exponent spread too large");
  }
}
}  // namespace

BigUint BigUint::from_u64(uint64_t v) {
  BigUint n;
  while (v) {
    n.limb.push_back(static_cast<uint32_t>(v % kBase));
    v /= kBase;
  }
  return n;
}

BigUint BigUint::from_digits(std::string_view digits) {
  BigUint n;
  for (char c : digits) {
    assert(c >= '0' && c <= '9');
    uint64_t carry = static_cast<uint64_t>(c - '0');
    for (auto& x : n.limb) {
      uint64_t cur = static_cast<uint64_t>(x) * 10 + carry;
      x = static_cast<uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
    while (carry) {
      n.limb.push_back(static_cast<uint32_t>(carry % kBase));
      carry /= kBase;
    }
  }
  n.trim();
  return n;
}

void BigUint::trim() {
  while (!limb.empty() && limb.back() == 0) limb.pop_back();
}

int BigUint::cmp(const BigUint& a, const BigUint& b) {
  if (a.limb.size() != b.limb.size()) return a.limb.size() < b.limb.size() ? -1 : 1;
  for (size_t i = a.limb.size(); i-- > 0;) {
    if (a.limb[i] != b.limb[i]) return a.limb[i] < b.limb[i] ? -1 : 1;
  }
  return 0;
}

BigUint BigUint::add(const BigUint& a, const BigUint& b) {
  BigUint r;
  r.limb.resize(std::max(a.limb.size(), b.limb.size()) + 1, 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < r.limb.size(); ++i) {
    uint64_t cur = carry;
    if (i < a.limb.size()) cur += a.limb[i];
    if (i < b.limb.size()) cur += b.limb[i];
    r.limb[i] = static_cast<uint32_t>(cur % kBase);
    carry = cur / kBase;
  }
  r.trim();
  return r;
}

BigUint BigUint::sub(const BigUint& a, const BigUint& b) {
  assert(cmp(a, b) >= 0);
  BigUint r;
  r.limb.resize(a.limb.size(), 0);
  int64_t borrow = 0;
  for (size_t i = 0; i < a.limb.size(); ++i) {
    int64_t cur = static_cast<int64_t>(a.limb[i]) - borrow - (i < b.limb.size() ? b.limb[i] : 0);
    if (cur < 0) {
      cur += kBase;
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.limb[i] = static_cast<uint32_t>(cur);
  }
  r.trim();
  return r;
}

BigUint BigUint::mul(const BigUint& a, const BigUint& b) {
  if (a.is_zero() || b.is_zero()) return {};
  BigUint r;
  r.limb.assign(a.limb.size() + b.limb.size(), 0);
  for (size_t i = 0; i < a.limb.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.limb.size(); ++j) {
      uint64_t cur = static_cast<uint64_t>(a.limb[i]) * b.limb[j] + r.limb[i + j] + carry;
      r.limb[i + j] = static_cast<uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
    size_t k = i + b.limb.size();
    while (carry) {
      uint64_t cur = r.limb[k] + carry;
      r.limb[k] = static_cast<uint32_t>(cur % kBase);
      carry = cur / kBase;
      ++k;
    }
  }
  r.trim();
  return r;
}

std::pair<BigUint, BigUint> BigUint::divmod(const BigUint& a, const BigUint& b) {
  if (b.is_zero()) throw Error(ErrorCode::Internal, "division by zero");
  if (cmp(a, b) < 0) return {BigUint{}, a};
  if (b.limb.size() == 1) {
    BigUint q;
    q.limb.resize(a.limb.size(), 0);
    uint64_t rem = 0;
    uint32_t d = b.limb[0];
    for (size_t i = a.limb.size(); i-- > 0;) {
      uint64_t cur = rem * kBase + a.limb[i];
      q.limb[i] = static_cast<uint32_t>(cur / d);
      rem = cur % d;
    }
    q.trim();
    return {q, BigUint::from_u64(rem)};
  }
  // Schoolbook long division, one base-1e9 digit at a time with binary
  // search for the quotient digit.
  BigUint q, rem;
  q.limb.resize(a.limb.size(), 0);
  for (size_t i = a.limb.size(); i-- > 0;) {
    rem.limb.insert(rem.limb.begin(), a.limb[i]);
    rem.trim();
    uint32_t lo = 0, hi = kBase - 1, digit = 0;
    while (lo <= hi) {
      uint32_t mid = lo + (hi - lo) / 2;
      BigUint t = mul(b, from_u64(mid));
      if (cmp(t, rem) <= 0) {
        digit = mid;
        lo = mid + 1;
      } else {
        if (mid == 0) break;
        hi = mid - 1;
      }
    }
    if (digit) rem = sub(rem, mul(b, from_u64(digit)));
    q.limb[i] = digit;
  }
  q.trim();
  return {q, rem};
}

BigUint BigUint::gcd(BigUint a, BigUint b) {
  while (!b.is_zero()) {
    BigUint r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigUint BigUint::mul_pow10(uint32_t k) const {
  if (is_zero() || k == 0) return *this;
  check_shift(k);
  BigUint r = *this;
  // Shift whole limbs for multiples of 9 digits, then the remainder.
  uint32_t whole = k / 9, restd = k % 9;
  if (restd) {
    uint32_t f = 1;
    for (uint32_t i = 0; i < restd; ++i) f *= 10;
    uint64_t carry = 0;
    for (auto& x : r.limb) {
      uint64_t cur = static_cast<uint64_t>(x) * f + carry;
      x = static_cast<uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
    if (carry) r.limb.push_back(static_cast<uint32_t>(carry));
  }
  if (whole) r.limb.insert(r.limb.begin(), whole, 0);
  return r;
}

bool BigUint::divisible_by_10() const { return !is_zero() && limb[0] % 10 == 0; }

BigUint BigUint::div10() const {
  BigUint r = *this;
  uint64_t rem = 0;
  for (size_t i = r.limb.size(); i-- > 0;) {
    uint64_t cur = rem * kBase + r.limb[i];
    r.limb[i] = static_cast<uint32_t>(cur / 10);
    rem = cur % 10;
  }
  r.trim();
  return r;
}

std::optional<uint64_t> BigUint::to_u64() const {
  if (limb.size() > 3) return std::nullopt;
  unsigned __int128 v = 0;
  for (size_t i = limb.size(); i-- > 0;) v = v * kBase + limb[i];
  if (v > UINT64_MAX) return std::nullopt;
  return static_cast<uint64_t>(v);
}

std::string BigUint::to_string() const {
  if (is_zero()) return "0";
  std::string s = std::to_string(limb.back());
  for (size_t i = limb.size() - 1; i-- > 0;) {
    std::string part = std::to_string(limb[i]);
    s += std::string(9 - part.size(), '0') + part;
  }
  return s;
}

Decimal Decimal::from_int(int64_t v) {
  Decimal d;
  d.negative = v < 0;
  d.magnitude = BigUint::from_u64(d.negative ? -static_cast<uint64_t>(v) : static_cast<uint64_t>(v));
  d.normalize();
  return d;
}

Decimal Decimal::parse(std::string_view text) {
  size_t i = 0;
  auto fail = [&] { throw Error(ErrorCode::ParseError, "invalid number: " + std::string(text)); };
  Decimal d;
  if (i < text.size() && text[i] == '-') {
    d.negative = true;
    ++i;
  }
  std::string digits;
  if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i]))) fail();
  if (text[i] == '0') {
    digits += '0';
    ++i;
  } else {
    while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
  }
  int64_t exp = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    size_t start = i;
    while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
    if (i == start) fail();
    exp -= static_cast<int64_t>(i - start);
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    size_t start = i;
    int64_t e = 0;
    while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
      e = e * 10 + (text[i++] - '0');
      if (e > kMaxShiftDigits) throw Error(ErrorCode::NumberTooLarge, "exponent too large");
    }
    if (i == start) fail();
    exp += eneg ? -e : e;
  }
  if (i != text.size()) fail();
  if (exp < INT32_MIN || exp > INT32_MAX) throw Error(ErrorCode::NumberTooLarge, "exponent too large");
  d.magnitude = BigUint::from_digits(digits);
  d.exponent = static_cast<int32_t>(exp);
  d.normalize();
  return d;
}

void Decimal::normalize() {
  if (magnitude.is_zero()) {
    negative = false;
    exponent = 0;
    return;
  }
  while (magnitude.divisible_by_10()) {
    magnitude = magnitude.div10();
    ++exponent;
  }
}

bool Decimal::is_integer() const { return is_zero() || exponent >= 0; }

Decimal Decimal::negated() const {
  Decimal d = *this;
  if (!d.is_zero()) d.negative = !d.negative;
  return d;
}

Decimal Decimal::abs() const {
  Decimal d = *this;
  d.negative = false;
  return d;
}

namespace {
// Returns magnitudes scaled to the common (minimum) exponent.
std::pair<BigUint, BigUint> aligned(const Decimal& a, const Decimal& b) {
  int64_t e = std::min(a.exponent, b.exponent);
  check_shift(a.exponent - e);
  check_shift(b.exponent - e);
  return {a.magnitude.mul_pow10(static_cast<uint32_t>(a.exponent - e)),
          b.magnitude.mul_pow10(static_cast<uint32_t>(b.exponent - e))};
}
}  // namespace

int Decimal::cmp(const Decimal& a, const Decimal& b) {
  if (a.is_zero() && b.is_zero()) return 0;
  if (a.negative != b.negative) return a.negative ? -1 : 1;
  auto [ma, mb] = aligned(a, b);
  int c = BigUint::cmp(ma, mb);
  return a.negative ? -c : c;
}

Decimal Decimal::add(const Decimal& a, const Decimal& b) {
  auto [ma, mb] = aligned(a, b);
  int32_t e = std::min(a.exponent, b.exponent);
  Decimal r;
  r.exponent = e;
  if (a.negative == b.negative) {
    r.negative = a.negative;
    r.magnitude = BigUint::add(ma, mb);
  } else if (BigUint::cmp(ma, mb) >= 0) {
    r.negative = a.negative;
    r.magnitude = BigUint::sub(ma, mb);
  } else {
    r.negative = b.negative;
    r.magnitude = BigUint::sub(mb, ma);
  }
  r.normalize();
  return r;
}

Decimal Decimal::sub(const Decimal& a, const Decimal& b) { return add(a, b.negated()); }

Decimal Decimal::mul(const Decimal& a, const Decimal& b) {
  Decimal r;
  r.negative = a.negative != b.negative;
  r.magnitude = BigUint::mul(a.magnitude, b.magnitude);
  int64_t e = static_cast<int64_t>(a.exponent) + b.exponent;
  if (e < INT32_MIN || e > INT32_MAX) throw Error(ErrorCode::NumberTooLarge, "exponent overflow");
  r.exponent = static_cast<int32_t>(e);
  r.normalize();
  return r;
}

bool Decimal::is_multiple_of(const Decimal& a, const Decimal& q) {
  if (q.is_zero()) return a.is_zero();
  if (a.is_zero()) return true;
  auto [ma, mq] = aligned(a, q);
  return BigUint::divmod(ma, mq).second.is_zero();
}

Decimal Decimal::lcm(const Decimal& a, const Decimal& b) {
  if (a.is_zero() || b.is_zero()) return Decimal{};
  auto [ma, mb] = aligned(a.abs(), b.abs());
  BigUint g = BigUint::gcd(ma, mb);
  Decimal r;
  r.magnitude = BigUint::mul(BigUint::divmod(ma, g).first, mb);
  r.exponent = std::min(a.exponent, b.exponent);
  r.normalize();
  return r;
}

Decimal Decimal::ceil_div(const Decimal& a, const Decimal& b) {
  assert(!b.is_zero() && !b.negative);
  auto [ma, mb] = aligned(a, b);
  auto [q, rem] = BigUint::divmod(ma, mb);
  Decimal r;
  r.magnitude = q;
  if (!a.negative && !rem.is_zero()) r.magnitude = BigUint::add(q, BigUint::from_u64(1));
  r.negative = a.negative && !r.magnitude.is_zero();
  r.normalize();
  return r;
}

std::string Decimal::to_string() const {
  if (is_zero()) return "0";
  std::string digits = magnitude.to_string();
  int64_t adj = exponent + static_cast<int64_t>(digits.size());  // position of decimal point
  std::string out;
  if (negative) out += '-';
  if (exponent >= 0 && adj <= 21) {
    out += digits;
    out += std::string(exponent, '0');
  } else if (exponent < 0 && adj > 0 && adj <= 21) {
    out += digits.substr(0, adj) + "." + digits.substr(adj);
  } else if (exponent < 0 && adj <= 0 && adj > -6) {
    out += "0." + std::string(-adj, '0') + digits;
  } else {
    // scientific: d.ddd e (adj-1)
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(adj - 1);
  }
  return out;
}

int ExtDecimal::cmp(const ExtDecimal& a, const ExtDecimal& b) {
  auto rank = [](const ExtDecimal& x) { return x.kind == Kind::NegInf ? -1 : x.kind == Kind::PosInf ? 1 : 0; };
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra != 0) return 0;
  return Decimal::cmp(a.value, b.value);
}

std::string ExtDecimal::to_string() const {
  switch (kind) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    case Kind::Finite: return value.to_string();
  }
  return "?";
}

namespace {
uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}
}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit integers.
  for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    uint64_t x = powmod_u64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace jsw
