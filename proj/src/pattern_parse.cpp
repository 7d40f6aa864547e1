#include <algorithm>
#include <cassert>

#include "jsw/error.hpp"
#include "jsw/pattern.hpp"

namespace jsw {

namespace alphabet {

std::vector<CpRange> full() { return {{0, kSurrLo - 1}, {kSurrHi + 1, kMaxCp}}; }

std::vector<CpRange> normalize(std::vector<CpRange> ranges) {
  std::vector<CpRange> in;
  for (auto r : ranges) {
    if (r.lo > r.hi || r.lo > kMaxCp) continue;
    r.hi = std::min(r.hi, kMaxCp);
    // carve out the surrogate block
    if (r.hi < kSurrLo || r.lo > kSurrHi) {
      in.push_back(r);
    } else {
      if (r.lo < kSurrLo) in.push_back({r.lo, kSurrLo - 1});
      if (r.hi > kSurrHi) in.push_back({kSurrHi + 1, r.hi});
    }
  }
  std::sort(in.begin(), in.end(), [](const CpRange& a, const CpRange& b) { return a.lo < b.lo; });
  std::vector<CpRange> out;
  for (auto r : in) {
    if (!out.empty() && r.lo <= out.back().hi + 1 && out.back().hi + 1 != 0) {
      out.back().hi = std::max(out.back().hi, r.hi);
    } else {
      out.push_back(r);
    }
  }
  return out;
}

std::vector<CpRange> complement(const std::vector<CpRange>& rs) {
  std::vector<CpRange> out;
  uint32_t next = 0;
  for (const auto& r : rs) {
    if (r.lo > next) out.push_back({next, r.lo - 1});
    next = r.hi + 1;
    if (next == 0) return normalize(std::move(out));  // wrapped past max
  }
  if (next <= kMaxCp) out.push_back({next, kMaxCp});
  return normalize(std::move(out));
}

std::vector<CpRange> intersect(const std::vector<CpRange>& a, const std::vector<CpRange>& b) {
  std::vector<CpRange> out;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    uint32_t lo = std::max(a[i].lo, b[j].lo);
    uint32_t hi = std::min(a[i].hi, b[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) ++i;
    else ++j;
  }
  return out;
}

bool contains(const std::vector<CpRange>& rs, uint32_t cp) {
  auto it = std::upper_bound(rs.begin(), rs.end(), cp,
                             [](uint32_t v, const CpRange& r) { return v < r.lo; });
  return it != rs.begin() && cp <= std::prev(it)->hi;
}

}  // namespace alphabet

namespace {

std::string key_of(const ReNode& n) {
  std::string k;
  k += static_cast<char>('A' + static_cast<int>(n.kind));
  auto num = [&](uint32_t v) { k += std::to_string(v); k += ','; };
  num(n.left);
  num(n.right);
  num(n.min);
  num(n.max);
  for (const auto& r : n.ranges) {
    num(r.lo);
    num(r.hi);
  }
  return k;
}

}  // namespace

PatternArena::PatternArena() {
  nodes_.push_back({ReKind::Never, 0, 0, 0, 0, {}});
  memo_[key_of(nodes_[0])] = 0;
}

EereId PatternArena::add(ReNode n) {
  std::string k = key_of(n);
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  EereId id = static_cast<EereId>(nodes_.size());
  nodes_.push_back(std::move(n));
  memo_.emplace(std::move(k), id);
  return id;
}

EereId PatternArena::never() { return 0; }
EereId PatternArena::epsilon() { return add({ReKind::Epsilon, 0, 0, 0, 0, {}}); }

EereId PatternArena::charset(std::vector<CpRange> ranges) {
  auto norm = alphabet::normalize(std::move(ranges));
  if (norm.empty()) return never();
  return add({ReKind::CharSet, 0, 0, 0, 0, std::move(norm)});
}

EereId PatternArena::any() { return charset(alphabet::full()); }

EereId PatternArena::concat(EereId a, EereId b) {
  if (node(a).kind == ReKind::Never || node(b).kind == ReKind::Never) return never();
  if (node(a).kind == ReKind::Epsilon) return b;
  if (node(b).kind == ReKind::Epsilon) return a;
  return add({ReKind::Concat, a, b, 0, 0, {}});
}

EereId PatternArena::alt(EereId a, EereId b) {
  if (node(a).kind == ReKind::Never) return b;
  if (node(b).kind == ReKind::Never || a == b) return a;
  return add({ReKind::Union, a, b, 0, 0, {}});
}

EereId PatternArena::repeat(EereId a, uint32_t min, uint32_t max) {
  if (min == 1 && max == 1) return a;
  if (max == 0) return epsilon();
  if (node(a).kind == ReKind::Epsilon) return a;
  if (node(a).kind == ReKind::Never) return min == 0 ? epsilon() : never();
  return add({ReKind::Repeat, a, 0, min, max, {}});
}

EereId PatternArena::complement(EereId a) {
  if (node(a).kind == ReKind::Complement) return node(a).left;
  return add({ReKind::Complement, a, 0, 0, 0, {}});
}

EereId PatternArena::intersect(EereId a, EereId b) {
  if (a == b) return a;
  if (node(a).kind == ReKind::Never || node(b).kind == ReKind::Never) return never();
  if (a > b) std::swap(a, b);
  return add({ReKind::Intersect, a, b, 0, 0, {}});
}

EereId PatternArena::exact(std::string_view k) {
  EereId r = epsilon();
  for (char32_t cp : utf8_to_codepoints(k)) {
    r = concat(r, charset({{static_cast<uint32_t>(cp), static_cast<uint32_t>(cp)}}));
  }
  return r;
}

size_t PatternArena::size(EereId id) const {
  const ReNode& n = node(id);
  switch (n.kind) {
    case ReKind::Never:
    case ReKind::Epsilon:
    case ReKind::CharSet: return 1;
    case ReKind::Repeat:
    case ReKind::Complement: return 1 + size(n.left);
    case ReKind::Concat:
    case ReKind::Union:
    case ReKind::Intersect: return 1 + size(n.left) + size(n.right);
  }
  return 1;
}

namespace {

// ECMA-262 pattern subset parser producing basic RE nodes.
class EcmaParser {
 public:
  EcmaParser(PatternArena& arena, std::u32string src) : arena_(arena), src_(std::move(src)) {}

  struct Piece {
    EereId re;
    bool anchored_start = false;
    bool anchored_end = false;
  };

  // Top-level alternation with per-alternative anchor handling.
  EereId parse_top(Anchoring anchoring) {
    EereId result = arena_.never();
    bool first = true;
    EereId acc = arena_.never();
    while (true) {
      Piece p = parse_alternative_top();
      EereId wrapped = wrap(p, anchoring);
      acc = first ? wrapped : arena_.alt(acc, wrapped);
      first = false;
      if (eof()) break;
      expect('|');
      if (eof()) {  // trailing '|' means empty alternative
        acc = arena_.alt(acc, wrap({arena_.epsilon(), false, false}, anchoring));
        break;
      }
    }
    result = acc;
    return result;
  }

 private:
  EereId wrap(const Piece& p, Anchoring anchoring) {
    if (anchoring == Anchoring::Anchored) {
      if (p.anchored_start || p.anchored_end) {
        fail("anchors are not allowed in anchored patterns");
      }
      return p.re;
    }
    EereId r = p.re;
    if (!p.anchored_start) r = arena_.concat(arena_.star(arena_.any()), r);
    if (!p.anchored_end) r = arena_.concat(r, arena_.star(arena_.any()));
    return r;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::UnsupportedPattern, "pattern: " + msg);
  }

  bool eof() const { return pos_ >= src_.size(); }
  char32_t peek() const { return src_[pos_]; }
  bool consume(char32_t c) {
    if (!eof() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char32_t c) {
    if (!consume(c)) fail("unexpected character");
  }

  // An alternative at top level: leading ^ / trailing $ recognized; inner
  // anchors are unsupported (they would need position tracking).
  Piece parse_alternative_top() {
    Piece p;
    p.anchored_start = consume('^');
    p.re = arena_.epsilon();
    while (!eof() && peek() != '|') {
      if (peek() == '$') {
        ++pos_;
        if (!eof() && peek() != '|') fail("'$' in the middle of an alternative");
        p.anchored_end = true;
        break;
      }
      if (peek() == '^') fail("'^' in the middle of an alternative");
      p.re = arena_.concat(p.re, parse_piece());
    }
    return p;
  }

  // Inside groups: no anchors.
  EereId parse_disjunction() {
    EereId r = parse_sequence();
    while (consume('|')) r = arena_.alt(r, parse_sequence());
    return r;
  }

  EereId parse_sequence() {
    EereId r = arena_.epsilon();
    while (!eof() && peek() != '|' && peek() != ')') {
      if (peek() == '^' || peek() == '$') fail("anchor inside a group");
      r = arena_.concat(r, parse_piece());
    }
    return r;
  }

  EereId parse_piece() {
    EereId atom = parse_atom();
    return parse_quantifier(atom);
  }

  EereId parse_quantifier(EereId atom) {
    if (eof()) return atom;
    uint32_t min = 0, max = 0;
    switch (peek()) {
      case '*': ++pos_; min = 0; max = kRepInf; break;
      case '+': ++pos_; min = 1; max = kRepInf; break;
      case '?': ++pos_; min = 0; max = 1; break;
      case '{': {
        size_t save = pos_;
        ++pos_;
        auto digits = [&]() -> std::optional<uint32_t> {
          if (eof() || peek() < '0' || peek() > '9') return std::nullopt;
          uint64_t v = 0;
          while (!eof() && peek() >= '0' && peek() <= '9') {
            v = v * 10 + (peek() - '0');
            if (v > 1000000) fail("repetition bound too large");
            ++pos_;
          }
          return static_cast<uint32_t>(v);
        };
        auto m = digits();
        if (!m) {  // '{' not starting a quantifier: literal brace
          pos_ = save;
          return atom;
        }
        min = *m;
        max = min;
        if (consume(',')) {
          auto n = digits();
          max = n ? *n : kRepInf;
        }
        if (!consume('}')) {
          pos_ = save;
          return atom;
        }
        if (max != kRepInf && max < min) fail("invalid repetition bounds");
        break;
      }
      default: return atom;
    }
    if (consume('?')) {
      // lazy quantifiers do not change the language
    }
    return arena_.repeat(atom, min, max);
  }

  EereId parse_atom() {
    char32_t c = peek();
    switch (c) {
      case '(': {
        ++pos_;
        if (consume('?')) {
          if (consume(':')) {
            // non-capturing
          } else if (!eof() && (peek() == '=' || peek() == '!')) {
            fail("look-ahead is not supported");
          } else if (consume('<')) {
            if (!eof() && (peek() == '=' || peek() == '!')) fail("look-behind is not supported");
            // named group: skip the name
            while (!eof() && peek() != '>') ++pos_;
            expect('>');
          } else {
            fail("unsupported group modifier");
          }
        }
        EereId r = parse_disjunction();
        expect(')');
        return r;
      }
      case '[': return parse_class();
      case '.': ++pos_; return dot();
      case '\\': return parse_escape_atom();
      case '*':
      case '+':
      case '?': fail("quantifier without operand");
      case ')': fail("unbalanced ')'");
      default: ++pos_; return arena_.charset({{static_cast<uint32_t>(c), static_cast<uint32_t>(c)}});
    }
  }

  // ECMA '.', excludes line terminators.
  EereId dot() {
    std::vector<CpRange> excl = {{'\n', '\n'}, {'\r', '\r'}, {0x2028, 0x2029}};
    return arena_.charset(alphabet::complement(alphabet::normalize(std::move(excl))));
  }

  static std::vector<CpRange> class_digits() { return {{'0', '9'}}; }
  static std::vector<CpRange> class_word() { return {{'0', '9'}, {'A', 'Z'}, {'_', '_'}, {'a', 'z'}}; }
  static std::vector<CpRange> class_space() {
    return {{'\t', '\r'}, {' ', ' '}, {0x00A0, 0x00A0}, {0x1680, 0x1680}, {0x2000, 0x200A},
            {0x2028, 0x2029}, {0x202F, 0x202F}, {0x205F, 0x205F}, {0x3000, 0x3000}, {0xFEFF, 0xFEFF}};
  }

  uint32_t parse_hex(int n) {
    uint32_t v = 0;
    for (int i = 0; i < n; ++i) {
      if (eof()) fail("truncated escape");
      char32_t c = src_[pos_++];
      v <<= 4;
      if (c >= '0' && c <= '9') v |= c - '0';
      else if (c >= 'a' && c <= 'f') v |= c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v |= c - 'A' + 10;
      else fail("invalid hex escape");
    }
    return v;
  }

  // Returns either a single codepoint or a class; used by both atom and
  // class element parsing.
  struct Esc {
    bool is_class = false;
    uint32_t cp = 0;
    std::vector<CpRange> ranges;
  };

  Esc parse_escape() {
    expect('\\');
    if (eof()) fail("trailing backslash");
    char32_t c = src_[pos_++];
    switch (c) {
      case 'd': return {true, 0, class_digits()};
      case 'D': return {true, 0, alphabet::complement(alphabet::normalize(class_digits()))};
      case 'w': return {true, 0, class_word()};
      case 'W': return {true, 0, alphabet::complement(alphabet::normalize(class_word()))};
      case 's': return {true, 0, class_space()};
      case 'S': return {true, 0, alphabet::complement(alphabet::normalize(class_space()))};
      case 'n': return {false, '\n', {}};
      case 'r': return {false, '\r', {}};
      case 't': return {false, '\t', {}};
      case 'f': return {false, '\f', {}};
      case 'v': return {false, '\v', {}};
      case '0': return {false, 0, {}};
      case 'b': fail("word boundary is not supported");
      case 'B': fail("word boundary is not supported");
      case 'x': return {false, parse_hex(2), {}};
      case 'u': {
        if (consume('{')) {
          uint32_t v = 0;
          int n = 0;
          while (!eof() && peek() != '}') {
            v = (v << 4);
            char32_t h = src_[pos_++];
            if (h >= '0' && h <= '9') v |= h - '0';
            else if (h >= 'a' && h <= 'f') v |= h - 'a' + 10;
            else if (h >= 'A' && h <= 'F') v |= h - 'A' + 10;
            else fail("invalid \\u{...} escape");
            if (++n > 6) fail("invalid \\u{...} escape");
          }
          expect('}');
          return {false, v, {}};
        }
        return {false, parse_hex(4), {}};
      }
      case 'c': fail("control escapes are not supported");
      case 'k': fail("backreferences are not supported");
      case 'p':
      case 'P': fail("unicode property classes are not supported");
      default:
        if (c >= '1' && c <= '9') fail("backreferences are not supported");
        return {false, static_cast<uint32_t>(c), {}};
    }
  }

  EereId parse_escape_atom() {
    Esc e = parse_escape();
    if (e.is_class) return arena_.charset(std::move(e.ranges));
    return arena_.charset({{e.cp, e.cp}});
  }

  EereId parse_class() {
    expect('[');
    bool negate = consume('^');
    std::vector<CpRange> ranges;
    bool first = true;
    while (true) {
      if (eof()) fail("unterminated character class");
      if (peek() == ']' && !first) {
        ++pos_;
        break;
      }
      first = false;
      uint32_t lo;
      if (peek() == '\\') {
        Esc e = parse_escape();
        if (e.is_class) {
          for (auto r : e.ranges) ranges.push_back(r);
          continue;
        }
        lo = e.cp;
      } else {
        lo = static_cast<uint32_t>(src_[pos_++]);
      }
      if (!eof() && peek() == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] != ']') {
        ++pos_;  // '-'
        uint32_t hi;
        if (peek() == '\\') {
          Esc e = parse_escape();
          if (e.is_class) fail("class escape in range");
          hi = e.cp;
        } else {
          hi = static_cast<uint32_t>(src_[pos_++]);
        }
        if (hi < lo) fail("inverted class range");
        ranges.push_back({lo, hi});
      } else {
        ranges.push_back({lo, lo});
      }
    }
    auto norm = alphabet::normalize(std::move(ranges));
    if (negate) norm = alphabet::complement(norm);
    return arena_.charset(std::move(norm));
  }

  PatternArena& arena_;
  std::u32string src_;
  size_t pos_ = 0;
};

}  // namespace

EereId PatternArena::parse(std::string_view src, Anchoring anchoring) {
  EcmaParser p(*this, utf8_to_codepoints(src));
  return p.parse_top(anchoring);
}

std::string PatternArena::to_string(EereId id) const {
  const ReNode& n = node(id);
  auto cp_str = [](uint32_t cp) -> std::string {
    if (cp >= 0x20 && cp <= 0x7E) {
      char c = static_cast<char>(cp);
      if (std::string("\\|&!()[]{}.*+?^$-").find(c) != std::string::npos) return std::string("\\") + c;
      return std::string(1, c);
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "\\u{%x}", cp);
    return buf;
  };
  switch (n.kind) {
    case ReKind::Never: return "[]";
    case ReKind::Epsilon: return "()";
    case ReKind::CharSet: {
      if (n.ranges.size() == 1 && n.ranges[0].lo == n.ranges[0].hi) return cp_str(n.ranges[0].lo);
      if (n.ranges == alphabet::full()) return ".";
      std::string s = "[";
      for (const auto& r : n.ranges) {
        s += cp_str(r.lo);
        if (r.hi != r.lo) s += "-" + cp_str(r.hi);
      }
      return s + "]";
    }
    case ReKind::Concat: return to_string(n.left) + to_string(n.right);
    case ReKind::Union: return "(" + to_string(n.left) + "|" + to_string(n.right) + ")";
    case ReKind::Repeat: {
      std::string body = "(" + to_string(n.left) + ")";
      if (n.min == 0 && n.max == kRepInf) return body + "*";
      if (n.min == 1 && n.max == kRepInf) return body + "+";
      if (n.min == 0 && n.max == 1) return body + "?";
      if (n.max == kRepInf) return body + "{" + std::to_string(n.min) + ",}";
      return body + "{" + std::to_string(n.min) + "," + std::to_string(n.max) + "}";
    }
    case ReKind::Complement: return "!(" + to_string(n.left) + ")";
    case ReKind::Intersect: return "(" + to_string(n.left) + "&" + to_string(n.right) + ")";
  }
  return "?";
}

}  // namespace jsw
