#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>

#include "jsw/error.hpp"
#include "jsw/pattern.hpp"

namespace jsw {

namespace {

[[noreturn]] void too_large() {
  throw Error(ErrorCode::AutomatonTooLarge, "automaton state budget exceeded");
}

struct Nfa {
  struct Edge {
    CpRange range;
    uint32_t to;
  };
  struct State {
    std::vector<uint32_t> eps;
    std::vector<Edge> edges;
  };
  std::vector<State> states;
  uint32_t start = 0, accept = 0;

  uint32_t add(uint64_t budget) {
    if (states.size() >= budget) too_large();
    states.push_back({});
    return static_cast<uint32_t>(states.size() - 1);
  }
};

struct Frag {
  uint32_t start, accept;
};

class ThompsonBuilder {
 public:
  ThompsonBuilder(const PatternArena& arena, uint64_t budget) : arena_(arena), budget_(budget) {}

  Nfa build(EereId id) {
    Frag f = walk(id);
    nfa_.start = f.start;
    nfa_.accept = f.accept;
    return std::move(nfa_);
  }

 private:
  Frag walk(EereId id) {
    const ReNode& n = arena_.node(id);
    switch (n.kind) {
      case ReKind::Never: {
        Frag f{nfa_.add(budget_), nfa_.add(budget_)};
        return f;  // no path start -> accept
      }
      case ReKind::Epsilon: {
        Frag f{nfa_.add(budget_), nfa_.add(budget_)};
        nfa_.states[f.start].eps.push_back(f.accept);
        return f;
      }
      case ReKind::CharSet: {
        Frag f{nfa_.add(budget_), nfa_.add(budget_)};
        for (const auto& r : n.ranges) nfa_.states[f.start].edges.push_back({r, f.accept});
        return f;
      }
      case ReKind::Concat: {
        Frag a = walk(n.left), b = walk(n.right);
        nfa_.states[a.accept].eps.push_back(b.start);
        return {a.start, b.accept};
      }
      case ReKind::Union: {
        Frag a = walk(n.left), b = walk(n.right);
        Frag f{nfa_.add(budget_), nfa_.add(budget_)};
        nfa_.states[f.start].eps.push_back(a.start);
        nfa_.states[f.start].eps.push_back(b.start);
        nfa_.states[a.accept].eps.push_back(f.accept);
        nfa_.states[b.accept].eps.push_back(f.accept);
        return f;
      }
      case ReKind::Repeat: {
        Frag f{nfa_.add(budget_), nfa_.add(budget_)};
        uint32_t cur = f.start;
        for (uint32_t k = 0; k < n.min; ++k) {
          Frag c = walk(n.left);
          nfa_.states[cur].eps.push_back(c.start);
          cur = c.accept;
        }
        if (n.max == kRepInf) {
          Frag c = walk(n.left);
          nfa_.states[cur].eps.push_back(c.start);
          nfa_.states[c.accept].eps.push_back(c.start);
          nfa_.states[cur].eps.push_back(f.accept);
          nfa_.states[c.accept].eps.push_back(f.accept);
        } else {
          nfa_.states[cur].eps.push_back(f.accept);
          for (uint32_t k = n.min; k < n.max; ++k) {
            Frag c = walk(n.left);
            nfa_.states[cur].eps.push_back(c.start);
            nfa_.states[c.accept].eps.push_back(f.accept);
            cur = c.accept;
          }
        }
        return f;
      }
      case ReKind::Complement:
      case ReKind::Intersect:
        throw Error(ErrorCode::Internal, "extended operator below a basic RE operator");
    }
    throw Error(ErrorCode::Internal, "bad RE node");
  }

  const PatternArena& arena_;
  uint64_t budget_;
  Nfa nfa_;
};

using StateSet = std::vector<uint32_t>;  // sorted

void eps_closure(const Nfa& nfa, StateSet& set) {
  std::vector<uint32_t> stack(set.begin(), set.end());
  std::set<uint32_t> seen(set.begin(), set.end());
  while (!stack.empty()) {
    uint32_t s = stack.back();
    stack.pop_back();
    for (uint32_t t : nfa.states[s].eps) {
      if (seen.insert(t).second) stack.push_back(t);
    }
  }
  set.assign(seen.begin(), seen.end());
}

Dfa determinize(const Nfa& nfa, uint64_t budget) {
  Dfa dfa;
  std::map<StateSet, uint32_t> ids;
  std::deque<StateSet> work;

  auto intern = [&](StateSet set) -> uint32_t {
    auto it = ids.find(set);
    if (it != ids.end()) return it->second;
    if (dfa.trans.size() >= budget) too_large();
    uint32_t id = static_cast<uint32_t>(dfa.trans.size());
    dfa.trans.push_back({});
    bool acc = std::binary_search(set.begin(), set.end(), nfa.accept);
    dfa.accepting.push_back(acc);
    ids.emplace(set, id);
    work.push_back(std::move(set));
    return id;
  };

  StateSet init{nfa.start};
  eps_closure(nfa, init);
  dfa.initial = intern(std::move(init));

  const auto full = alphabet::full();
  while (!work.empty()) {
    StateSet cur = work.front();
    work.pop_front();
    uint32_t cur_id = ids.at(cur);

    // Elementary interval boundaries from all outgoing edges.
    std::vector<uint32_t> bounds;
    for (uint32_t s : cur) {
      for (const auto& e : nfa.states[s].edges) {
        bounds.push_back(e.range.lo);
        if (e.range.hi + 1 != 0) bounds.push_back(e.range.hi + 1);
      }
    }
    for (const auto& piece : full) {
      bounds.push_back(piece.lo);
      bounds.push_back(piece.hi + 1);
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    std::vector<Dfa::Edge> edges;
    for (size_t bi = 0; bi + 1 <= bounds.size(); ++bi) {
      uint32_t lo = bounds[bi];
      uint32_t hi = (bi + 1 < bounds.size()) ? bounds[bi + 1] - 1 : alphabet::kMaxCp;
      if (lo > hi) continue;
      if (!alphabet::contains(full, lo)) continue;  // clip to scalar values
      // clip hi into the same alphabet piece
      for (const auto& piece : full) {
        if (lo >= piece.lo && lo <= piece.hi) {
          hi = std::min(hi, piece.hi);
          break;
        }
      }
      StateSet next;
      for (uint32_t s : cur) {
        for (const auto& e : nfa.states[s].edges) {
          if (e.range.lo <= lo && lo <= e.range.hi) next.push_back(e.to);
        }
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      eps_closure(nfa, next);
      uint32_t to = intern(std::move(next));
      if (!edges.empty() && edges.back().to == to && edges.back().range.hi + 1 == lo) {
        edges.back().range.hi = hi;
      } else {
        edges.push_back({{lo, hi}, to});
      }
      if (bi + 1 == bounds.size()) break;
    }
    dfa.trans[cur_id] = std::move(edges);
  }
  return dfa;
}

// Forward-reachable states.
std::vector<bool> reachable(const Dfa& d) {
  std::vector<bool> seen(d.state_count(), false);
  std::vector<uint32_t> stack{d.initial};
  seen[d.initial] = true;
  while (!stack.empty()) {
    uint32_t s = stack.back();
    stack.pop_back();
    for (const auto& e : d.trans[s]) {
      if (!seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  return seen;
}

// States from which some accepting state is reachable.
std::vector<bool> co_reachable(const Dfa& d) {
  std::vector<std::vector<uint32_t>> rev(d.state_count());
  for (uint32_t s = 0; s < d.state_count(); ++s) {
    for (const auto& e : d.trans[s]) rev[e.to].push_back(s);
  }
  std::vector<bool> seen(d.state_count(), false);
  std::vector<uint32_t> stack;
  for (uint32_t s = 0; s < d.state_count(); ++s) {
    if (d.accepting[s] && !seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    uint32_t s = stack.back();
    stack.pop_back();
    for (uint32_t p : rev[s]) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

// Cycle detection restricted to `live` states.
bool has_live_cycle(const Dfa& d, const std::vector<bool>& live) {
  enum { White, Grey, Black };
  std::vector<uint8_t> color(d.state_count(), White);
  for (uint32_t root = 0; root < d.state_count(); ++root) {
    if (!live[root] || color[root] != White) continue;
    std::vector<std::pair<uint32_t, size_t>> stack{{root, 0}};
    color[root] = Grey;
    while (!stack.empty()) {
      auto& [s, idx] = stack.back();
      bool advanced = false;
      while (idx < d.trans[s].size()) {
        uint32_t t = d.trans[s][idx].to;
        ++idx;
        if (!live[t]) continue;
        if (color[t] == Grey) return true;
        if (color[t] == White) {
          color[t] = Grey;
          stack.push_back({t, 0});
          advanced = true;
          break;
        }
      }
      if (!advanced && (stack.back().second >= d.trans[stack.back().first].size())) {
        color[stack.back().first] = Black;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

uint32_t Dfa::step(uint32_t state, uint32_t cp) const {
  const auto& edges = trans[state];
  auto it = std::upper_bound(edges.begin(), edges.end(), cp,
                             [](uint32_t v, const Edge& e) { return v < e.range.lo; });
  if (it == edges.begin()) throw Error(ErrorCode::Internal, "codepoint outside alphabet");
  --it;
  if (cp > it->range.hi) throw Error(ErrorCode::Internal, "codepoint outside alphabet");
  return it->to;
}

bool Dfa::accepts(const std::u32string& word) const {
  uint32_t s = initial;
  for (char32_t cp : word) s = step(s, static_cast<uint32_t>(cp));
  return accepting[s];
}

std::shared_ptr<const Dfa> DfaOps::compile(const PatternArena& arena, EereId id) {
  auto it = cache_.find(id);
  if (it != cache_.end()) return it->second;
  auto d = std::make_shared<Dfa>(compile_uncached(arena, id));
  cache_.emplace(id, d);
  return d;
}

Dfa DfaOps::compile_uncached(const PatternArena& arena, EereId id) const {
  const ReNode& n = arena.node(id);
  switch (n.kind) {
    case ReKind::Complement: {
      Dfa inner = compile_uncached(arena, n.left);
      return complement_of(std::move(inner));
    }
    case ReKind::Intersect: {
      Dfa a = compile_uncached(arena, n.left);
      Dfa b = compile_uncached(arena, n.right);
      return *product(a, b, /*a_and_b=*/true);
    }
    default: {
      ThompsonBuilder tb(arena, budget_);
      Nfa nfa = tb.build(id);
      return determinize(nfa, budget_);
    }
  }
}

Dfa DfaOps::complement_of(Dfa d) {
  for (size_t i = 0; i < d.accepting.size(); ++i) d.accepting[i] = !d.accepting[i];
  return d;
}

std::shared_ptr<const Dfa> DfaOps::product(const Dfa& a, const Dfa& b, bool a_and_b) const {
  auto out = std::make_shared<Dfa>();
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> ids;
  std::deque<std::pair<uint32_t, uint32_t>> work;
  auto intern = [&](uint32_t sa, uint32_t sb) {
    auto key = std::make_pair(sa, sb);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (out->trans.size() >= budget_) too_large();
    uint32_t id = static_cast<uint32_t>(out->trans.size());
    out->trans.push_back({});
    bool acc = a_and_b ? (a.accepting[sa] && b.accepting[sb]) : (a.accepting[sa] || b.accepting[sb]);
    out->accepting.push_back(acc);
    ids.emplace(key, id);
    work.push_back(key);
    return id;
  };
  out->initial = intern(a.initial, b.initial);
  while (!work.empty()) {
    auto [sa, sb] = work.front();
    work.pop_front();
    uint32_t cur = ids.at({sa, sb});
    const auto& ea = a.trans[sa];
    const auto& eb = b.trans[sb];
    std::vector<Dfa::Edge> edges;
    size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
      uint32_t lo = std::max(ea[i].range.lo, eb[j].range.lo);
      uint32_t hi = std::min(ea[i].range.hi, eb[j].range.hi);
      if (lo <= hi) {
        uint32_t to = intern(ea[i].to, eb[j].to);
        if (!edges.empty() && edges.back().to == to && edges.back().range.hi + 1 == lo) {
          edges.back().range.hi = hi;
        } else {
          edges.push_back({{lo, hi}, to});
        }
      }
      if (ea[i].range.hi < eb[j].range.hi) ++i;
      else ++j;
    }
    out->trans[cur] = std::move(edges);
  }
  return out;
}

bool DfaOps::is_empty(const Dfa& d) {
  auto seen = reachable(d);
  for (uint32_t s = 0; s < d.state_count(); ++s) {
    if (seen[s] && d.accepting[s]) return false;
  }
  return true;
}

uint32_t symbol_rank(uint32_t cp) {
  if (cp >= 'a' && cp <= 'z') return cp - 'a';
  if (cp >= 'A' && cp <= 'Z') return 26 + cp - 'A';
  if (cp >= '0' && cp <= '9') return 52 + cp - '0';
  if (cp >= 0x20 && cp <= 0x7E) return 62 + cp;  // relative order among the rest of printable
  return 1000 + cp;
}

namespace {

// Preferred symbols in rank order (everything else follows in codepoint order).
const std::vector<uint32_t>& preferred_symbols() {
  static const std::vector<uint32_t> syms = [] {
    std::vector<uint32_t> v;
    for (uint32_t c = 'a'; c <= 'z'; ++c) v.push_back(c);
    for (uint32_t c = 'A'; c <= 'Z'; ++c) v.push_back(c);
    for (uint32_t c = '0'; c <= '9'; ++c) v.push_back(c);
    for (uint32_t c = 0x20; c <= 0x7E; ++c) {
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) continue;
      v.push_back(c);
    }
    return v;
  }();
  return syms;
}

bool is_preferred(uint32_t cp) { return cp >= 0x20 && cp <= 0x7E; }

struct Enumerator {
  const Dfa& d;
  uint64_t want;
  std::vector<std::vector<uint64_t>> reach;  // reach[k] bitset: accepting path of exactly k
  std::vector<std::u32string> out;

  explicit Enumerator(const Dfa& dfa, uint64_t i) : d(dfa), want(i) {}

  bool bit(const std::vector<uint64_t>& bs, uint32_t s) const { return (bs[s >> 6] >> (s & 63)) & 1; }

  void ensure_reach(size_t k) {
    size_t words = (d.state_count() + 63) / 64;
    while (reach.size() <= k) {
      std::vector<uint64_t> next(words, 0);
      if (reach.empty()) {
        for (uint32_t s = 0; s < d.state_count(); ++s) {
          if (d.accepting[s]) next[s >> 6] |= 1ull << (s & 63);
        }
      } else {
        const auto& prev = reach.back();
        for (uint32_t s = 0; s < d.state_count(); ++s) {
          for (const auto& e : d.trans[s]) {
            if (bit(prev, e.to)) {
              next[s >> 6] |= 1ull << (s & 63);
              break;
            }
          }
        }
      }
      reach.push_back(std::move(next));
    }
  }

  // Enumerate words of exactly `rem` more symbols from `state`.
  void dfs(uint32_t state, size_t rem, std::u32string& prefix) {
    if (out.size() >= want) return;
    if (rem == 0) {
      if (d.accepting[state]) out.push_back(prefix);
      return;
    }
    const auto& target_ok = reach[rem - 1];
    const auto& edges = d.trans[state];
    // preferred symbols first, in rank order
    for (uint32_t cp : preferred_symbols()) {
      if (out.size() >= want) return;
      auto it = std::upper_bound(edges.begin(), edges.end(), cp,
                                 [](uint32_t v, const Dfa::Edge& e) { return v < e.range.lo; });
      if (it == edges.begin()) continue;
      --it;
      if (cp > it->range.hi) continue;
      if (!bit(target_ok, it->to)) continue;
      prefix.push_back(static_cast<char32_t>(cp));
      dfs(it->to, rem - 1, prefix);
      prefix.pop_back();
    }
    // remaining codepoints in ascending order
    for (const auto& e : edges) {
      if (out.size() >= want) return;
      if (!bit(target_ok, e.to)) continue;
      for (uint32_t cp = e.range.lo; cp <= e.range.hi; ++cp) {
        if (is_preferred(cp)) continue;
        prefix.push_back(static_cast<char32_t>(cp));
        dfs(e.to, rem - 1, prefix);
        prefix.pop_back();
        if (out.size() >= want) return;
        if (cp == e.range.hi) break;  // avoid overflow at 0x10FFFF
      }
    }
  }
};

}  // namespace

EnumerationResult DfaOps::enumerate(const Dfa& d, uint64_t i) const {
  EnumerationResult res;
  if (i == 0) return res;
  auto fwd = reachable(d);
  auto bwd = co_reachable(d);
  std::vector<bool> live(d.state_count(), false);
  bool any_live = false;
  for (uint32_t s = 0; s < d.state_count(); ++s) {
    live[s] = fwd[s] && bwd[s];
    any_live = any_live || live[s];
  }
  if (!any_live) {
    res.impossible = true;
    return res;
  }
  bool infinite = has_live_cycle(d, live);
  uint64_t S = d.state_count();
  uint64_t max_len = infinite ? S * (i + 2) + 2 : S;
  if ((max_len + 1) * ((S + 63) / 64) > (1ull << 28)) too_large();

  Enumerator en(d, i);
  std::u32string prefix;
  for (uint64_t len = 0; len < max_len && en.out.size() < i; ++len) {
    en.ensure_reach(len);
    if (len == 0) {
      if (d.accepting[d.initial]) en.out.push_back(U"");
      continue;
    }
    if (!en.bit(en.reach[len - 1], d.initial) && len == 1) {
      // fall through: dfs handles it uniformly below
    }
    en.ensure_reach(len - 1);
    // quick skip when no word of this exact length exists
    en.ensure_reach(len);
    if (!en.bit(en.reach[len], d.initial)) continue;
    en.dfs(d.initial, len, prefix);
  }
  if (en.out.size() < i) {
    res.impossible = true;
    res.words = std::move(en.out);
    return res;
  }
  res.words = std::move(en.out);
  return res;
}

bool DfaOps::has_at_least(const Dfa& d, uint64_t n) const {
  if (n == 0) return true;
  return !enumerate(d, n).impossible;
}

Dfa DfaOps::minimize(const Dfa& d) {
  // Moore partition refinement over the interval alphabet.
  uint32_t n = d.state_count();
  std::vector<uint32_t> cls(n);
  for (uint32_t s = 0; s < n; ++s) cls[s] = d.accepting[s] ? 1 : 0;
  while (true) {
    std::map<std::vector<uint32_t>, uint32_t> sig_ids;
    std::vector<uint32_t> next(n);
    for (uint32_t s = 0; s < n; ++s) {
      std::vector<uint32_t> sig{cls[s]};
      uint32_t last_cls = UINT32_MAX;
      for (const auto& e : d.trans[s]) {
        uint32_t c = cls[e.to];
        if (c == last_cls) continue;  // merge adjacent same-class ranges
        sig.push_back(e.range.lo);
        sig.push_back(c);
        last_cls = c;
      }
      auto [it, fresh] = sig_ids.emplace(std::move(sig), static_cast<uint32_t>(sig_ids.size()));
      (void)fresh;
      next[s] = it->second;
    }
    if (next == cls) break;
    cls = std::move(next);
  }
  uint32_t m = *std::max_element(cls.begin(), cls.end()) + 1;
  Dfa out;
  out.trans.resize(m);
  out.accepting.assign(m, false);
  std::vector<bool> done(m, false);
  out.initial = cls[d.initial];
  for (uint32_t s = 0; s < n; ++s) {
    uint32_t c = cls[s];
    out.accepting[c] = d.accepting[s];
    if (done[c]) continue;
    done[c] = true;
    std::vector<Dfa::Edge> edges;
    for (const auto& e : d.trans[s]) {
      uint32_t to = cls[e.to];
      if (!edges.empty() && edges.back().to == to && edges.back().range.hi + 1 == e.range.lo) {
        edges.back().range.hi = e.range.hi;
      } else {
        edges.push_back({e.range, to});
      }
    }
    out.trans[c] = std::move(edges);
  }
  return out;
}

std::string DfaOps::to_dot(const Dfa& d) {
  std::string s = "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n";
  s += "  start [shape=point];\n  start -> s" + std::to_string(d.initial) + ";\n";
  for (uint32_t st = 0; st < d.state_count(); ++st) {
    if (d.accepting[st]) s += "  s" + std::to_string(st) + " [shape=doublecircle];\n";
    for (const auto& e : d.trans[st]) {
      auto lbl = [&](uint32_t cp) -> std::string {
        if (cp >= 0x21 && cp <= 0x7E && cp != '"' && cp != '\\') return std::string(1, static_cast<char>(cp));
        char buf[16];
        std::snprintf(buf, sizeof buf, "U+%04X", cp);
        return buf;
      };
      std::string label = e.range.lo == e.range.hi ? lbl(e.range.lo) : lbl(e.range.lo) + "-" + lbl(e.range.hi);
      s += "  s" + std::to_string(st) + " -> s" + std::to_string(e.to) + " [label=\"" + label + "\"];\n";
    }
  }
  s += "}\n";
  return s;
}

}  // namespace jsw
