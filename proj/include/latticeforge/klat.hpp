#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "latticeforge/identities.hpp"
#include "latticeforge/lattice.hpp"

namespace latticeforge {

/// Canonical forms of the elements of K. J(K) = {c, a_n, b_n : n >= 0} with
/// a_0 > a_1 > ... and b_0 > b_1 > ...; every nonzero element is a join of at
/// most two join-irreducibles.
enum class KKind : std::uint8_t { zero, c, a, b, ac, bc, t };

struct KElem {
  KKind kind = KKind::zero;
  std::uint32_t m = 0;  // ignored for zero and c

  static KElem zero() { return {KKind::zero, 0}; }
  static KElem c() { return {KKind::c, 0}; }
  static KElem a(std::uint32_t m) { return {KKind::a, m}; }
  static KElem b(std::uint32_t m) { return {KKind::b, m}; }
  static KElem ac(std::uint32_t m) { return {KKind::ac, m}; }
  static KElem bc(std::uint32_t m) { return {KKind::bc, m}; }
  static KElem t(std::uint32_t m) { return {KKind::t, m}; }
  static KElem top() { return t(0); }

  bool has_index() const { return kind != KKind::zero && kind != KKind::c; }
  std::uint32_t index() const { return has_index() ? m : 0; }

  friend bool operator==(const KElem& x, const KElem& y) {
    return x.kind == y.kind && (!x.has_index() || x.m == y.m);
  }
  friend bool operator<(const KElem& x, const KElem& y) {
    if (x.kind != y.kind) return x.kind < y.kind;
    return x.has_index() && x.m < y.m;
  }
};

/// The join-irreducibles below an element: {a_k : k >= a_from},
/// {b_k : k >= b_from}, plus c when has_c. `none` marks an empty tail.
struct JiSet {
  static constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t a_from = none;
  std::uint64_t b_from = none;
  bool has_c = false;

  bool subset_of(const JiSet& o) const {
    return a_from >= o.a_from && b_from >= o.b_from && (!has_c || o.has_c);
  }
  friend bool operator==(const JiSet&, const JiSet&) = default;
};

inline JiSet ji_set(const KElem& e) {
  const std::uint64_t m = e.m;
  switch (e.kind) {
    case KKind::zero: return {};
    case KKind::c: return {JiSet::none, JiSet::none, true};
    case KKind::a: return {m, JiSet::none, false};
    case KKind::b: return {JiSet::none, m, false};
    case KKind::ac: return {m, m + 1, true};
    case KKind::bc: return {m + 1, m, true};
    case KKind::t: return {m, m, true};
  }
  return {};
}

/// The canonical element with exactly this ji-set, if there is one.
inline std::optional<KElem> from_ji_set(const JiSet& s) {
  const auto none = JiSet::none;
  const auto narrow = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  if (s.a_from == none && s.b_from == none) return s.has_c ? KElem::c() : KElem::zero();
  if (!s.has_c) {
    if (s.b_from == none) return KElem::a(narrow(s.a_from));
    if (s.a_from == none) return KElem::b(narrow(s.b_from));
    return std::nullopt;
  }
  if (s.a_from == none || s.b_from == none) return std::nullopt;
  if (s.a_from == s.b_from) return KElem::t(narrow(s.a_from));
  if (s.b_from == s.a_from + 1) return KElem::ac(narrow(s.a_from));
  if (s.a_from == s.b_from + 1) return KElem::bc(narrow(s.b_from));
  return std::nullopt;
}

inline bool k_leq(const KElem& x, const KElem& y) { return ji_set(x).subset_of(ji_set(y)); }

/// Least canonical element whose ji-set contains `s`.
inline KElem k_generated(const JiSet& s) {
  const auto none = JiSet::none;
  std::vector<KElem> candidates;
  if (s.a_from == none && s.b_from == none) candidates.push_back(s.has_c ? KElem::c() : KElem::zero());
  if (!s.has_c && s.b_from == none && s.a_from != none) candidates.push_back(KElem::a(static_cast<std::uint32_t>(s.a_from)));
  if (!s.has_c && s.a_from == none && s.b_from != none) candidates.push_back(KElem::b(static_cast<std::uint32_t>(s.b_from)));
  if (s.a_from != none || s.b_from != none) {
    // m <= a_from, m + 1 <= b_from, as large as possible
    const auto fit = [&](std::uint64_t first, std::uint64_t second) -> std::optional<std::uint32_t> {
      const std::uint64_t bound = second == none ? none : (second == 0 ? none : second - 1);
      if (second == 0) return std::nullopt;
      const std::uint64_t m = std::min(first, bound);
      if (m == none) return std::nullopt;
      return static_cast<std::uint32_t>(m);
    };
    if (auto m = fit(s.a_from, s.b_from)) candidates.push_back(KElem::ac(*m));
    if (auto m = fit(s.b_from, s.a_from)) candidates.push_back(KElem::bc(*m));
    candidates.push_back(KElem::t(static_cast<std::uint32_t>(std::min(s.a_from, s.b_from))));
  }
  for (const auto& cand : candidates) {
    if (!s.subset_of(ji_set(cand))) continue;
    bool least = true;
    for (const auto& other : candidates)
      if (s.subset_of(ji_set(other)) && !k_leq(cand, other)) least = false;
    if (least) return cand;
  }
  throw InternalAssertion("no least canonical element above a ji-set");
}

inline KElem k_join(const KElem& x, const KElem& y) {
  const JiSet s = ji_set(x), t = ji_set(y);
  return k_generated({std::min(s.a_from, t.a_from), std::min(s.b_from, t.b_from), s.has_c || t.has_c});
}

inline KElem k_meet(const KElem& x, const KElem& y) {
  const JiSet s = ji_set(x), t = ji_set(y);
  const JiSet both{std::max(s.a_from, t.a_from), std::max(s.b_from, t.b_from), s.has_c && t.has_c};
  if (auto e = from_ji_set(both)) return *e;
  throw NonCanonicalIntersection("ji-set intersection is not canonical");
}

/// K as an algebra for the generic triple iteration.
struct KLattice {
  using value_type = KElem;
  KElem join(const KElem& x, const KElem& y) const { return k_join(x, y); }
  KElem meet(const KElem& x, const KElem& y) const { return k_meet(x, y); }
  bool leq(const KElem& x, const KElem& y) const { return k_leq(x, y); }
};

using KTriple = Triple<KElem>;

inline KTriple k_triple_step(const KTriple& u) { return triple_step(KLattice{}, u); }
inline KTriple k_iterate(const KTriple& u, std::size_t k) { return triple_iterate(KLattice{}, u, k); }

inline bool is_k_join_irreducible(const KElem& e) {
  return e.kind == KKind::c || e.kind == KKind::a || e.kind == KKind::b;
}

/// Every canonical element with all indices <= n, ordered by kind then index.
inline std::vector<KElem> k_elements(std::uint32_t n) {
  std::vector<KElem> out{KElem::zero(), KElem::c()};
  for (KKind kind : {KKind::a, KKind::b, KKind::ac, KKind::bc, KKind::t})
    for (std::uint32_t m = 0; m <= n; ++m) out.push_back({kind, m});
  return out;
}

inline std::string format_kelem(const KElem& e) {
  const std::string m = std::to_string(e.m);
  switch (e.kind) {
    case KKind::zero: return "0";
    case KKind::c: return "c";
    case KKind::a: return "a" + m;
    case KKind::b: return "b" + m;
    case KKind::ac: return "a" + m + "+c";
    case KKind::bc: return "b" + m + "+c";
    case KKind::t: return "a" + m + "+b" + m;
  }
  return "?";
}

/// Accepts joins of generators separated by '+', e.g. "a3+c" or "a2+b5";
/// the result is normalized.
inline KElem parse_kelem(std::string_view text) {
  KElem acc = KElem::zero();
  std::size_t pos = 0;
  bool any = false;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('+', pos), text.size());
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    KElem part;
    if (tok == "0") {
      part = KElem::zero();
    } else if (tok == "c") {
      part = KElem::c();
    } else if (tok.size() >= 2 && (tok[0] == 'a' || tok[0] == 'b') &&
               std::all_of(tok.begin() + 1, tok.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      const auto m = static_cast<std::uint32_t>(std::stoul(std::string(tok.substr(1))));
      part = tok[0] == 'a' ? KElem::a(m) : KElem::b(m);
    } else {
      throw SyntaxError("bad element of K '" + std::string(tok) + "'", pos);
    }
    acc = k_join(acc, part);
    any = true;
    pos = end + 1;
  }
  if (!any) throw SyntaxError("empty element of K", 0);
  return acc;
}

struct K2ModularReport {
  bool holds = true;
  std::size_t triples_checked = 0;
  std::optional<KTriple> counterexample;       // u^(3) != u^(2)
  std::optional<KTriple> nonmodular_witness;   // u^(2) != u^(1)
};

/// Exhaustive 2-modularity check over all triples with indices <= max_index.
inline K2ModularReport k_check_2modular(std::uint32_t max_index) {
  if (max_index > 8) throw Error("k_check_2modular supports max_index <= 8");
  const auto elems = k_elements(max_index);
  K2ModularReport r;
  for (const auto& x : elems)
    for (const auto& y : elems)
      for (const auto& z : elems) {
        const KTriple u{x, y, z};
        const KTriple u1 = k_triple_step(u), u2 = k_triple_step(u1), u3 = k_triple_step(u2);
        ++r.triples_checked;
        if (u3 != u2 && !r.counterexample) {
          r.holds = false;
          r.counterexample = u;
        }
        if (u2 != u1 && !r.nonmodular_witness) r.nonmodular_witness = u;
      }
  return r;
}

/// The finite subposet K_N of canonical elements with indices <= N. It is
/// join-closed in K; meets are those of the finite poset.
struct KTruncation {
  std::uint32_t N = 0;
  std::vector<KElem> elements;
  FiniteLattice lattice;

  Elem index_of(const KElem& e) const {
    const auto it = std::find(elements.begin(), elements.end(), e);
    if (it == elements.end()) throw Error("element " + format_kelem(e) + " is outside K_" + std::to_string(N));
    return static_cast<Elem>(it - elements.begin());
  }
  bool contains(const KElem& e) const { return !e.has_index() || e.m <= N; }
};

inline KTruncation k_truncation(std::uint32_t N) {
  if (N < 1) throw Error("k_truncation needs N >= 1");
  auto elems = k_elements(N);
  std::vector<std::string> names;
  for (const auto& e : elems) names.push_back(format_kelem(e));
  const std::size_t n = elems.size();
  std::vector<std::pair<Elem, Elem>> covers;
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) {
      if (i == j || !k_leq(elems[i], elems[j])) continue;
      bool cover = true;
      for (Elem k = 0; k < n && cover; ++k)
        if (k != i && k != j && k_leq(elems[i], elems[k]) && k_leq(elems[k], elems[j])) cover = false;
      if (cover) covers.emplace_back(i, j);
    }
  FiniteLattice L = FiniteLattice::from_covers(n, covers, std::move(names));
  return {N, std::move(elems), std::move(L)};
}

/// Closes {a_0, b_0, c} under join and meet, discarding results with an
/// index above N. Returns the elements reached.
inline std::set<KElem> k_generation_closure(std::uint32_t N) {
  std::set<KElem> reached{KElem::a(0), KElem::b(0), KElem::c()};
  for (bool changed = true; changed;) {
    changed = false;
    const std::vector<KElem> current(reached.begin(), reached.end());
    for (const auto& x : current)
      for (const auto& y : current)
        for (const auto& z : {k_join(x, y), k_meet(x, y)})
          if ((!z.has_index() || z.m <= N) && reached.insert(z).second) changed = true;
  }
  return reached;
}

/// Largest antichain among canonical elements with indices <= n (exhaustive
/// branch and bound).
inline std::vector<KElem> k_max_antichain(std::uint32_t n) {
  const auto elems = k_elements(n);
  std::vector<KElem> best, cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (cur.size() > best.size()) best = cur;
    if (cur.size() + (elems.size() - i) <= best.size()) return;
    for (std::size_t j = i; j < elems.size(); ++j) {
      bool ok = true;
      for (const auto& e : cur)
        if (k_leq(e, elems[j]) || k_leq(elems[j], e)) ok = false;
      if (!ok) continue;
      cur.push_back(elems[j]);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return best;
}

struct KAscentReport {
  bool holds = true;
  std::size_t longest_chain = 0;  // longest strictly ascending chain to the top
  std::optional<KElem> offender;
};

/// Finite-ascent check: every element lies below T(0), and every element
/// other than 0 and c has all of its strict upper bounds at indices no
/// larger than its own, so its upper set is finite. 0 and c step into such
/// an element at once, hence every strictly ascending chain is finite and
/// can be prolonged to T(0).
inline KAscentReport k_ascent_check(std::uint32_t max_index) {
  const auto elems = k_elements(max_index + 2);
  KAscentReport r;
  std::map<KElem, std::size_t> height;  // longest chain from e up to T(0)
  std::function<std::size_t(const KElem&)> up = [&](const KElem& e) -> std::size_t {
    if (auto it = height.find(e); it != height.end()) return it->second;
    std::size_t h = 0;
    for (const auto& f : elems)
      if (k_leq(e, f) && !(e == f)) {
        if (e.has_index() && f.index() > e.index()) {
          r.holds = false;
          r.offender = e;
          continue;
        }
        if (!e.has_index() && f.index() > max_index + 1) continue;
        h = std::max(h, 1 + up(f));
      }
    return height[e] = h;
  };
  for (const auto& e : k_elements(max_index)) {
    if (!k_leq(e, KElem::top())) {
      r.holds = false;
      r.offender = e;
    }
    r.longest_chain = std::max(r.longest_chain, up(e));
  }
  return r;
}

}  // namespace latticeforge
