#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "latticeforge/catalog.hpp"
#include "latticeforge/enumerate.hpp"
#include "latticeforge/identities.hpp"
#include "latticeforge/lattice.hpp"

namespace latticeforge {

/// A minimal nontrivial join cover of `target`: an antichain of
/// join-irreducibles, none above target, whose join is above target.
struct JoinCover {
  Elem target = 0;
  std::vector<Elem> cover;
  friend bool operator==(const JoinCover&, const JoinCover&) = default;
};

/// All minimal nontrivial join covers of the join-irreducible p. Any
/// nontrivial cover refines to one made of join-irreducibles, so only
/// antichains of J(L) are searched; minimality is under refinement
/// (S << T iff every s in S lies below some t in T).
inline std::vector<JoinCover> minimal_join_covers(const FiniteLattice& L, Elem p) {
  if (!is_join_irreducible(L, p)) throw NotJoinIrreducible("element " + L.name(p) + " is not join-irreducible");
  std::vector<Elem> cand;
  for (Elem q : join_irreducibles(L))
    if (!L.leq(p, q)) cand.push_back(q);
  if (cand.size() > 24) throw SizeLimitExceeded("too many join-irreducibles for cover search");

  std::vector<std::vector<Elem>> covers;
  const std::uint32_t limit = std::uint32_t{1} << cand.size();
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    std::vector<Elem> s;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (mask & (std::uint32_t{1} << i)) s.push_back(cand[i]);
    bool antichain = true;
    for (std::size_t i = 0; i < s.size() && antichain; ++i)
      for (std::size_t j = i + 1; j < s.size() && antichain; ++j)
        if (L.comparable(s[i], s[j])) antichain = false;
    if (antichain && L.leq(p, L.join_all(s))) covers.push_back(std::move(s));
  }
  const auto refines = [&](const std::vector<Elem>& s, const std::vector<Elem>& t) {
    return std::all_of(s.begin(), s.end(), [&](Elem a) {
      return std::any_of(t.begin(), t.end(), [&](Elem b) { return L.leq(a, b); });
    });
  };
  std::vector<JoinCover> out;
  for (const auto& t : covers) {
    const bool minimal = std::none_of(covers.begin(), covers.end(), [&](const auto& s) { return s != t && refines(s, t); });
    if (minimal) out.push_back({p, t});
  }
  return out;
}

/// The join-dependency relation: p D q iff p != q and q lies in some minimal
/// nontrivial join cover of p. Sorted pairs (p, q).
inline std::vector<std::pair<Elem, Elem>> join_dependency(const FiniteLattice& L) {
  std::set<std::pair<Elem, Elem>> rel;
  for (Elem p : join_irreducibles(L))
    for (const auto& jc : minimal_join_covers(L, p))
      for (Elem q : jc.cover)
        if (q != p) rel.emplace(p, q);
  return {rel.begin(), rel.end()};
}

struct TJoinResult {
  bool holds = true;
  std::vector<Elem> cycle;  // p0 D p1 D ... D pk D p0 when holds is false
};

/// Condition (T_v): the D relation has no cycle.
inline TJoinResult satisfies_T_join(const FiniteLattice& L) {
  const auto rel = join_dependency(L);
  const std::size_t n = L.size();
  std::vector<std::vector<Elem>> adj(n);
  for (auto [p, q] : rel) adj[p].push_back(q);
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<Elem> stack;
  TJoinResult result;
  std::function<bool(Elem)> dfs = [&](Elem v) -> bool {
    state[v] = 1;
    stack.push_back(v);
    for (Elem w : adj[v]) {
      if (state[w] == 1) {
        const auto it = std::find(stack.begin(), stack.end(), w);
        result.cycle.assign(it, stack.end());
        return true;
      }
      if (state[w] == 0 && dfs(w)) return true;
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };
  for (Elem v = 0; v < n; ++v)
    if (state[v] == 0 && dfs(v)) {
      result.holds = false;
      break;
    }
  return result;
}

/// For a finite lattice, amenability reduces to (T_v) of the lattice itself.
inline bool is_amenable_finite(const FiniteLattice& L) { return satisfies_T_join(L).holds; }

/// A partition of the elements, stored as block labels numbered in order of
/// first occurrence.
class Congruence {
 public:
  explicit Congruence(std::vector<std::size_t> labels) : block_(std::move(labels)) { normalize(); }

  static Congruence identity(std::size_t n) {
    std::vector<std::size_t> b(n);
    std::iota(b.begin(), b.end(), std::size_t{0});
    return Congruence(std::move(b));
  }

  bool same(Elem x, Elem y) const { return block_[x] == block_[y]; }
  std::size_t block_count() const { return blocks_; }
  std::size_t block_of(Elem x) const { return block_[x]; }
  const std::vector<std::size_t>& labels() const { return block_; }
  bool is_full() const { return blocks_ <= 1; }
  bool is_identity() const { return blocks_ == block_.size(); }

  /// Refinement order: every block of *this lies inside a block of other.
  bool finer_than(const Congruence& other) const {
    for (std::size_t x = 0; x < block_.size(); ++x)
      for (std::size_t y = x + 1; y < block_.size(); ++y)
        if (block_[x] == block_[y] && other.block_[x] != other.block_[y]) return false;
    return true;
  }

  friend bool operator==(const Congruence&, const Congruence&) = default;

 private:
  void normalize() {
    std::vector<std::size_t> relabel(block_.size(), static_cast<std::size_t>(-1));
    std::size_t next = 0;
    for (auto& b : block_) {
      if (relabel[b] == static_cast<std::size_t>(-1)) relabel[b] = next++;
      b = relabel[b];
    }
    blocks_ = next;
  }

  std::vector<std::size_t> block_;
  std::size_t blocks_ = 0;
};

/// True iff the partition is compatible with join and meet.
inline bool is_congruence(const FiniteLattice& L, const Congruence& c) {
  const Elem n = static_cast<Elem>(L.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b) {
      if (!c.same(a, b)) continue;
      for (Elem z = 0; z < n; ++z)
        if (!c.same(L.join(a, z), L.join(b, z)) || !c.same(L.meet(a, z), L.meet(b, z))) return false;
    }
  return true;
}

/// Smallest congruence collapsing x and y: union-find closure under
/// translations a ~ b => a v z ~ b v z and a ^ z ~ b ^ z.
inline Congruence principal_congruence(const FiniteLattice& L, Elem x, Elem y) {
  const std::size_t n = L.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  const auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  };
  unite(x, y);
  for (bool changed = true; changed;) {
    changed = false;
    for (Elem a = 0; a < n; ++a)
      for (Elem b = a + 1; b < n; ++b) {
        if (find(a) != find(b)) continue;
        for (Elem z = 0; z < n; ++z) {
          changed |= unite(L.join(a, z), L.join(b, z));
          changed |= unite(L.meet(a, z), L.meet(b, z));
        }
      }
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = find(v);
  return Congruence(std::move(labels));
}

/// Simple: at least two elements and every cover pair generates the full
/// congruence.
inline bool is_simple(const FiniteLattice& L) {
  if (L.size() < 2) throw TrivialLattice("simplicity needs at least two elements");
  for (auto [lo, hi] : L.covers())
    if (!principal_congruence(L, lo, hi).is_full()) return false;
  return true;
}

struct DptWitness {
  Elem u0, u, v0, v;
};

struct DptResult {
  bool holds = true;
  std::optional<DptWitness> witness;
};

/// (DPT): for u0 < u and v0 < v, Theta(u0,u) = Theta(v0,v) implies
/// u ^ v is below neither u0 nor v0.
inline DptResult dpt_holds(const FiniteLattice& L) {
  struct Pair {
    Elem lo, hi;
    Congruence theta;
  };
  std::vector<Pair> pairs;
  for (Elem lo = 0; lo < L.size(); ++lo)
    for (Elem hi = 0; hi < L.size(); ++hi)
      if (L.lt(lo, hi)) pairs.push_back({lo, hi, principal_congruence(L, lo, hi)});
  for (const auto& a : pairs)
    for (const auto& b : pairs) {
      if (!(a.theta == b.theta)) continue;
      const Elem m = L.meet(a.hi, b.hi);
      if (L.leq(m, a.lo) || L.leq(m, b.lo)) return {false, DptWitness{a.lo, a.hi, b.lo, b.hi}};
    }
  return {};
}

/// The sublattice on a join- and meet-closed subset, with the induced order.
inline FiniteLattice induced_sublattice(const FiniteLattice& L, const std::vector<Elem>& subset) {
  std::vector<std::string> names;
  for (Elem x : subset) names.push_back(L.name(x));
  return FiniteLattice::from_order(
      subset.size(), [&](Elem a, Elem b) { return L.leq(subset[a], subset[b]); }, std::move(names));
}

struct ScanRow {
  std::size_t n = 0;
  std::size_t lattices = 0;
  std::size_t simple = 0;
  std::size_t t_join = 0;
  std::size_t simple_and_t_join = 0;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  std::size_t violations() const {
    std::size_t v = 0;
    for (const auto& r : rows) v += r.simple_and_t_join;
    return v;
  }
};

/// Runs through every lattice with 3 <= n <= n_max elements and counts those
/// that are simple, satisfy (T_v), or both. A lattice with both properties
/// (and more than two elements) raises TheoremViolated.
inline ScanReport no_simple_amenable_scan(std::size_t n_max) {
  if (n_max > 8) throw SizeLimitExceeded("scan supports n_max <= 8");
  ScanReport report;
  for (std::size_t n = 3; n <= n_max; ++n) {
    ScanRow row{n};
    for_each_lattice(n, [&](const FiniteLattice& L) {
      ++row.lattices;
      const bool simple = is_simple(L);
      const bool tj = satisfies_T_join(L).holds;
      row.simple += simple;
      row.t_join += tj;
      if (simple && tj) {
        ++row.simple_and_t_join;
        throw TheoremViolated("found a simple lattice with (T_v) and " + std::to_string(n) + " elements");
      }
    });
    report.rows.push_back(row);
  }
  return report;
}

struct AtomPairProfile {
  std::size_t u = 0;
  std::size_t v = 0;
  bool has_margins = false;  // some x < u < v < y inside the chain
  bool theta_equal = false;
};

struct IntervalProfile {
  std::size_t n = 0;
  bool join_semidistributive = false;
  std::vector<AtomPairProfile> pairs;
};

/// For interval_lattice(n): join-semidistributivity and, for every pair of
/// atoms {u}, {v} with u < v, whether Theta({}, {u}) = Theta({}, {v}).
/// Equality is asserted whenever there are chain points on both sides.
inline IntervalProfile interval_lattice_simplicity_profile(std::size_t n) {
  if (n < 3 || n > 8) throw Error("interval profile supports 3 <= n <= 8");
  const FiniteLattice S = interval_lattice(n);
  const IntervalIndex idx{n};
  IntervalProfile profile{n, check_identity(S, Identity::join_semidistributive).holds, {}};
  std::vector<Congruence> theta;
  for (std::size_t u = 0; u < n; ++u) theta.push_back(principal_congruence(S, S.bottom(), idx.atom(u)));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      AtomPairProfile row{u, v, u >= 1 && v + 2 <= n, theta[u] == theta[v]};
      if (row.has_margins && !row.theta_equal)
        throw TheoremViolated("atoms {" + std::to_string(u) + "} and {" + std::to_string(v) +
                              "} generate different congruences");
      profile.pairs.push_back(row);
    }
  return profile;
}

}  // namespace latticeforge
