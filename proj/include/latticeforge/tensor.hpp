#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latticeforge/identities.hpp"
#include "latticeforge/lattice.hpp"
#include "latticeforge/terms.hpp"

namespace latticeforge {

/// A bi-ideal of A x B stored as the map f: A -> B with
/// I = {(a, b) : b <= f(a)}. Valid maps satisfy f(0_A) = 1_B and
/// f(a v a') = f(a) ^ f(a').
struct TensorElement {
  std::vector<Elem> f;
  friend bool operator==(const TensorElement&, const TensorElement&) = default;
  friend auto operator<=>(const TensorElement&, const TensorElement&) = default;
};

/// A subset of A x B as a boolean matrix. This is the oracle representation.
class RawBiIdeal {
 public:
  RawBiIdeal() = default;
  RawBiIdeal(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool contains(Elem a, Elem b) const { return bits_[a * cols_ + b] != 0; }
  bool insert(Elem a, Elem b) {
    auto& bit = bits_[a * cols_ + b];
    if (bit) return false;
    bit = 1;
    return true;
  }
  std::size_t count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }
  bool subset_of(const RawBiIdeal& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !o.bits_[i]) return false;
    return true;
  }
  void unite(const RawBiIdeal& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  }

  friend bool operator==(const RawBiIdeal&, const RawBiIdeal&) = default;
  friend auto operator<=>(const RawBiIdeal&, const RawBiIdeal&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Finite set of pairs whose hereditary closure together with the bottom
/// bi-ideal reproduces a bi-ideal.
struct Capping {
  std::vector<std::pair<Elem, Elem>> pairs;
  friend bool operator==(const Capping&, const Capping&) = default;
};

/// Subset-level closure: the least bi-ideal containing `seed`. Adds the
/// bottom set A x {0} u {0} x B, then closes under lateral joins and
/// downward until stable.
inline RawBiIdeal biideal_closure(const FiniteLattice& A, const FiniteLattice& B, RawBiIdeal seed) {
  const Elem na = static_cast<Elem>(A.size()), nb = static_cast<Elem>(B.size());
  for (Elem a = 0; a < na; ++a) seed.insert(a, B.bottom());
  for (Elem b = 0; b < nb; ++b) seed.insert(A.bottom(), b);
  for (bool changed = true; changed;) {
    changed = false;
    for (Elem a = 0; a < na; ++a)
      for (Elem b = 0; b < nb; ++b) {
        if (!seed.contains(a, b)) continue;
        for (Elem a2 = 0; a2 < na; ++a2)
          for (Elem b2 = 0; b2 < nb; ++b2)
            if (A.leq(a2, a) && B.leq(b2, b)) changed |= seed.insert(a2, b2);
        for (Elem b2 = 0; b2 < nb; ++b2)
          if (seed.contains(a, b2)) changed |= seed.insert(a, B.join(b, b2));
        for (Elem a2 = 0; a2 < na; ++a2)
          if (seed.contains(a2, b)) changed |= seed.insert(A.join(a, a2), b);
      }
  }
  return seed;
}

/// Hereditary, contains the bottom set, closed under lateral joins.
inline bool is_bi_ideal(const FiniteLattice& A, const FiniteLattice& B, const RawBiIdeal& s) {
  return biideal_closure(A, B, s) == s;
}

/// The raw pure tensor: bottom set plus everything below (a, b).
inline RawBiIdeal raw_pure_tensor(const FiniteLattice& A, const FiniteLattice& B, Elem a, Elem b) {
  RawBiIdeal s(A.size(), B.size());
  for (Elem x = 0; x < A.size(); ++x)
    for (Elem y = 0; y < B.size(); ++y)
      if (x == A.bottom() || y == B.bottom() || (A.leq(x, a) && B.leq(y, b))) s.insert(x, y);
  return s;
}

/// Operations of the tensor product A (x) B of two finite lattices in the
/// map representation.
class TensorProduct {
 public:
  TensorProduct(FiniteLattice A, FiniteLattice B) : A_(std::move(A)), B_(std::move(B)) {}

  const FiniteLattice& left() const { return A_; }
  const FiniteLattice& right() const { return B_; }

  TensorElement bottom() const {
    TensorElement t{std::vector<Elem>(A_.size(), B_.bottom())};
    t.f[A_.bottom()] = B_.top();
    return t;
  }

  TensorElement top() const { return TensorElement{std::vector<Elem>(A_.size(), B_.top())}; }

  /// a (x) b: f(0) = 1, f(x) = b for 0 < x <= a, f(x) = 0 otherwise.
  TensorElement pure(Elem a, Elem b) const {
    TensorElement t = bottom();
    for (Elem x = 0; x < A_.size(); ++x)
      if (x != A_.bottom() && A_.leq(x, a)) t.f[x] = b;
    return t;
  }

  bool is_valid(const TensorElement& t) const {
    if (t.f.size() != A_.size() || t.f[A_.bottom()] != B_.top()) return false;
    for (Elem x = 0; x < A_.size(); ++x)
      for (Elem y = 0; y < A_.size(); ++y)
        if (t.f[A_.join(x, y)] != B_.meet(t.f[x], t.f[y])) return false;
    return true;
  }

  bool leq(const TensorElement& x, const TensorElement& y) const {
    for (Elem a = 0; a < A_.size(); ++a)
      if (!B_.leq(x.f[a], y.f[a])) return false;
    return true;
  }

  /// Least valid map above the pointwise join: closes under
  /// g(a) >= g(a') for a <= a' and g(a v a') >= g(a) ^ g(a').
  TensorElement join(const TensorElement& x, const TensorElement& y) const {
    const Elem na = static_cast<Elem>(A_.size());
    std::vector<Elem> g(na);
    for (Elem a = 0; a < na; ++a) g[a] = B_.join(x.f[a], y.f[a]);
    for (bool changed = true; changed;) {
      changed = false;
      for (Elem a = 0; a < na; ++a)
        for (Elem a2 = 0; a2 < na; ++a2) {
          if (A_.leq(a, a2)) {
            const Elem v = B_.join(g[a], g[a2]);
            if (v != g[a]) g[a] = v, changed = true;
          }
          const Elem j = A_.join(a, a2);
          const Elem v = B_.join(g[j], B_.meet(g[a], g[a2]));
          if (v != g[j]) g[j] = v, changed = true;
        }
    }
    return TensorElement{std::move(g)};
  }

  TensorElement meet(const TensorElement& x, const TensorElement& y) const {
    TensorElement t{std::vector<Elem>(A_.size())};
    for (Elem a = 0; a < A_.size(); ++a) t.f[a] = B_.meet(x.f[a], y.f[a]);
    return t;
  }

  RawBiIdeal to_raw(const TensorElement& t) const {
    RawBiIdeal s(A_.size(), B_.size());
    for (Elem a = 0; a < A_.size(); ++a)
      for (Elem b = 0; b < B_.size(); ++b)
        if (B_.leq(b, t.f[a])) s.insert(a, b);
    return s;
  }

  /// Inverse of to_raw for bi-ideals; throws for other subsets.
  TensorElement from_raw(const RawBiIdeal& s) const {
    if (!is_bi_ideal(A_, B_, s)) throw Error("subset is not a bi-ideal");
    TensorElement t{std::vector<Elem>(A_.size(), B_.bottom())};
    for (Elem a = 0; a < A_.size(); ++a)
      for (Elem b = 0; b < B_.size(); ++b)
        if (s.contains(a, b)) t.f[a] = B_.join(t.f[a], b);
    return t;
  }

  /// Maximal pairs of the bi-ideal outside the bottom set: (a, f(a)) with
  /// a, f(a) nonzero and a maximal in the fiber f^{-1}(f(a)).
  Capping capping(const TensorElement& t) const {
    Capping c;
    for (Elem a = 0; a < A_.size(); ++a) {
      if (a == A_.bottom() || t.f[a] == B_.bottom()) continue;
      bool maximal = true;
      for (Elem a2 = 0; a2 < A_.size() && maximal; ++a2)
        if (A_.lt(a, a2) && t.f[a2] == t.f[a]) maximal = false;
      if (maximal) c.pairs.emplace_back(a, t.f[a]);
    }
    return c;
  }

  /// Hereditary closure of the capping together with the bottom set.
  RawBiIdeal capping_closure(const Capping& c) const {
    RawBiIdeal s(A_.size(), B_.size());
    for (Elem a = 0; a < A_.size(); ++a)
      for (Elem b = 0; b < B_.size(); ++b) {
        bool in = a == A_.bottom() || b == B_.bottom();
        for (auto [ca, cb] : c.pairs)
          if (A_.leq(a, ca) && B_.leq(b, cb)) in = true;
        if (in) s.insert(a, b);
      }
    return s;
  }

  /// Every element, by backtracking over the values on J(A) (which
  /// determine f) and keeping the valid extensions.
  std::vector<TensorElement> elements(std::size_t guard) const {
    const auto J = join_irreducibles(A_);
    std::vector<Elem> val(J.size(), 0);
    std::vector<TensorElement> out;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == J.size()) {
        TensorElement t{std::vector<Elem>(A_.size(), B_.top())};
        for (Elem a = 0; a < A_.size(); ++a)
          for (std::size_t k = 0; k < J.size(); ++k)
            if (A_.leq(J[k], a)) t.f[a] = B_.meet(t.f[a], val[k]);
        if (is_valid(t)) {
          out.push_back(std::move(t));
          if (out.size() > guard) throw SizeLimitExceeded("tensor product exceeds the size guard");
        }
        return;
      }
      for (Elem b = 0; b < B_.size(); ++b) {
        bool ok = true;  // antitone on the join-irreducibles fixed so far
        for (std::size_t k = 0; k < i && ok; ++k) {
          if (A_.leq(J[k], J[i]) && !B_.leq(b, val[k])) ok = false;
          if (A_.leq(J[i], J[k]) && !B_.leq(val[k], b)) ok = false;
        }
        if (!ok) continue;
        val[i] = b;
        rec(i + 1);
      }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  FiniteLattice A_;
  FiniteLattice B_;
};

inline TensorElement pure_tensor(const FiniteLattice& A, const FiniteLattice& B, Elem a, Elem b) {
  return TensorProduct(A, B).pure(a, b);
}

inline TensorElement tensor_join(const TensorProduct& T, const TensorElement& x, const TensorElement& y) {
  return T.join(x, y);
}

inline TensorElement tensor_meet(const TensorProduct& T, const TensorElement& x, const TensorElement& y) {
  return T.meet(x, y);
}

inline Capping capping_of(const TensorProduct& T, const TensorElement& x) { return T.capping(x); }

/// A lattice built from a family of elements, with the correspondence kept.
template <class Element>
struct ElementLattice {
  std::vector<Element> elements;
  FiniteLattice lattice;
};

/// All bi-ideals in map form, ordered pointwise.
inline ElementLattice<TensorElement> tensor_lattice(const FiniteLattice& A, const FiniteLattice& B) {
  const TensorProduct T(A, B);
  auto elems = T.elements(size_guard(1000000));
  FiniteLattice L = FiniteLattice::from_order(elems.size(), [&](Elem i, Elem j) { return T.leq(elems[i], elems[j]); });
  return {std::move(elems), std::move(L)};
}

/// Oracle: every bi-ideal of A x B as a subset, obtained by closing the raw
/// pure tensors under joins (closure of unions), ordered by containment.
inline ElementLattice<RawBiIdeal> brute_force_biideals(const FiniteLattice& A, const FiniteLattice& B) {
  if (A.size() * B.size() > size_guard(64)) throw SizeLimitExceeded("brute_force_biideals needs |A|*|B| <= 64");
  std::set<RawBiIdeal> seen;
  std::vector<RawBiIdeal> all;
  const auto add = [&](RawBiIdeal s) {
    if (seen.insert(s).second) all.push_back(std::move(s));
  };
  add(biideal_closure(A, B, RawBiIdeal(A.size(), B.size())));
  for (Elem a = 0; a < A.size(); ++a)
    for (Elem b = 0; b < B.size(); ++b) add(biideal_closure(A, B, raw_pure_tensor(A, B, a, b)));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      RawBiIdeal u = all[i];
      u.unite(all[j]);
      add(biideal_closure(A, B, std::move(u)));
    }
  std::sort(all.begin(), all.end());
  FiniteLattice L = FiniteLattice::from_order(all.size(), [&](Elem i, Elem j) { return all[i].subset_of(all[j]); });
  return {std::move(all), std::move(L)};
}

struct TensunStep {
  Term term;
  Elem a_value;  // P(a_0, ..., a_{n-1})
  Elem b_value;  // P^d(b_0, ..., b_{n-1})
};

struct TensunResult {
  bool holds = false;          // union is a bi-ideal and equals the join
  bool union_is_bi_ideal = false;
  bool equal = false;
  std::size_t stable_depth = 0;  // first level that added no new value pair
  std::vector<TensunStep> trace;
};

/// Compares the join of the pure tensors a_i (x) b_i with the union of
/// P(a) (x) P^d(b) over lattice terms P in n variables. Terms are built
/// level by level from binary meets and joins of earlier witnesses; a term
/// is kept only if its value pair is new, so the union is complete once a
/// level adds nothing. Throws DepthExhausted if that has not happened after
/// `depth` levels.
inline TensunResult tensun_verify(const FiniteLattice& A, const FiniteLattice& B,
                                  const std::vector<std::pair<Elem, Elem>>& pairs, std::size_t depth) {
  if (pairs.empty() || pairs.size() > 3) throw Error("tensun_verify needs 1 to 3 pairs");
  if (depth > 4) throw Error("tensun_verify supports depth <= 4");
  const TensorProduct T(A, B);

  TensorElement lhs = T.bottom();
  std::map<std::string, Elem> at_a, at_b;
  TensunResult result;
  std::set<std::pair<Elem, Elem>> values;
  const auto record = [&](Term t) {
    const Elem av = eval_term(t, A, at_a);
    const Elem bv = eval_term(dual_term(t), B, at_b);
    if (!values.emplace(av, bv).second) return false;
    result.trace.push_back({std::move(t), av, bv});
    return true;
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto name = default_variable_name(i);
    at_a[name] = pairs[i].first;
    at_b[name] = pairs[i].second;
    lhs = T.join(lhs, T.pure(pairs[i].first, pairs[i].second));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) record(Term::var(default_variable_name(i)));

  bool stable = false;
  for (std::size_t level = 1; level <= depth && !stable; ++level) {
    const std::size_t prev = result.trace.size();
    for (std::size_t i = 0; i < prev; ++i)
      for (std::size_t j = i + 1; j < prev; ++j) {
        record(Term::meet(result.trace[i].term, result.trace[j].term));
        record(Term::join(result.trace[i].term, result.trace[j].term));
      }
    if (result.trace.size() == prev) {
      stable = true;
      result.stable_depth = level;
    }
  }
  if (!stable) throw DepthExhausted("union still growing after depth " + std::to_string(depth));

  RawBiIdeal uni(A.size(), B.size());
  for (const auto& step : result.trace) uni.unite(raw_pure_tensor(A, B, step.a_value, step.b_value));
  result.union_is_bi_ideal = is_bi_ideal(A, B, uni);
  result.equal = uni == T.to_raw(lhs);
  result.holds = result.union_is_bi_ideal && result.equal;
  return result;
}

}  // namespace latticeforge
