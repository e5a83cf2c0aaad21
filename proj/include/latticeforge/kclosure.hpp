#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "latticeforge/identities.hpp"
#include "latticeforge/klat.hpp"
#include "latticeforge/lattice.hpp"
#include "latticeforge/tensor.hpp"

namespace latticeforge {

/// Antitone map J(K) -> L with finite range. x(a_n) is a_chain[n] for
/// n < a_chain.size() and a_lim afterwards; likewise for b. Kept normalized:
/// no trailing chain entry equals its limit.
struct AntitoneAssignment {
  Elem c_val = 0;
  std::vector<Elem> a_chain;
  Elem a_lim = 0;
  std::vector<Elem> b_chain;
  Elem b_lim = 0;

  Elem at_a(std::size_t n) const { return n < a_chain.size() ? a_chain[n] : a_lim; }
  Elem at_b(std::size_t n) const { return n < b_chain.size() ? b_chain[n] : b_lim; }

  /// Least d with x(a_n), x(b_n) at their limits for n >= d.
  std::size_t degree() const { return std::max(a_chain.size(), b_chain.size()); }

  void normalize() {
    while (!a_chain.empty() && a_chain.back() == a_lim) a_chain.pop_back();
    while (!b_chain.empty() && b_chain.back() == b_lim) b_chain.pop_back();
  }

  friend bool operator==(const AntitoneAssignment&, const AntitoneAssignment&) = default;
};

/// Value of x at a join-irreducible of K.
inline Elem assignment_at(const AntitoneAssignment& x, const KElem& p) {
  switch (p.kind) {
    case KKind::c: return x.c_val;
    case KKind::a: return x.at_a(p.m);
    case KKind::b: return x.at_b(p.m);
    default: throw NotJoinIrreducible(format_kelem(p) + " is not join-irreducible in K");
  }
}

inline AntitoneAssignment make_assignment(Elem c_val, std::vector<Elem> a_chain, Elem a_lim, std::vector<Elem> b_chain,
                                          Elem b_lim) {
  AntitoneAssignment x{c_val, std::move(a_chain), a_lim, std::move(b_chain), b_lim};
  x.normalize();
  return x;
}

inline AntitoneAssignment constant_assignment(Elem v) { return make_assignment(v, {}, v, {}, v); }

inline AntitoneAssignment bottom_assignment(const FiniteLattice& L) { return constant_assignment(L.bottom()); }

/// Both chains nondecreasing and below their limits.
inline bool is_antitone(const FiniteLattice& L, const AntitoneAssignment& x) {
  const auto chain_ok = [&](const std::vector<Elem>& ch, Elem lim) {
    for (std::size_t i = 0; i < ch.size(); ++i) {
      if (ch[i] >= L.size() || !L.leq(ch[i], lim)) return false;
      if (i > 0 && !L.leq(ch[i - 1], ch[i])) return false;
    }
    return true;
  };
  return x.c_val < L.size() && x.a_lim < L.size() && x.b_lim < L.size() && chain_ok(x.a_chain, x.a_lim) &&
         chain_ok(x.b_chain, x.b_lim);
}

/// Pointwise order.
inline bool assignment_leq(const FiniteLattice& L, const AntitoneAssignment& x, const AntitoneAssignment& y) {
  const std::size_t d = std::max(x.degree(), y.degree());
  if (!L.leq(x.c_val, y.c_val)) return false;
  for (std::size_t n = 0; n <= d; ++n)
    if (!L.leq(x.at_a(n), y.at_a(n)) || !L.leq(x.at_b(n), y.at_b(n))) return false;
  return true;
}

/// x -> x^(1):
///   c       -> x(c) v (x(a_inf) ^ x(b_inf))
///   a_0     -> x(a_0)
///   a_{n+1} -> x(a_{n+1}) v (x(b_n) ^ x(c))
/// and symmetrically for b.
inline AntitoneAssignment step(const FiniteLattice& L, const AntitoneAssignment& x) {
  const std::size_t d = x.degree();
  AntitoneAssignment y;
  y.c_val = L.join(x.c_val, L.meet(x.a_lim, x.b_lim));
  y.a_lim = L.join(x.a_lim, L.meet(x.b_lim, x.c_val));
  y.b_lim = L.join(x.b_lim, L.meet(x.a_lim, x.c_val));
  y.a_chain.resize(d + 1);
  y.b_chain.resize(d + 1);
  y.a_chain[0] = x.at_a(0);
  y.b_chain[0] = x.at_b(0);
  for (std::size_t n = 0; n < d; ++n) {
    y.a_chain[n + 1] = L.join(x.at_a(n + 1), L.meet(x.at_b(n), x.c_val));
    y.b_chain[n + 1] = L.join(x.at_b(n + 1), L.meet(x.at_a(n), x.c_val));
  }
  y.normalize();
  return y;
}

/// The limit triple (x(a_inf), x(b_inf), x(c)).
inline Triple<Elem> ell(const AntitoneAssignment& x) { return {x.a_lim, x.b_lim, x.c_val}; }

inline bool is_step_fixed(const FiniteLattice& L, const AntitoneAssignment& x) { return step(L, x) == x; }

/// Pointwise join; the shorter chain is padded with its limit.
inline AntitoneAssignment vee_c(const FiniteLattice& L, const AntitoneAssignment& x, const AntitoneAssignment& y) {
  const std::size_t d = std::max(x.degree(), y.degree());
  AntitoneAssignment z{L.join(x.c_val, y.c_val), {}, L.join(x.a_lim, y.a_lim), {}, L.join(x.b_lim, y.b_lim)};
  for (std::size_t n = 0; n < d; ++n) {
    z.a_chain.push_back(L.join(x.at_a(n), y.at_a(n)));
    z.b_chain.push_back(L.join(x.at_b(n), y.at_b(n)));
  }
  z.normalize();
  return z;
}

/// A step-fixed assignment, standing for the bi-ideal it induces on K x L.
struct KTensorElement {
  AntitoneAssignment x;
  friend bool operator==(const KTensorElement&, const KTensorElement&) = default;
};

struct ClosureTrace {
  KTensorElement value;
  std::size_t iterations = 0;  // steps until the first repeat
  std::size_t bound = 0;       // d(x^(1)) + h
};

/// The closure machinery over a fixed h-modular lattice L.
class KClosure {
 public:
  /// Throws NotHModular unless every triple of L stabilizes within h steps.
  KClosure(FiniteLattice L, std::size_t h) : L_(std::move(L)), h_(h) {
    if (h_ < 1) throw NotHModular("h must be positive");
    const auto idx = h_modularity_index(L_, h_);
    if (!idx || *idx > h_) throw NotHModular("lattice is not " + std::to_string(h_) + "-modular");
  }

  const FiniteLattice& lattice() const { return L_; }
  std::size_t h() const { return h_; }

  /// Iterates step to a literal fixed point and records how many steps that
  /// took next to the bound d(x^(1)) + h. No bound is enforced here.
  ClosureTrace closure_trace(const AntitoneAssignment& x) const {
    if (!is_antitone(L_, x)) throw Error("assignment is not antitone");
    ClosureTrace t;
    AntitoneAssignment cur = x;
    AntitoneAssignment next = step(L_, cur);
    t.bound = next.degree() + h_;
    const std::size_t cap = 4 * (x.degree() + 2 * h_ + L_.size() + 4);
    while (!(next == cur)) {
      if (++t.iterations > cap) throw BoundExceeded("closure did not stabilize");
      cur = std::move(next);
      next = step(L_, cur);
    }
    t.value = KTensorElement{std::move(cur)};
    return t;
  }

  /// Least step-fixed assignment above x. Throws BoundExceeded when the
  /// fixed point needs more than d(x^(1)) + h steps.
  KTensorElement closure(const AntitoneAssignment& x) const {
    auto t = closure_trace(x);
    if (t.iterations > t.bound)
      throw BoundExceeded("closure took " + std::to_string(t.iterations) + " steps, bound " + std::to_string(t.bound));
    return std::move(t.value);
  }

  KTensorElement vee_star(const KTensorElement& x, const KTensorElement& y) const {
    return closure(vee_c(L_, x.x, y.x));
  }

  /// Pointwise meet. Step-fixed maps are closed under it.
  KTensorElement meet_star(const KTensorElement& x, const KTensorElement& y) const {
    const std::size_t d = std::max(x.x.degree(), y.x.degree());
    AntitoneAssignment z{L_.meet(x.x.c_val, y.x.c_val), {}, L_.meet(x.x.a_lim, y.x.a_lim), {},
                         L_.meet(x.x.b_lim, y.x.b_lim)};
    for (std::size_t n = 0; n < d; ++n) {
      z.a_chain.push_back(L_.meet(x.x.at_a(n), y.x.at_a(n)));
      z.b_chain.push_back(L_.meet(x.x.at_b(n), y.x.at_b(n)));
    }
    z.normalize();
    if (!is_step_fixed(L_, z)) throw TheoremViolated("meet of step-fixed assignments is not step-fixed");
    return KTensorElement{std::move(z)};
  }

  /// x(p) = xi for join-irreducibles p <= u, 0 elsewhere.
  KTensorElement pure_preimage(const KElem& u, Elem xi) const {
    const Elem zero = L_.bottom();
    const JiSet s = ji_set(u);
    AntitoneAssignment x;
    x.c_val = s.has_c ? xi : zero;
    x.a_lim = s.a_from == JiSet::none ? zero : xi;
    x.b_lim = s.b_from == JiSet::none ? zero : xi;
    if (s.a_from != JiSet::none) x.a_chain.assign(s.a_from, zero);
    if (s.b_from != JiSet::none) x.b_chain.assign(s.b_from, zero);
    x.normalize();
    if (!is_step_fixed(L_, x)) throw TheoremViolated("pure preimage of " + format_kelem(u) + " is not step-fixed");
    return KTensorElement{std::move(x)};
  }

  /// The join-to-meet extension of x to K \ {0}: the meet of x over a
  /// decomposition of e into at most two join-irreducibles.
  Elem extend_bar(const KTensorElement& x, const KElem& e) const {
    const auto& a = x.x;
    switch (e.kind) {
      case KKind::zero: throw ZeroArgument("extend_bar is undefined at 0");
      case KKind::c: return a.c_val;
      case KKind::a: return a.at_a(e.m);
      case KKind::b: return a.at_b(e.m);
      case KKind::ac: return L_.meet(a.at_a(e.m), a.c_val);
      case KKind::bc: return L_.meet(a.at_b(e.m), a.c_val);
      case KKind::t: return L_.meet(a.at_a(e.m), a.at_b(e.m));
    }
    return L_.top();
  }

  /// Meet of x over the whole ji-set of e. Chains increase, so the meet over
  /// a tail is its first value.
  Elem extend_full(const KTensorElement& x, const KElem& e) const {
    if (e.kind == KKind::zero) throw ZeroArgument("extend_full is undefined at 0");
    const JiSet s = ji_set(e);
    Elem v = L_.top();
    if (s.a_from != JiSet::none) v = L_.meet(v, x.x.at_a(s.a_from));
    if (s.b_from != JiSet::none) v = L_.meet(v, x.x.at_b(s.b_from));
    if (s.has_c) v = L_.meet(v, x.x.c_val);
    return v;
  }

  /// f(u) = extend_bar(x, u) on K_N, f(0) = 1.
  TensorElement epsilon_restricted(const KTensorElement& x, const KTruncation& KN) const {
    if (KN.N < x.x.degree() + 2)
      throw TruncationTooSmall("truncation index " + std::to_string(KN.N) + " is below degree + 2 = " +
                               std::to_string(x.x.degree() + 2));
    TensorElement t{std::vector<Elem>(KN.elements.size())};
    for (Elem i = 0; i < KN.elements.size(); ++i)
      t.f[i] = KN.elements[i].kind == KKind::zero ? L_.top() : extend_bar(x, KN.elements[i]);
    return t;
  }

  /// For each value xi of the extension, the maximal elements of its fiber.
  /// The fibers are scanned at indices <= d + 2 and again at d + 4; the
  /// maximal elements must agree.
  std::vector<std::pair<KElem, Elem>> gamma_capping(const KTensorElement& x) const {
    const auto scan = [&](std::uint32_t n) {
      std::map<Elem, std::vector<KElem>> fibers;
      for (const auto& e : k_elements(n))
        if (e.kind != KKind::zero) fibers[extend_bar(x, e)].push_back(e);
      std::vector<std::pair<KElem, Elem>> out;
      for (const auto& [xi, fiber] : fibers)
        for (const auto& u : fiber) {
          bool maximal = true;
          for (const auto& v : fiber)
            if (!(u == v) && k_leq(u, v)) maximal = false;
          if (maximal) out.emplace_back(u, xi);
        }
      std::sort(out.begin(), out.end());
      return out;
    };
    const auto d = static_cast<std::uint32_t>(x.x.degree());
    auto gamma = scan(d + 2);
    if (gamma != scan(d + 4)) throw FiberUnstable("fiber maxima moved when the scan bound was raised");
    return gamma;
  }

 private:
  FiniteLattice L_;
  std::size_t h_;
};

/// Sizes of the fibers' maximal sets, keyed by the value of the extension.
inline std::map<Elem, std::size_t> gamma_fiber_sizes(const std::vector<std::pair<KElem, Elem>>& gamma) {
  std::map<Elem, std::size_t> sizes;
  for (const auto& [u, xi] : gamma) ++sizes[xi];
  return sizes;
}

/// Hereditary closure of the capping together with the bottom set, inside
/// K_N x L.
inline RawBiIdeal gamma_closure(const KTruncation& KN, const FiniteLattice& L,
                                const std::vector<std::pair<KElem, Elem>>& gamma) {
  Capping c;
  for (const auto& [u, xi] : gamma)
    if (KN.contains(u)) c.pairs.emplace_back(KN.index_of(u), xi);
  return TensorProduct(KN.lattice, L).capping_closure(c);
}

struct CappedReport {
  KTensorElement joined;
  std::size_t degree = 0;
  std::vector<std::pair<KElem, Elem>> gamma;
  std::size_t max_fiber = 0;
  bool oracle_equal = false;   // epsilon_restricted agrees with the brute-force closure
  bool capping_equal = false;  // closure of gamma agrees with epsilon_restricted
};

/// Joins the pure preimages of the given tensors, computes the capping and
/// compares the result with the brute-force bi-ideal generated by the same
/// pure tensors in K_N x L. Throws MismatchWithOracle on disagreement.
inline CappedReport verify_capped(const KClosure& kc, const std::vector<std::pair<KElem, Elem>>& tensors,
                                  std::uint32_t N) {
  const FiniteLattice& L = kc.lattice();
  CappedReport r;
  r.joined = KTensorElement{bottom_assignment(L)};
  for (const auto& [u, xi] : tensors) r.joined = kc.vee_star(r.joined, kc.pure_preimage(u, xi));
  r.degree = r.joined.x.degree();
  const KTruncation KN = k_truncation(N);
  for (const auto& [u, xi] : tensors)
    if (!KN.contains(u)) throw TruncationTooSmall(format_kelem(u) + " is outside K_" + std::to_string(N));
  const TensorElement eps = kc.epsilon_restricted(r.joined, KN);
  r.gamma = kc.gamma_capping(r.joined);
  for (const auto& [xi, n] : gamma_fiber_sizes(r.gamma)) r.max_fiber = std::max(r.max_fiber, n);

  RawBiIdeal seed(KN.elements.size(), L.size());
  const TensorProduct T(KN.lattice, L);
  for (const auto& [u, xi] : tensors) seed.unite(raw_pure_tensor(KN.lattice, L, KN.index_of(u), xi));
  const RawBiIdeal oracle = biideal_closure(KN.lattice, L, std::move(seed));
  const RawBiIdeal mine = T.to_raw(eps);
  r.oracle_equal = oracle == mine;
  r.capping_equal = gamma_closure(KN, L, r.gamma) == mine;
  if (!r.oracle_equal) throw MismatchWithOracle("bi-ideal differs from the brute-force closure in K_" + std::to_string(N));
  if (!r.capping_equal) throw MismatchWithOracle("capping does not regenerate the bi-ideal");
  return r;
}

}  // namespace latticeforge
