#pragma once

#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "latticeforge/lattice.hpp"

namespace latticeforge {

/// Nonzero elements with exactly one lower cover, in index order.
inline std::vector<Elem> join_irreducibles(const FiniteLattice& L) {
  std::vector<Elem> out;
  for (Elem x = 0; x < L.size(); ++x)
    if (x != L.bottom() && L.lower_covers(x).size() == 1) out.push_back(x);
  return out;
}

inline bool is_join_irreducible(const FiniteLattice& L, Elem x) {
  return x != L.bottom() && L.lower_covers(x).size() == 1;
}

/// Least subset containing `generators` that is closed under join and meet.
inline std::set<Elem> sublattice_generated(const FiniteLattice& L, const std::set<Elem>& generators) {
  std::set<Elem> closed = generators;
  std::vector<Elem> frontier(generators.begin(), generators.end());
  while (!frontier.empty()) {
    const Elem x = frontier.back();
    frontier.pop_back();
    const std::vector<Elem> current(closed.begin(), closed.end());
    for (Elem y : current)
      for (Elem z : {L.join(x, y), L.meet(x, y)})
        if (closed.insert(z).second) frontier.push_back(z);
  }
  return closed;
}

enum class Identity { modular, distributive, join_semidistributive };

inline std::string_view to_string(Identity id) {
  switch (id) {
    case Identity::modular: return "modular";
    case Identity::distributive: return "distributive";
    case Identity::join_semidistributive: return "join_semidistributive";
  }
  return "?";
}

inline std::optional<Identity> parse_identity(std::string_view s) {
  if (s == "modular") return Identity::modular;
  if (s == "distributive") return Identity::distributive;
  if (s == "join_semidistributive" || s == "jsd" || s == "sd_join") return Identity::join_semidistributive;
  return std::nullopt;
}

struct IdentityCheck {
  bool holds = true;
  std::optional<Triple<Elem>> witness;
};

/// Exhaustive check over all triples. The witness is the first failing
/// triple in lexicographic order.
///   modular:      x <= z  implies  x v (y ^ z) = (x v y) ^ z
///   distributive: x ^ (y v z) = (x ^ y) v (x ^ z)
///   join-SD:      x v z = y v z  implies  x v z = (x ^ y) v z
inline IdentityCheck check_identity(const FiniteLattice& L, Identity which) {
  const Elem n = static_cast<Elem>(L.size());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        bool ok = true;
        switch (which) {
          case Identity::modular:
            ok = !L.leq(x, z) || L.join(x, L.meet(y, z)) == L.meet(L.join(x, y), z);
            break;
          case Identity::distributive:
            ok = L.meet(x, L.join(y, z)) == L.join(L.meet(x, y), L.meet(x, z));
            break;
          case Identity::join_semidistributive:
            ok = L.join(x, z) != L.join(y, z) || L.join(x, z) == L.join(L.meet(x, y), z);
            break;
        }
        if (!ok) return {false, Triple<Elem>{x, y, z}};
      }
  return {};
}

/// u -> (x v (y ^ z), y v (x ^ z), z v (x ^ y)). `Alg` is any type exposing
/// join and meet on its value_type (FiniteLattice, KLattice).
template <class Alg>
Triple<typename Alg::value_type> triple_step(const Alg& alg, const Triple<typename Alg::value_type>& u) {
  return {alg.join(u.x, alg.meet(u.y, u.z)), alg.join(u.y, alg.meet(u.x, u.z)), alg.join(u.z, alg.meet(u.x, u.y))};
}

template <class Alg>
Triple<typename Alg::value_type> triple_iterate(const Alg& alg, Triple<typename Alg::value_type> u, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) u = triple_step(alg, u);
  return u;
}

/// Number of steps after which the orbit of u is constant: least k with
/// u^(k+1) = u^(k), or nullopt if that needs more than `cutoff` steps.
template <class Alg>
std::optional<std::size_t> triple_stabilization(const Alg& alg, Triple<typename Alg::value_type> u,
                                                std::size_t cutoff) {
  for (std::size_t k = 0; k <= cutoff; ++k) {
    const auto next = triple_step(alg, u);
    if (next == u) return k;
    u = next;
  }
  return std::nullopt;
}

/// Least h >= 1 such that u^(h+1) = u^(h) for every triple, or nullopt when
/// some triple is still moving after `cutoff` steps.
inline std::optional<std::size_t> h_modularity_index(const FiniteLattice& L, std::size_t cutoff) {
  if (cutoff < 1) throw Error("cutoff must be at least 1");
  std::size_t h = 1;
  const Elem n = static_cast<Elem>(L.size());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        const auto k = triple_stabilization(L, Triple<Elem>{x, y, z}, cutoff);
        if (!k) return std::nullopt;
        h = std::max(h, *k);
      }
  return h;
}

}  // namespace latticeforge
