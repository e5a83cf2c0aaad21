#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "latticeforge/lattice.hpp"

namespace latticeforge {

namespace detail {

// A naturally labeled poset on k points: strict_down[i] is the bitmask of
// points strictly below i, and every such point has a smaller label.
struct LabeledPoset {
  std::size_t k = 0;
  std::vector<std::uint32_t> strict_down;

  bool lt(std::size_t i, std::size_t j) const { return (strict_down[j] >> i) & 1u; }
};

// Bit string over pairs i < j, most significant first.
inline std::uint64_t poset_code(const LabeledPoset& p, const std::vector<std::size_t>& relabel) {
  // relabel[old] = new label
  std::vector<std::uint32_t> down(p.k, 0);
  for (std::size_t j = 0; j < p.k; ++j)
    for (std::size_t i = 0; i < p.k; ++i)
      if (p.lt(i, j)) down[relabel[j]] |= 1u << relabel[i];
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < p.k; ++i)
    for (std::size_t j = i + 1; j < p.k; ++j) code = (code << 1) | ((down[j] >> i) & 1u);
  return code;
}

inline bool naturally_labeled(const LabeledPoset& p, const std::vector<std::size_t>& relabel) {
  for (std::size_t j = 0; j < p.k; ++j)
    for (std::size_t i = 0; i < p.k; ++i)
      if (p.lt(i, j) && relabel[i] > relabel[j]) return false;
  return true;
}

// The labeled poset is the canonical representative of its isomorphism
// class: its code is minimal among all natural relabelings.
inline bool is_canonical(const LabeledPoset& p) {
  std::vector<std::size_t> perm(p.k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  const std::uint64_t own = poset_code(p, perm);
  do {
    if (naturally_labeled(p, perm) && poset_code(p, perm) < own) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

// Adding a bottom and a top yields a lattice iff every pair has a join.
inline bool bounded_completion_is_lattice(const LabeledPoset& p) {
  for (std::size_t i = 0; i < p.k; ++i)
    for (std::size_t j = i + 1; j < p.k; ++j) {
      std::uint32_t upper = 0;
      for (std::size_t u = 0; u < p.k; ++u) {
        const bool above_i = u == i || p.lt(i, u);
        const bool above_j = u == j || p.lt(j, u);
        if (above_i && above_j) upper |= 1u << u;
      }
      if (upper == 0) continue;  // join is the new top
      bool has_least = false;
      for (std::size_t u = 0; u < p.k && !has_least; ++u) {
        if (!((upper >> u) & 1u)) continue;
        // u is least iff every other upper bound lies strictly above u
        bool least = true;
        for (std::size_t v = 0; v < p.k && least; ++v)
          if (v != u && ((upper >> v) & 1u) && !p.lt(u, v)) least = false;
        has_least = least;
      }
      if (!has_least) return false;
    }
  return true;
}

inline FiniteLattice bounded_completion(const LabeledPoset& p) {
  const std::size_t n = p.k + 2;
  const Elem top = static_cast<Elem>(n - 1);
  return FiniteLattice::from_order(n, [&](Elem x, Elem y) {
    if (x == y || x == 0 || y == top) return true;
    if (y == 0 || x == top) return false;
    return p.lt(x - 1, y - 1);
  });
}

template <class F>
void extend_posets(LabeledPoset& p, std::size_t target, F& emit) {
  if (p.k == target) {
    emit(p);
    return;
  }
  const std::size_t i = p.k;
  for (std::uint32_t mask = 0; mask < (1u << i); ++mask) {
    bool down_closed = true;
    for (std::size_t j = 0; j < i && down_closed; ++j)
      if (((mask >> j) & 1u) && (p.strict_down[j] & ~mask)) down_closed = false;
    if (!down_closed) continue;
    p.strict_down.push_back(mask);
    ++p.k;
    extend_posets(p, target, emit);
    --p.k;
    p.strict_down.pop_back();
  }
}

}  // namespace detail

/// Calls `visit` once per isomorphism class of n-element lattices, n <= 8.
/// Generates naturally labeled posets for the n-2 interior elements and
/// keeps exactly the labeled poset whose code is canonical for its class.
template <class Visit>
void for_each_lattice(std::size_t n, Visit&& visit) {
  if (n > 8) throw SizeLimitExceeded("enumerate_lattices supports n <= 8");
  if (n == 0) return;
  if (n == 1) {
    visit(FiniteLattice::from_order(1, [](Elem, Elem) { return true; }));
    return;
  }
  detail::LabeledPoset p;
  auto emit = [&](const detail::LabeledPoset& q) {
    if (detail::bounded_completion_is_lattice(q) && detail::is_canonical(q)) visit(detail::bounded_completion(q));
  };
  detail::extend_posets(p, n - 2, emit);
}

inline std::vector<FiniteLattice> enumerate_lattices(std::size_t n) {
  std::vector<FiniteLattice> out;
  for_each_lattice(n, [&](FiniteLattice L) { out.push_back(std::move(L)); });
  return out;
}

}  // namespace latticeforge
