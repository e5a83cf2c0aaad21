#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "latticeforge/lattice.hpp"

namespace latticeforge {

namespace detail {

// Isomorphism-invariant signature of every element: down-set size, up-set
// size, lower and upper cover counts, height above bottom.
inline std::vector<std::array<std::size_t, 5>> signatures(const FiniteLattice& L) {
  const std::size_t n = L.size();
  std::vector<std::array<std::size_t, 5>> sig(n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      if (L.leq(y, x)) ++sig[x][0];
      if (L.leq(x, y)) ++sig[x][1];
    }
    sig[x][2] = L.lower_covers(x).size();
    sig[x][3] = L.upper_covers(x).size();
  }
  std::vector<Elem> order(n);
  for (Elem x = 0; x < n; ++x) order[x] = x;
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) { return sig[a][0] < sig[b][0]; });
  for (Elem y : order)
    for (Elem lc : L.lower_covers(y)) sig[y][4] = std::max(sig[y][4], sig[lc][4] + 1);
  return sig;
}

}  // namespace detail

/// Returns an order isomorphism L1 -> L2 (as an index map) if one exists.
/// Backtracking over elements in a linear extension of L1, pruned by
/// element signatures and order consistency with earlier assignments.
inline std::optional<std::vector<Elem>> are_isomorphic(const FiniteLattice& L1, const FiniteLattice& L2) {
  const std::size_t n = L1.size();
  if (n != L2.size()) return std::nullopt;
  const auto s1 = detail::signatures(L1);
  const auto s2 = detail::signatures(L2);
  {
    auto a = s1, b = s2;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<Elem> order(n);
  for (Elem x = 0; x < n; ++x) order[x] = x;
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) { return s1[a] < s1[b]; });

  std::vector<Elem> map(n, 0);
  std::vector<std::uint8_t> used(n, 0);
  const auto consistent = [&](std::size_t depth, Elem img) {
    const Elem x = order[depth];
    for (std::size_t d = 0; d < depth; ++d) {
      const Elem y = order[d];
      if (L1.leq(x, y) != L2.leq(img, map[y]) || L1.leq(y, x) != L2.leq(map[y], img)) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const Elem x = order[depth];
    for (Elem img = 0; img < n; ++img) {
      if (used[img] || s2[img] != s1[x] || !consistent(depth, img)) continue;
      used[img] = 1;
      map[x] = img;
      if (extend(depth + 1)) return true;
      used[img] = 0;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

}  // namespace latticeforge
