#pragma once

#include <string>
#include <utility>
#include <vector>

#include "latticeforge/lattice.hpp"

namespace latticeforge {

/// The n-element chain 0 < 1 < ... < n-1.
inline FiniteLattice chain(std::size_t n) {
  std::vector<std::pair<Elem, Elem>> covers;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i) covers.emplace_back(static_cast<Elem>(i), static_cast<Elem>(i + 1));
  return FiniteLattice::from_covers(n, covers, std::move(names));
}

/// The Boolean lattice of subsets of a k-element set; element i is the subset
/// with bitmask i. Labels list the members as letters, "0" for the empty set.
inline FiniteLattice boolean(std::size_t k) {
  if (k > 12) throw SizeLimitExceeded("boolean lattice too large");
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::pair<Elem, Elem>> covers;
  std::vector<std::string> names;
  for (std::size_t s = 0; s < n; ++s) {
    std::string label;
    for (std::size_t b = 0; b < k; ++b)
      if (s & (std::size_t{1} << b)) label.push_back(static_cast<char>('a' + b));
    names.push_back(label.empty() ? "0" : label);
    for (std::size_t b = 0; b < k; ++b)
      if (!(s & (std::size_t{1} << b))) covers.emplace_back(static_cast<Elem>(s), static_cast<Elem>(s | (std::size_t{1} << b)));
  }
  return FiniteLattice::from_covers(n, covers, std::move(names));
}

/// The diamond: 0 < p, q, r < 1.
inline FiniteLattice m3() {
  const std::vector<std::pair<Elem, Elem>> covers{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};
  return FiniteLattice::from_covers(5, covers, {"0", "p", "q", "r", "1"});
}

/// The pentagon: 0 < a < c < 1 and 0 < b < 1.
inline FiniteLattice n5() {
  const std::vector<std::pair<Elem, Elem>> covers{{0, 1}, {1, 3}, {3, 4}, {0, 2}, {2, 4}};
  return FiniteLattice::from_covers(5, covers, {"0", "a", "b", "c", "1"});
}

/// Element layout of interval_lattice(n): index 0 is the empty interval, the
/// rest are [lo, hi] in lexicographic order.
struct IntervalIndex {
  std::size_t n;
  Elem of(std::size_t lo, std::size_t hi) const {
    // intervals starting before lo: sum_{s<lo} (n - s)
    return static_cast<Elem>(1 + lo * n - lo * (lo - 1) / 2 + (hi - lo));
  }
  Elem atom(std::size_t u) const { return of(u, u); }
};

/// The lattice of all subintervals of the chain 0..n-1 (the empty interval
/// included), ordered by containment.
inline FiniteLattice interval_lattice(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> iv;
  std::vector<std::string> names{"{}"};
  for (std::size_t lo = 0; lo < n; ++lo)
    for (std::size_t hi = lo; hi < n; ++hi) {
      iv.emplace_back(lo, hi);
      names.push_back("[" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    }
  const auto leq = [&](Elem a, Elem b) {
    if (a == 0) return true;
    if (b == 0) return false;
    const auto [alo, ahi] = iv[a - 1];
    const auto [blo, bhi] = iv[b - 1];
    return blo <= alo && ahi <= bhi;
  };
  return FiniteLattice::from_order(iv.size() + 1, leq, std::move(names));
}

}  // namespace latticeforge
