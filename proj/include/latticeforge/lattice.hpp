#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latticeforge/errors.hpp"

namespace latticeforge {

/// Elements of a finite lattice are indices into its tables.
using Elem = std::uint32_t;

/// A triple of lattice elements. Also instantiated with elements of the
/// symbolic lattice K.
template <class T>
struct Triple {
  T x{};
  T y{};
  T z{};
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// A finite bounded lattice stored as its order relation plus eagerly computed
/// join and meet tables. Immutable after construction.
class FiniteLattice {
 public:
  using value_type = Elem;

  /// Builds the lattice whose order is the reflexive-transitive closure of
  /// `covers` (pairs lower, upper). Throws CyclicCovers or NotALattice.
  static FiniteLattice from_covers(std::size_t n, std::span<const std::pair<Elem, Elem>> covers,
                                   std::vector<std::string> names = {}) {
    if (n == 0) throw Error("a lattice needs at least one element");
    std::vector<std::uint8_t> reach(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) reach[i * n + i] = 1;
    for (auto [lo, hi] : covers) {
      if (lo >= n || hi >= n) throw Error("cover index out of range");
      if (lo == hi) throw CyclicCovers("self-cover on element " + std::to_string(lo));
      reach[lo * n + hi] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (reach[i * n + k])
          for (std::size_t j = 0; j < n; ++j)
            if (reach[k * n + j]) reach[i * n + j] = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (reach[i * n + j] && reach[j * n + i])
          throw CyclicCovers("cover relation has a cycle through " + std::to_string(i) + " and " +
                             std::to_string(j));
    return FiniteLattice(n, std::move(reach), std::move(names));
  }

  /// Builds a lattice from an arbitrary order predicate, which must be a
  /// partial order.
  static FiniteLattice from_order(std::size_t n, const std::function<bool(Elem, Elem)>& leq,
                                  std::vector<std::string> names = {}) {
    if (n == 0) throw Error("a lattice needs at least one element");
    std::vector<std::uint8_t> rel(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rel[i * n + j] = leq(static_cast<Elem>(i), static_cast<Elem>(j)) ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!rel[i * n + i]) throw Error("order relation is not reflexive");
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && rel[i * n + j] && rel[j * n + i]) throw CyclicCovers("order relation is not antisymmetric");
        if (!rel[i * n + j]) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (rel[j * n + k] && !rel[i * n + k]) throw Error("order relation is not transitive");
      }
    }
    return FiniteLattice(n, std::move(rel), std::move(names));
  }

  std::size_t size() const { return n_; }
  bool leq(Elem x, Elem y) const { return leq_[x * n_ + y] != 0; }
  bool lt(Elem x, Elem y) const { return x != y && leq(x, y); }
  bool comparable(Elem x, Elem y) const { return leq(x, y) || leq(y, x); }
  Elem join(Elem x, Elem y) const { return join_[x * n_ + y]; }
  Elem meet(Elem x, Elem y) const { return meet_[x * n_ + y]; }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  std::span<const Elem> lower_covers(Elem x) const { return lower_[x]; }
  std::span<const Elem> upper_covers(Elem x) const { return upper_[x]; }

  /// All cover pairs (lower, upper), sorted lexicographically.
  std::vector<std::pair<Elem, Elem>> covers() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem x = 0; x < n_; ++x)
      for (Elem y : upper_[x]) out.emplace_back(x, y);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_names() const { return !names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  std::string name(Elem x) const { return names_.empty() ? std::to_string(x) : names_[x]; }

  /// Looks an element up by label, falling back to a decimal index.
  std::optional<Elem> find(const std::string& label) const {
    for (Elem x = 0; x < names_.size(); ++x)
      if (names_[x] == label) return x;
    if (!label.empty() && std::all_of(label.begin(), label.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const auto v = std::stoull(label);
      if (v < n_) return static_cast<Elem>(v);
    }
    return std::nullopt;
  }

  Elem join_all(std::span<const Elem> xs) const {
    Elem r = bottom_;
    for (Elem x : xs) r = join(r, x);
    return r;
  }
  Elem meet_all(std::span<const Elem> xs) const {
    Elem r = top_;
    for (Elem x : xs) r = meet(r, x);
    return r;
  }

  /// Same underlying order with labels dropped or replaced.
  FiniteLattice with_names(std::vector<std::string> names) const {
    FiniteLattice copy = *this;
    if (!names.empty() && names.size() != n_) throw Error("name count does not match lattice size");
    copy.names_ = std::move(names);
    return copy;
  }

  friend bool operator==(const FiniteLattice& a, const FiniteLattice& b) {
    return a.n_ == b.n_ && a.leq_ == b.leq_ && a.names_ == b.names_;
  }

 private:
  FiniteLattice(std::size_t n, std::vector<std::uint8_t> rel, std::vector<std::string> names)
      : n_(n), leq_(std::move(rel)), names_(std::move(names)) {
    if (!names_.empty() && names_.size() != n_) throw Error("name count does not match lattice size");
    build_tables();
    build_covers();
  }

  void build_tables() {
    const std::size_t n = n_;
    std::vector<std::size_t> down(n, 0), up(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (leq_[j * n + i]) ++down[i];
        if (leq_[i * n + j]) ++up[i];
      }
    join_.assign(n * n, 0);
    meet_.assign(n * n, 0);
    std::vector<Elem> bounds;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x; y < n; ++y) {
        // Least upper bound: the upper bound with the smallest down-set must lie below all others.
        bounds.clear();
        for (std::size_t u = 0; u < n; ++u)
          if (leq_[x * n + u] && leq_[y * n + u]) bounds.push_back(static_cast<Elem>(u));
        if (bounds.empty()) throw NotALattice(x, y);
        Elem lub = *std::min_element(bounds.begin(), bounds.end(),
                                     [&](Elem a, Elem b) { return down[a] < down[b]; });
        for (Elem u : bounds)
          if (!leq_[lub * n + u]) throw NotALattice(x, y);
        bounds.clear();
        for (std::size_t l = 0; l < n; ++l)
          if (leq_[l * n + x] && leq_[l * n + y]) bounds.push_back(static_cast<Elem>(l));
        if (bounds.empty()) throw NotALattice(x, y);
        Elem glb = *std::min_element(bounds.begin(), bounds.end(),
                                     [&](Elem a, Elem b) { return up[a] < up[b]; });
        for (Elem l : bounds)
          if (!leq_[l * n + glb]) throw NotALattice(x, y);
        join_[x * n + y] = join_[y * n + x] = lub;
        meet_[x * n + y] = meet_[y * n + x] = glb;
      }
    }
    bottom_ = 0;
    top_ = 0;
    for (std::size_t x = 0; x < n; ++x) {
      bottom_ = meet_[bottom_ * n + x];
      top_ = join_[top_ * n + x];
    }
  }

  void build_covers() {
    const std::size_t n = n_;
    lower_.assign(n, {});
    upper_.assign(n, {});
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        if (!lt(x, y)) continue;
        bool cover = true;
        for (Elem z = 0; z < n && cover; ++z)
          if (lt(x, z) && lt(z, y)) cover = false;
        if (cover) {
          upper_[x].push_back(y);
          lower_[y].push_back(x);
        }
      }
  }

  std::size_t n_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<Elem> join_;
  std::vector<Elem> meet_;
  std::vector<std::string> names_;
  std::vector<std::vector<Elem>> lower_;
  std::vector<std::vector<Elem>> upper_;
  Elem bottom_ = 0;
  Elem top_ = 0;
};

}  // namespace latticeforge
