#pragma once

#include <sstream>
#include <string>

#include "latticeforge/lattice.hpp"

namespace latticeforge {

/// Hasse diagram in DOT syntax: one node per element in index order, one
/// edge per cover pair, lower element first.
inline std::string render_dot(const FiniteLattice& L, const std::string& graph_name = "lattice") {
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (Elem x = 0; x < L.size(); ++x) {
    out << "  n" << x;
    if (L.has_names()) out << " [label=\"" << L.names()[x] << "\"]";
    out << ";\n";
  }
  for (auto [lo, hi] : L.covers()) out << "  n" << lo << " -> n" << hi << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace latticeforge
