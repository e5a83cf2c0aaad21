#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "latticeforge/lattice.hpp"

namespace latticeforge {

class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error("lattice file line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

/// Parses the lattice text format:
///
///   lattice <n>
///   names <label_0> ... <label_{n-1}>     (optional)
///   cover <i> <j>                         (i is covered by j)
///
/// Anything after '#' is a comment.
inline FiniteLattice parse_lattice(std::istream& in) {
  std::size_t n = 0;
  bool have_header = false;
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> covers;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;
    if (keyword == "lattice") {
      if (have_header) throw FormatError("duplicate header", lineno);
      long long v = -1;
      if (!(ls >> v) || v <= 0) throw FormatError("expected a positive size", lineno);
      n = static_cast<std::size_t>(v);
      have_header = true;
    } else if (!have_header) {
      throw FormatError("expected 'lattice <n>' first", lineno);
    } else if (keyword == "names") {
      if (!names.empty()) throw FormatError("duplicate names line", lineno);
      std::string label;
      while (ls >> label) names.push_back(label);
      if (names.size() != n) throw FormatError("expected " + std::to_string(n) + " names", lineno);
    } else if (keyword == "cover") {
      long long i = -1, j = -1;
      if (!(ls >> i >> j) || i < 0 || j < 0 || static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(j) >= n)
        throw FormatError("bad cover line", lineno);
      covers.emplace_back(static_cast<Elem>(i), static_cast<Elem>(j));
    } else {
      throw FormatError("unknown keyword '" + keyword + "'", lineno);
    }
    std::string extra;
    if (keyword != "names" && (ls >> extra)) throw FormatError("trailing tokens", lineno);
  }
  if (!have_header) throw FormatError("empty lattice file", lineno);
  return FiniteLattice::from_covers(n, covers, std::move(names));
}

inline FiniteLattice parse_lattice(const std::string& text) {
  std::istringstream in(text);
  return parse_lattice(in);
}

inline FiniteLattice read_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_lattice(in);
}

/// Canonical text form; parse_lattice(format_lattice(L)) == L and the text
/// form of a parsed canonical file is byte-identical.
inline std::string format_lattice(const FiniteLattice& L) {
  std::ostringstream out;
  out << "lattice " << L.size() << '\n';
  if (L.has_names()) {
    out << "names";
    for (const auto& nm : L.names()) out << ' ' << nm;
    out << '\n';
  }
  for (auto [lo, hi] : L.covers()) out << "cover " << lo << ' ' << hi << '\n';
  return out.str();
}

}  // namespace latticeforge
