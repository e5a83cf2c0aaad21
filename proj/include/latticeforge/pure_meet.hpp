#pragma once

#include <map>
#include <string>
#include <vector>

#include "latticeforge/terms.hpp"

namespace latticeforge {

/// Input of the pure-meet extraction. U, V and the lists are terms over the
/// same m generators; R is a term over r0, ..., r{n-1}.
struct PureMeetInstance {
  Term U;
  Term V;
  std::vector<Term> U_list;
  std::vector<Term> V_list;
  Term R;
};

struct PureMeetResult {
  Term r_star;
  std::size_t join_nodes = 0;   // join nodes resolved through a branch
  std::size_t u_case_hits = 0;  // U(x) <= R(...) held at a join node
  std::size_t v_case_hits = 0;  // V(y) <= R(...) held at a join node
};

inline std::string substitution_variable(std::size_t j) { return "r" + std::to_string(j); }

/// True for a variable or a meet of variables.
inline bool is_pure_meet(const Term& t) {
  if (t.is_var()) return true;
  if (!t.is_meet()) return false;
  for (const auto& a : t.args())
    if (!a.is_var()) return false;
  return true;
}

namespace detail {

inline Term rename_with_prefix(const Term& t, const std::string& prefix) {
  std::map<std::string, Term> sigma;
  for (const auto& v : variables(t)) sigma.emplace(v, Term::var(prefix + v));
  return substitute(t, sigma);
}

// U(x), V(y) and the substitution r_j -> U_j(x) ^ V_j(y) inside the free
// lattice on two disjoint copies of the generators.
struct DoubledInstance {
  Term Ux;
  Term Vy;
  Term lhs;
  std::map<std::string, Term> sigma;

  explicit DoubledInstance(const PureMeetInstance& in) : Ux(rename_with_prefix(in.U, "x_")),
                                                         Vy(rename_with_prefix(in.V, "y_")),
                                                         lhs(Term::meet(Ux, Vy)) {
    if (in.U_list.size() != in.V_list.size() || in.U_list.empty())
      throw Error("U_list and V_list must have the same positive length");
    for (std::size_t j = 0; j < in.U_list.size(); ++j)
      sigma.emplace(substitution_variable(j),
                    Term::meet(rename_with_prefix(in.U_list[j], "x_"), rename_with_prefix(in.V_list[j], "y_")));
    for (const auto& v : variables(in.R))
      if (!sigma.count(v)) throw Error("R uses variable '" + v + "' outside r0..r" + std::to_string(in.U_list.size() - 1));
  }

  Term image(const Term& r) const { return substitute(r, sigma); }
};

}  // namespace detail

/// Checks U(x) ^ V(y) <= R(U_j(x) ^ V_j(y) | j < n) in the free lattice on
/// 2m generators.
inline bool pure_meet_hypothesis_holds(const PureMeetInstance& in) {
  const detail::DoubledInstance d(in);
  return free_leq(d.lhs, d.image(in.R));
}

/// Replaces R by a pure meet polynomial R* <= R for which the hypothesis
/// inequality still holds. Variables stay, meets recurse argumentwise, and a
/// join is replaced by the first argument that still satisfies the
/// inequality (Whitman's condition guarantees one exists).
inline PureMeetResult pure_meet_extract(const PureMeetInstance& in) {
  const detail::DoubledInstance d(in);
  FreeLatticeOrder order;
  if (!order.leq(d.lhs, d.image(in.R))) throw HypothesisFails("U(x) ^ V(y) <= R(...) does not hold");

  PureMeetResult result{in.R};
  std::function<Term(const Term&)> extract = [&](const Term& r) -> Term {
    if (r.is_var()) return r;
    if (r.is_meet()) {
      std::vector<Term> parts;
      for (const auto& a : r.args()) parts.push_back(extract(a));
      return Term::meet(std::move(parts));
    }
    ++result.join_nodes;
    const Term image = d.image(r);
    if (order.leq(d.Ux, image)) ++result.u_case_hits;
    if (order.leq(d.Vy, image)) ++result.v_case_hits;
    for (const auto& branch : r.args())
      if (order.leq(d.lhs, d.image(branch))) return extract(branch);
    throw InternalCaseExhaustion("no join branch of " + format_term(r) + " satisfies the inequality");
  };
  result.r_star = extract(in.R);
  return result;
}

}  // namespace latticeforge
