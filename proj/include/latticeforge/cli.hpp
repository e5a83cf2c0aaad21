#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "latticeforge/dot.hpp"
#include "latticeforge/enumerate.hpp"
#include "latticeforge/identities.hpp"
#include "latticeforge/isomorphism.hpp"
#include "latticeforge/kclosure.hpp"
#include "latticeforge/klat.hpp"
#include "latticeforge/lattice_io.hpp"
#include "latticeforge/structure.hpp"
#include "latticeforge/tensor.hpp"
#include "latticeforge/terms.hpp"

namespace latticeforge::cli {

enum ExitCode : int { ok = 0, property_failed = 1, usage = 2, io = 3, internal = 4 };

class UsageError : public Error {
 public:
  using Error::Error;
};

class FileNotFound : public Error {
 public:
  explicit FileNotFound(const std::string& path) : Error("file not found: " + path), path(path) {}
  std::string path;
};

/// Thrown by parse_args for --help; carries the help text.
class HelpRequested : public std::exception {
 public:
  explicit HelpRequested(std::string text) : text(std::move(text)) {}
  std::string text;
};

enum class OutputFormat { text, json, dot };

struct CommandPlan {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> options;  // flags map to "true"
  OutputFormat format = OutputFormat::text;

  bool has(const std::string& key) const { return options.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const {
    const auto it = options.find(key);
    return it == options.end() ? fallback : it->second;
  }
  friend bool operator==(const CommandPlan&, const CommandPlan&) = default;
};

namespace detail {

inline std::string join_strings(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(' ');
    const auto e = cur.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

// Collects option values of one subcommand before they go into the plan.
struct Collector {
  std::vector<std::string> inputs;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::map<std::string, std::vector<std::string>> lists;

  void value(CLI::App* app, const std::string& name, const std::string& help) {
    app->add_option("--" + name, values[name], help);
  }
  void flag(CLI::App* app, const std::string& name, const std::string& help) {
    app->add_flag("--" + name, flags[name], help);
  }
  void list(CLI::App* app, const std::string& name, const std::string& help) {
    app->add_option("--" + name, lists[name], help)->delimiter(',');
  }
};

}  // namespace detail

/// Parses argv into a validated plan. Throws UsageError, FileNotFound or
/// HelpRequested.
inline CommandPlan parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Finite lattices, tensor products and the lattice K", "latticeforge"};
  app.require_subcommand(1);
  std::string report = "text";
  const auto add_report = [&](CLI::App* sub) {
    sub->add_option("--report", report, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  std::map<std::string, detail::Collector> col;

  {
    auto* s = app.add_subcommand("check", "Properties of one lattice");
    auto& c = col["check"];
    s->add_option("file", c.inputs, "Lattice file")->required()->expected(1);
    c.flag(s, "tjoin", "Condition (T_v): no D-cycle");
    c.flag(s, "simple", "Simplicity");
    c.flag(s, "dpt", "Property DPT");
    c.flag(s, "h-index", "h-modularity index");
    c.list(s, "identity", "modular, distributive or join_semidistributive");
    c.value(s, "dot", "Write the Hasse diagram to this file");
    add_report(s);
  }
  {
    auto* s = app.add_subcommand("tensor", "Tensor product of two lattices");
    auto& c = col["tensor"];
    s->add_option("files", c.inputs, "Lattice files A and B")->required()->expected(2);
    c.flag(s, "oracle", "Compare with the brute-force bi-ideal lattice");
    c.value(s, "dot", "Write the Hasse diagram of A (x) B to this file");
    add_report(s);
  }
  {
    auto* s = app.add_subcommand("tensun", "Join of pure tensors versus union over lattice terms");
    auto& c = col["tensun"];
    s->add_option("files", c.inputs, "Lattice files A and B")->required()->expected(2);
    s->add_option("--pairs", c.values["pairs"], "Pairs a:b separated by commas")->required();
    c.value(s, "depth", "Term depth bound (default 4)");
    add_report(s);
  }
  {
    auto* s = app.add_subcommand("klat", "The lattice K");
    auto& c = col["klat"];
    c.value(s, "check-2modular", "Check u^(3) = u^(2) for indices <= N");
    c.value(s, "truncate", "Build the truncation K_N");
    c.value(s, "dot", "Write the Hasse diagram of K_N to this file");
    c.list(s, "element", "Normalize elements of K");
    add_report(s);
  }
  {
    auto* s = app.add_subcommand("kclosure", "Capped elements of K (x) L");
    s->set_help_flag("--help", "Print this help message and exit");  // --h is taken
    auto& c = col["kclosure"];
    s->add_option("--lattice", c.values["lattice"], "Lattice file for L")->required();
    s->add_option("--h", c.values["h"], "h such that L is h-modular")->required();
    s->add_option("--tensors", c.values["tensors"], "Pure tensors u*xi separated by commas")->required();
    c.value(s, "truncate", "Truncation index N for the oracle");
    add_report(s);
  }
  {
    auto* s = app.add_subcommand("enumerate", "Lattices up to isomorphism");
    auto& c = col["enumerate"];
    s->add_option("n", c.inputs, "Number of elements")->required()->expected(1);
    c.flag(s, "scan", "Count simple and (T_v) lattices for sizes 3..n");
    c.flag(s, "print", "Print every lattice");
    add_report(s);
  }
  {
    auto* s = app.add_subcommand("term", "Free-lattice terms: leq, dual, eval");
    auto& c = col["term"];
    s->add_option("args", c.inputs, "leq P Q | dual P | eval P")->required()->expected(2, 3);
    c.value(s, "lattice", "Lattice file for eval");
    c.value(s, "assign", "Assignment x=a,y=b for eval");
    add_report(s);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CommandPlan plan;
  plan.subcommand = app.get_subcommands().front()->get_name();
  const auto& c = col[plan.subcommand];
  plan.inputs = c.inputs;
  for (const auto& [k, v] : c.values)
    if (!v.empty()) plan.options[k] = v;
  for (const auto& [k, v] : c.flags)
    if (v) plan.options[k] = "true";
  for (const auto& [k, v] : c.lists)
    if (!v.empty()) plan.options[k] = detail::join_strings(v, ",");
  plan.format = report == "json" ? OutputFormat::json : OutputFormat::text;

  const auto need_count = [&](const std::string& key) {
    if (!plan.has(key)) return;
    const auto& v = plan.get(key);
    if (v.empty() || !std::all_of(v.begin(), v.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw UsageError("--" + key + " expects a nonnegative integer");
  };
  for (const char* key : {"depth", "check-2modular", "truncate", "h"}) need_count(key);

  std::vector<std::string> files;
  if (plan.subcommand == "check" || plan.subcommand == "tensor" || plan.subcommand == "tensun") files = plan.inputs;
  if (plan.subcommand == "kclosure" || (plan.subcommand == "term" && plan.has("lattice")))
    files.push_back(plan.get("lattice"));
  if (plan.subcommand == "enumerate") {
    const auto& n = plan.inputs.front();
    if (n.empty() || !std::all_of(n.begin(), n.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw UsageError("enumerate expects a size");
  }
  if (plan.subcommand == "term") {
    const auto& mode = plan.inputs.front();
    const std::size_t want = mode == "leq" ? 3 : (mode == "dual" || mode == "eval") ? 2 : 0;
    if (want == 0) throw UsageError("term expects leq, dual or eval");
    if (plan.inputs.size() != want) throw UsageError("term " + mode + " expects " + std::to_string(want - 1) + " term(s)");
    if (mode == "eval" && (!plan.has("lattice") || !plan.has("assign")))
      throw UsageError("term eval needs --lattice and --assign");
  }
  if (plan.subcommand == "klat" && !plan.has("check-2modular") && !plan.has("truncate") && !plan.has("element"))
    throw UsageError("klat needs --check-2modular, --truncate or --element");
  if (plan.subcommand == "klat" && plan.has("dot") && !plan.has("truncate")) throw UsageError("--dot needs --truncate");
  for (const auto& f : files)
    if (!std::filesystem::is_regular_file(f)) throw FileNotFound(f);
  return plan;
}

inline CommandPlan parse_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_args(args);
}

namespace detail {

using nlohmann::ordered_json;

inline Elem resolve(const FiniteLattice& L, const std::string& token) {
  if (auto e = L.find(token)) return *e;
  throw UsageError("no element '" + token + "' in lattice");
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FileNotFound(path);
  out << text;
}

inline std::string scalar_text(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// One "key: value" line per field.
inline void print_text(std::ostream& out, const ordered_json& report) {
  for (const auto& [k, v] : report.items()) out << k << ": " << scalar_text(v) << '\n';
}

inline std::vector<std::string> names_of(const FiniteLattice& L, const std::vector<Elem>& xs) {
  std::vector<std::string> out;
  for (Elem x : xs) out.push_back(L.name(x));
  return out;
}

inline int run_check(const CommandPlan& plan, ordered_json& rep) {
  const FiniteLattice L = read_lattice_file(plan.inputs.front());
  int code = ok;
  rep["size"] = L.size();
  rep["covers"] = L.covers().size();
  rep["join_irreducibles"] = names_of(L, join_irreducibles(L));
  if (plan.has("tjoin")) {
    const auto t = satisfies_T_join(L);
    rep["T_join"] = t.holds;
    if (!t.holds) {
      rep["cycle"] = names_of(L, t.cycle);
      code = property_failed;
    }
  }
  if (plan.has("simple")) {
    const bool s = L.size() >= 2 && is_simple(L);
    rep["simple"] = s;
    if (!s) code = property_failed;
  }
  if (plan.has("dpt")) {
    const auto d = dpt_holds(L);
    rep["dpt"] = d.holds;
    if (d.witness) {
      const auto& w = *d.witness;
      rep["dpt_witness"] = names_of(L, {w.u0, w.u, w.v0, w.v});
      code = property_failed;
    }
  }
  if (plan.has("identity")) {
    for (const auto& name : split(plan.get("identity"), ',')) {
      const auto id = parse_identity(name);
      if (!id) throw UsageError("unknown identity '" + name + "'");
      const auto r = check_identity(L, *id);
      rep[std::string(to_string(*id))] = r.holds;
      if (r.witness) {
        rep[std::string(to_string(*id)) + "_witness"] = names_of(L, {r.witness->x, r.witness->y, r.witness->z});
        code = property_failed;
      }
    }
  }
  if (plan.has("h-index")) {
    const auto h = h_modularity_index(L, 4 * L.size() + 4);
    rep["h_modularity_index"] = h ? ordered_json(*h) : ordered_json("not reached");
  }
  if (plan.has("dot")) write_file(plan.get("dot"), render_dot(L));
  return code;
}

inline int run_tensor(const CommandPlan& plan, ordered_json& rep) {
  const FiniteLattice A = read_lattice_file(plan.inputs[0]);
  const FiniteLattice B = read_lattice_file(plan.inputs[1]);
  const TensorProduct T(A, B);
  const auto tl = tensor_lattice(A, B);
  int code = ok;
  rep["size"] = tl.elements.size();
  ordered_json table = ordered_json::array();
  bool all_capped = true;
  for (const auto& e : tl.elements) {
    const Capping c = T.capping(e);
    const bool capped = T.capping_closure(c) == T.to_raw(e);
    all_capped = all_capped && capped;
    ordered_json pairs = ordered_json::array();
    for (auto [a, b] : c.pairs) pairs.push_back(A.name(a) + "*" + B.name(b));
    table.push_back({{"capping", pairs}, {"capped", capped}});
  }
  rep["all_capped"] = all_capped;
  if (!all_capped) code = property_failed;
  if (plan.format == OutputFormat::json) rep["elements"] = table;
  if (plan.has("oracle")) {
    const auto oracle = brute_force_biideals(A, B);
    const bool iso = are_isomorphic(tl.lattice, oracle.lattice).has_value();
    rep["oracle_size"] = oracle.elements.size();
    rep["isomorphic_to_oracle"] = iso;
    if (!iso) code = property_failed;
  }
  if (plan.has("dot")) write_file(plan.get("dot"), render_dot(tl.lattice, "tensor"));
  return code;
}

inline int run_tensun(const CommandPlan& plan, ordered_json& rep) {
  const FiniteLattice A = read_lattice_file(plan.inputs[0]);
  const FiniteLattice B = read_lattice_file(plan.inputs[1]);
  std::vector<std::pair<Elem, Elem>> pairs;
  for (const auto& tok : split(plan.get("pairs"), ',')) {
    const auto parts = split(tok, ':');
    if (parts.size() != 2) throw UsageError("pair '" + tok + "' is not of the form a:b");
    pairs.emplace_back(resolve(A, parts[0]), resolve(B, parts[1]));
  }
  const auto r = tensun_verify(A, B, pairs, std::stoul(plan.get("depth", "4")));
  rep["holds"] = r.holds;
  rep["union_is_bi_ideal"] = r.union_is_bi_ideal;
  rep["equal"] = r.equal;
  rep["stable_depth"] = r.stable_depth;
  rep["terms"] = r.trace.size();
  if (plan.format == OutputFormat::json) {
    ordered_json trace = ordered_json::array();
    for (const auto& s : r.trace) trace.push_back({{"term", format_term(s.term)}, {"a", A.name(s.a_value)}, {"b", B.name(s.b_value)}});
    rep["trace"] = trace;
  }
  return r.holds ? ok : property_failed;
}

inline int run_klat(const CommandPlan& plan, ordered_json& rep) {
  if (plan.has("element")) {
    ordered_json elems = ordered_json::array();
    for (const auto& tok : split(plan.get("element"), ',')) elems.push_back(format_kelem(parse_kelem(tok)));
    rep["elements"] = elems;
  }
  if (plan.has("check-2modular")) {
    const auto n = static_cast<std::uint32_t>(std::stoul(plan.get("check-2modular")));
    const auto r = k_check_2modular(n);
    const auto fmt = [](const KTriple& u) {
      return ordered_json::array({format_kelem(u.x), format_kelem(u.y), format_kelem(u.z)});
    };
    rep["two_modular"] = r.holds;
    rep["triples_checked"] = r.triples_checked;
    if (r.nonmodular_witness) rep["nonmodular_witness"] = fmt(*r.nonmodular_witness);
    if (r.counterexample) throw TheoremViolated("u^(3) != u^(2) for " + fmt(*r.counterexample).dump());
  }
  if (plan.has("truncate")) {
    const auto n = static_cast<std::uint32_t>(std::stoul(plan.get("truncate")));
    const auto K = k_truncation(n);
    rep["truncation_size"] = K.elements.size();
    rep["expected_size"] = 5 * (n + 1) + 2;
    rep["join_semidistributive"] = check_identity(K.lattice, Identity::join_semidistributive).holds;
    if (plan.has("dot")) write_file(plan.get("dot"), render_dot(K.lattice, "K" + std::to_string(n)));
  }
  return ok;
}

inline int run_kclosure(const CommandPlan& plan, ordered_json& rep) {
  const FiniteLattice L = read_lattice_file(plan.get("lattice"));
  const KClosure kc(L, std::stoul(plan.get("h")));
  std::vector<std::pair<KElem, Elem>> tensors;
  std::uint32_t max_index = 0;
  for (const auto& tok : split(plan.get("tensors"), ',')) {
    const auto star = tok.rfind('*');
    if (star == std::string::npos) throw UsageError("tensor '" + tok + "' is not of the form u*xi");
    const KElem u = parse_kelem(tok.substr(0, star));
    max_index = std::max(max_index, u.index());
    tensors.emplace_back(u, resolve(L, tok.substr(star + 1)));
  }
  // Default margin: the joined degree is at most one more than the largest index.
  const auto N = static_cast<std::uint32_t>(std::stoul(plan.get("truncate", std::to_string(max_index + 3))));
  const auto r = verify_capped(kc, tensors, N);
  const auto& x = r.joined.x;
  const auto chain = [&](const std::vector<Elem>& ch) { return names_of(L, ch); };
  rep["degree"] = r.degree;
  rep["truncation"] = N;
  rep["assignment"] = {{"c", L.name(x.c_val)},
                       {"a_chain", chain(x.a_chain)},
                       {"a_lim", L.name(x.a_lim)},
                       {"b_chain", chain(x.b_chain)},
                       {"b_lim", L.name(x.b_lim)}};
  ordered_json gamma = ordered_json::array();
  for (const auto& [u, xi] : r.gamma) gamma.push_back(format_kelem(u) + "*" + L.name(xi));
  rep["gamma"] = gamma;
  rep["gamma_size"] = r.gamma.size();
  rep["max_fiber"] = r.max_fiber;
  rep["oracle_equal"] = r.oracle_equal;
  rep["capping_equal"] = r.capping_equal;
  return ok;
}

inline int run_enumerate(const CommandPlan& plan, ordered_json& rep, std::ostream& out) {
  const std::size_t n = std::stoul(plan.inputs.front());
  if (n == 0 || n > 8) throw UsageError("enumerate supports 1 <= n <= 8");
  std::size_t count = 0;
  for_each_lattice(n, [&](const FiniteLattice& L) {
    ++count;
    if (plan.has("print")) out << format_lattice(L) << '\n';
  });
  rep["n"] = n;
  rep["lattices"] = count;
  if (plan.has("scan")) {
    const auto s = no_simple_amenable_scan(n);
    ordered_json rows = ordered_json::array();
    for (const auto& r : s.rows)
      rows.push_back({{"n", r.n}, {"lattices", r.lattices}, {"simple", r.simple}, {"t_join", r.t_join},
                      {"simple_and_t_join", r.simple_and_t_join}});
    rep["scan"] = rows;
    rep["violations"] = s.violations();
  }
  return ok;
}

inline int run_term(const CommandPlan& plan, ordered_json& rep) {
  const auto& mode = plan.inputs[0];
  const Term p = parse_term(plan.inputs[1]);
  if (mode == "leq") {
    const Term q = parse_term(plan.inputs[2]);
    const bool holds = free_leq(p, q);
    rep["leq"] = holds;
    return holds ? ok : property_failed;
  }
  if (mode == "dual") {
    rep["dual"] = format_term(dual_term(p));
    return ok;
  }
  const FiniteLattice L = read_lattice_file(plan.get("lattice"));
  std::map<std::string, Elem> assignment;
  for (const auto& tok : split(plan.get("assign"), ',')) {
    const auto parts = split(tok, '=');
    if (parts.size() != 2) throw UsageError("assignment '" + tok + "' is not of the form x=a");
    assignment[parts[0]] = resolve(L, parts[1]);
  }
  rep["value"] = L.name(eval_term(p, L, assignment));
  return ok;
}

}  // namespace detail

/// Dispatches a plan. Reports go to `out` after the command finished;
/// errors go to `err`. Returns the process exit code.
inline int run(const CommandPlan& plan, std::ostream& out, std::ostream& err) {
  detail::ordered_json rep;
  std::ostringstream extra;
  int code = ok;
  try {
    const auto& s = plan.subcommand;
    if (s == "check") code = detail::run_check(plan, rep);
    else if (s == "tensor") code = detail::run_tensor(plan, rep);
    else if (s == "tensun") code = detail::run_tensun(plan, rep);
    else if (s == "klat") code = detail::run_klat(plan, rep);
    else if (s == "kclosure") code = detail::run_kclosure(plan, rep);
    else if (s == "enumerate") code = detail::run_enumerate(plan, rep, extra);
    else if (s == "term") code = detail::run_term(plan, rep);
    else throw UsageError("unknown subcommand '" + s + "'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const FileNotFound& e) {
    err << "error: " << e.what() << '\n';
    return io;
  } catch (const InternalAssertion& e) {
    err << "internal error: " << e.what() << '\n';
    return internal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  out << extra.str();
  if (plan.format == OutputFormat::json)
    out << rep.dump(2) << '\n';
  else
    detail::print_text(out, rep);
  return code;
}

/// Entry point used by the executable.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CommandPlan plan;
  try {
    plan = parse_args(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.text;
    return ok;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const FileNotFound& e) {
    err << "error: " << e.what() << '\n';
    return io;
  }
  return run(plan, out, err);
}

}  // namespace latticeforge::cli
