#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "latticeforge/lattice.hpp"

namespace latticeforge {

/// A free-lattice term: a variable, or a meet/join of at least two terms.
/// Immutable and cheap to copy (shared nodes). The factory functions keep
/// every term flattened (no meet directly under a meet, no join under a
/// join) with duplicate arguments removed.
class Term {
 public:
  enum class Kind { variable, meet, join };

  static Term var(std::string name) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::variable;
    node->name = std::move(name);
    node->hash = std::hash<std::string>{}(node->name) * 0x9E3779B97F4A7C15ull;
    return Term(std::move(node));
  }

  static Term meet(std::vector<Term> args) { return combine(Kind::meet, std::move(args)); }
  static Term join(std::vector<Term> args) { return combine(Kind::join, std::move(args)); }
  static Term meet(Term a, Term b) { return meet(std::vector<Term>{std::move(a), std::move(b)}); }
  static Term join(Term a, Term b) { return join(std::vector<Term>{std::move(a), std::move(b)}); }
  static Term combine(Kind kind, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == Kind::variable; }
  bool is_meet() const { return node_->kind == Kind::meet; }
  bool is_join() const { return node_->kind == Kind::join; }
  const std::string& name() const { return node_->name; }
  std::span<const Term> args() const { return node_->args; }
  std::size_t hash() const { return node_->hash; }

  /// Nesting depth; variables have depth 0.
  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& a : node_->args) d = std::max(d, a.depth() + 1);
    return d;
  }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
    if (a.is_var()) return a.node_->name == b.node_->name;
    return a.node_->args == b.node_->args;
  }

 private:
  struct Node {
    Kind kind = Kind::variable;
    std::string name;
    std::vector<Term> args;
    std::size_t hash = 0;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

inline Term Term::combine(Kind kind, std::vector<Term> args) {
  if (kind == Kind::variable) throw Error("combine needs meet or join");
  std::vector<Term> flat;
  std::unordered_set<Term, TermHash> seen;
  const auto push = [&](const Term& t) {
    if (seen.insert(t).second) flat.push_back(t);
  };
  for (auto& a : args) {
    if (a.kind() == kind)
      for (const auto& inner : a.args()) push(inner);
    else
      push(a);
  }
  if (flat.empty()) throw Error("meet/join of no terms");
  if (flat.size() == 1) return flat.front();
  auto node = std::make_shared<Node>();
  node->kind = kind;
  std::size_t h = kind == Kind::meet ? 0x51ED27u : 0xA4093Du;
  for (const auto& a : flat) h = (h ^ a.hash()) * 0x100000001B3ull + 0x9E37u;
  node->hash = h;
  node->args = std::move(flat);
  return Term(std::move(node));
}

// ---------------------------------------------------------------- parsing

namespace detail {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Term term() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') return group();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      return Term::var(std::string(text_.substr(start, pos_ - start)));
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  Term group() {
    ++pos_;  // '('
    std::vector<Term> args{term()};
    char op = 0;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) throw SyntaxError("missing ')'", pos_);
      const char c = text_[pos_];
      if (c == ')') break;
      if (c != '&' && c != '|') throw SyntaxError("expected '&', '|' or ')'", pos_);
      if (op != 0 && c != op) throw SyntaxError("mixed operators in one group", pos_);
      op = c;
      ++pos_;
      args.push_back(term());
    }
    if (op == 0) throw SyntaxError("a group needs at least two terms", pos_);
    ++pos_;  // ')'
    return op == '&' ? Term::meet(std::move(args)) : Term::join(std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Grammar: term := var | '(' term (op term)+ ')' with one operator per group,
/// '&' for meet and '|' for join.
inline Term parse_term(std::string_view text) { return detail::TermParser(text).parse(); }

inline std::string format_term(const Term& t) {
  if (t.is_var()) return t.name();
  std::string out = "(";
  const char* sep = t.is_meet() ? " & " : " | ";
  bool first = true;
  for (const auto& a : t.args()) {
    if (!first) out += sep;
    out += format_term(a);
    first = false;
  }
  return out + ")";
}

// ---------------------------------------------------------- term algebra

/// Swaps meet and join throughout.
inline Term dual_term(const Term& t) {
  if (t.is_var()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(dual_term(a));
  return Term::combine(t.is_meet() ? Term::Kind::join : Term::Kind::meet, std::move(args));
}

inline void collect_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out);
}

inline std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  collect_variables(t, out);
  return out;
}

/// Replaces variables by terms; unmapped variables are left alone.
inline Term substitute(const Term& t, const std::map<std::string, Term>& sigma) {
  if (t.is_var()) {
    const auto it = sigma.find(t.name());
    return it == sigma.end() ? t : it->second;
  }
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(substitute(a, sigma));
  return Term::combine(t.kind(), std::move(args));
}

/// Homomorphic evaluation in a finite lattice.
inline Elem eval_term(const Term& t, const FiniteLattice& L, const std::map<std::string, Elem>& assignment) {
  if (t.is_var()) {
    const auto it = assignment.find(t.name());
    if (it == assignment.end()) throw UnboundVariable(t.name());
    return it->second;
  }
  Elem acc = eval_term(t.args().front(), L, assignment);
  for (const auto& a : t.args().subspan(1)) {
    const Elem v = eval_term(a, L, assignment);
    acc = t.is_meet() ? L.meet(acc, v) : L.join(acc, v);
  }
  return acc;
}

/// Sorts arguments recursively by their printed form. Used to identify
/// terms that differ only by argument order.
inline Term sort_arguments(const Term& t) {
  if (t.is_var()) return t;
  std::vector<std::pair<std::string, Term>> keyed;
  for (const auto& a : t.args()) {
    Term s = sort_arguments(a);
    keyed.emplace_back(format_term(s), std::move(s));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Term> args;
  for (auto& [_, s] : keyed) args.push_back(std::move(s));
  return Term::combine(t.kind(), std::move(args));
}

// ------------------------------------------------- Whitman's decision procedure

/// Decides s <= t in the free lattice by Whitman's recursion. Subterms are
/// hash-consed and the answers memoized per pair, so one instance can
/// answer many queries over related terms.
class FreeLatticeOrder {
 public:
  bool leq(const Term& s, const Term& t) { return leq_ids(intern(s), intern(t)); }
  bool equivalent(const Term& s, const Term& t) { return leq(s, t) && leq(t, s); }

 private:
  struct Node {
    Term::Kind kind;
    std::vector<int> args;
  };

  int intern(const Term& t) {
    if (const auto it = ids_.find(t); it != ids_.end()) return it->second;
    Node node{t.kind(), {}};
    for (const auto& a : t.args()) node.args.push_back(intern(a));
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
    ids_.emplace(t, id);
    return id;
  }

  bool leq_ids(int s, int t) {
    if (s == t) return true;
    const std::uint64_t key = (static_cast<std::uint64_t>(s) << 32) | static_cast<std::uint32_t>(t);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Node& S = nodes_[s];
    const Node& T = nodes_[t];
    bool r = false;
    if (S.kind == Term::Kind::join) {
      r = std::all_of(S.args.begin(), S.args.end(), [&](int a) { return leq_ids(a, t); });
    } else if (T.kind == Term::Kind::meet) {
      r = std::all_of(T.args.begin(), T.args.end(), [&](int b) { return leq_ids(s, b); });
    } else if (S.kind == Term::Kind::variable && T.kind == Term::Kind::variable) {
      r = false;  // distinct interned variables
    } else if (S.kind == Term::Kind::variable) {  // T is a join
      r = std::any_of(T.args.begin(), T.args.end(), [&](int b) { return leq_ids(s, b); });
    } else if (T.kind == Term::Kind::variable) {  // S is a meet
      r = std::any_of(S.args.begin(), S.args.end(), [&](int a) { return leq_ids(a, t); });
    } else {  // meet <= join: Whitman's condition
      r = std::any_of(S.args.begin(), S.args.end(), [&](int a) { return leq_ids(a, t); }) ||
          std::any_of(T.args.begin(), T.args.end(), [&](int b) { return leq_ids(s, b); });
    }
    memo_.emplace(key, r);
    return r;
  }

  std::unordered_map<Term, int, TermHash> ids_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

inline bool free_leq(const Term& s, const Term& t) { return FreeLatticeOrder{}.leq(s, t); }

// ------------------------------------------------------------ enumeration

inline std::string default_variable_name(std::size_t i) {
  static constexpr const char* names[] = {"x", "y", "z", "w"};
  return i < 4 ? names[i] : "v" + std::to_string(i);
}

/// All terms over k variables (x, y, z, ...) reachable by `depth` rounds of
/// binary meet/join, flattened, with duplicates removed up to argument order.
/// Terms are emitted level by level in a deterministic order.
inline std::vector<Term> enumerate_terms(std::size_t k, std::size_t depth) {
  const std::size_t guard = size_guard(200000);
  std::vector<Term> all;
  std::unordered_set<Term, TermHash> seen;
  for (std::size_t i = 0; i < k; ++i) {
    Term v = Term::var(default_variable_name(i));
    seen.insert(v);
    all.push_back(std::move(v));
  }
  for (std::size_t level = 0; level < depth; ++level) {
    const std::size_t prev = all.size();
    for (std::size_t i = 0; i < prev; ++i)
      for (std::size_t j = i + 1; j < prev; ++j)
        for (auto kind : {Term::Kind::meet, Term::Kind::join}) {
          Term t = sort_arguments(Term::combine(kind, {all[i], all[j]}));
          if (seen.insert(t).second) {
            all.push_back(std::move(t));
            if (all.size() > guard) throw SizeLimitExceeded("enumerate_terms exceeded the size guard");
          }
        }
    if (all.size() == prev) break;
  }
  return all;
}

}  // namespace latticeforge
