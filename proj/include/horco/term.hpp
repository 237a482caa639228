#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "horco/type.hpp"

namespace horco {

enum class TermKind { Symbol, FreeVar, BoundVar, App, Lam };

/// Curried simply-typed λ-terms. Bound variables are nameless de Bruijn
/// indices (distance to the binder), free variables and function symbols are
/// named, so structural equality is α-equivalence. Values are immutable and
/// shared.
class Term {
 public:
  Term() = default;

  static Term symbol(std::string name);
  static Term free_var(std::string name);
  static Term bound_var(int index);
  static Term app(Term fun, Term arg);
  static Term app(Term fun, const std::vector<Term>& args);
  static Term lam(Type annot, Term body);
  /// λ over a named variable: abstracts every free occurrence of `name` in
  /// `body`. Convenience for building terms by hand.
  static Term bind(const std::string& name, Type annot, Term body);

  bool empty() const { return node_ == nullptr; }
  TermKind kind() const;
  bool is(TermKind k) const { return !empty() && kind() == k; }

  const std::string& name() const;  // Symbol, FreeVar
  int index() const;                // BoundVar
  const Term& fun() const;          // App
  const Term& arg() const;          // App
  const Type& annot() const;        // Lam
  const Term& body() const;         // Lam

  /// Node-count metric: symbols and variables weigh 1, application adds
  /// nothing, a λ weighs 2 plus its body.
  int size() const;
  /// 0 iff locally closed (no dangling bound variable).
  int level() const;

  std::size_t hash() const;
  bool operator==(const Term& other) const;  // α-equivalence
  bool operator!=(const Term& other) const { return !(*this == other); }

  std::string show() const;
  /// As show(), but binder display names also avoid `extra_avoid`.
  std::string show(const std::set<std::string>& extra_avoid) const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

struct TermPairHash {
  std::size_t operator()(const std::pair<Term, Term>& p) const {
    return p.first.hash() * 0x9e3779b97f4a7c15ull + p.second.hash();
  }
};

inline bool alpha_eq(const Term& a, const Term& b) { return a == b; }

/// Splits a term into its application spine: head and argument list.
std::pair<Term, std::vector<Term>> spine(const Term& t);
/// Strips exactly `k` trailing arguments; returns {core, args} or nullopt-ish
/// empty core when the term has fewer.
std::pair<Term, std::vector<Term>> strip_args(const Term& t, int k);

std::set<std::string> free_vars(const Term& t);
bool has_free_var(const Term& t, const std::string& name);
/// FV(a) ⊆ FV(b).
bool free_vars_subset(const Term& a, const Term& b);

/// Capture-avoiding substitution of the free variable `name` by `u` (which
/// must be locally closed).
Term substitute(const Term& t, const std::string& name, const Term& u);
/// Replaces the stripped binder's variable in `body` by `u`.
Term open_with(const Term& body, const Term& u);

/// Picks an identifier not free in any of `avoid`, derived from `base`.
std::string fresh_name(const std::string& base, const std::vector<Term>& avoid);

bool valid_position(const Term& t, const Position& p);
Term subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& u);
/// All positions of t, root first, depth-first.
std::vector<Position> positions_of(const Term& t);

/// One-step β-reducts at every position, deterministic order.
std::vector<Term> beta_reducts(const Term& t);
bool is_beta_normal(const Term& t);
/// Leftmost-outermost normalization; `max_steps` guards against runaway
/// inputs (InternalLimit).
Term beta_normalize(const Term& t, int max_steps = 100000);

/// Removes η-expansions λx.(t x), x not free in t, everywhere.
Term eta_normalize(const Term& t);

/// No abstraction and no applied variable.
bool is_algebraic(const Term& t);

/// β-normal and every free variable applied to terms η-equivalent to
/// pairwise-distinct bound variables.
bool is_miller_pattern(const Term& t);

}  // namespace horco
