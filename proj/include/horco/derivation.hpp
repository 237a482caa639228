#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "horco/signature.hpp"
#include "horco/term.hpp"

namespace horco {

enum class Tri { Yes, No, DepthLimited };

const char* tri_name(Tri t);

/// Which relation an Order judgment lives in.
enum class RelTag { Subterm, Acc, Rpo, Forco, Horpo, Whorco, Horco };

const char* rel_name(RelTag r);

enum class DRule {
  // closure rules
  Arg, DecompSymb, DecompLam, DecompAppLeft, Prec, Call, App, Var, Lam, Red,
  // ordering wrappers
  Cont, RuleRoot, Trans,
  // accessibility ordering
  AccBase, AccLam, AccRed, AccTrans,
  // extensions
  Lex, Mul,
  // leaves
  PrecEdge, Alpha, Subterm,
  // first-order orderings
  Rpo1, Rpo2, Rpo3, FoArg, FoPrec, FoCall, FoRed,
  // HORPO
  Horpo1, Horpo2, Horpo3, Horpo4, Horpo5, Horpo6, Horpo7,
};

const char* drule_name(DRule r);

/// What a derivation node concludes. Fields are populated per kind.
struct Judgment {
  enum class Kind { Closure, Order, Ext, Prec, Alpha };
  Kind kind = Kind::Alpha;

  // Closure: goal ∈ CC^fun(lhs_args)
  std::string fun;
  std::vector<Term> lhs_args;
  Term goal;

  // Order: lhs > rhs in rel; anchor carries the l of the >^l family.
  RelTag rel = RelTag::Rpo;
  Term lhs, rhs;
  Term anchor;

  // Ext: as (rel)_status bs over elem_rel
  StatusKind ext_status = StatusKind::LexLR;
  RelTag elem_rel = RelTag::Rpo;
  std::vector<Term> as, bs;

  // Prec: f > g (equiv=false) or f ~ g (equiv=true)
  std::string f, g;
  bool equiv = false;

  static Judgment closure(std::string fun, std::vector<Term> ls, Term goal);
  static Judgment order(RelTag rel, Term lhs, Term rhs, Term anchor = Term());
  static Judgment ext(StatusKind st, RelTag elem, std::vector<Term> as, std::vector<Term> bs);
  static Judgment prec(std::string f, std::string g, bool equiv);
  static Judgment alpha(Term lhs, Term rhs);

  std::string show() const;
};

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

/// A replayable certificate node: the inference rule applied, its
/// conclusion, and its premises.
struct Derivation {
  DRule rule;
  Judgment concl;
  std::vector<DerivPtr> premises;
  std::optional<Position> pos;  // (cont): the rewrite position

  static DerivPtr make(DRule rule, Judgment concl, std::vector<DerivPtr> premises = {},
                       std::optional<Position> pos = std::nullopt);

  int node_count() const;
  int depth() const;
  std::string show(int indent = 0) const;
};

/// Replaces free variables throughout a derivation tree (conclusions and
/// premises alike).
DerivPtr deriv_substitute(const DerivPtr& d, const std::map<std::string, Term>& subst);

/// Outcome of a comparison: certificate present iff Yes.
struct CmpOutcome {
  Tri tri = Tri::No;
  DerivPtr deriv;

  bool yes() const { return tri == Tri::Yes; }
  static CmpOutcome yes_with(DerivPtr d) { return {Tri::Yes, std::move(d)}; }
  static CmpOutcome no() { return {Tri::No, nullptr}; }
  static CmpOutcome limited() { return {Tri::DepthLimited, nullptr}; }
};

}  // namespace horco
