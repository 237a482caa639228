#include "horco/derivation.hpp"

#include <algorithm>

namespace horco {

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::DepthLimited: return "depth-limited";
  }
  return "?";
}

const char* rel_name(RelTag r) {
  switch (r) {
    case RelTag::Subterm: return "subterm";
    case RelTag::Acc: return "acc";
    case RelTag::Rpo: return "rpo";
    case RelTag::Forco: return "forco";
    case RelTag::Horpo: return "horpo";
    case RelTag::Whorco: return "whorco";
    case RelTag::Horco: return "horco";
  }
  return "?";
}

const char* drule_name(DRule r) {
  switch (r) {
    case DRule::Arg: return "arg";
    case DRule::DecompSymb: return "decomp-symb";
    case DRule::DecompLam: return "decomp-lam";
    case DRule::DecompAppLeft: return "decomp-app-left";
    case DRule::Prec: return "prec";
    case DRule::Call: return "call";
    case DRule::App: return "app";
    case DRule::Var: return "var";
    case DRule::Lam: return "lam";
    case DRule::Red: return "red";
    case DRule::Cont: return "cont";
    case DRule::RuleRoot: return "rule";
    case DRule::Trans: return "trans";
    case DRule::AccBase: return ">base";
    case DRule::AccLam: return ">lam";
    case DRule::AccRed: return ">red";
    case DRule::AccTrans: return ">trans";
    case DRule::Lex: return "lex";
    case DRule::Mul: return "mul";
    case DRule::PrecEdge: return "prec-edge";
    case DRule::Alpha: return "alpha";
    case DRule::Subterm: return "subterm";
    case DRule::Rpo1: return "rpo-1";
    case DRule::Rpo2: return "rpo-2";
    case DRule::Rpo3: return "rpo-3";
    case DRule::FoArg: return "arg";
    case DRule::FoPrec: return "prec";
    case DRule::FoCall: return "call";
    case DRule::FoRed: return "red";
    case DRule::Horpo1: return "horpo-1";
    case DRule::Horpo2: return "horpo-2";
    case DRule::Horpo3: return "horpo-3";
    case DRule::Horpo4: return "horpo-4";
    case DRule::Horpo5: return "horpo-5";
    case DRule::Horpo6: return "horpo-6";
    case DRule::Horpo7: return "horpo-7";
  }
  return "?";
}

Judgment Judgment::closure(std::string fun, std::vector<Term> ls, Term goal) {
  Judgment j;
  j.kind = Kind::Closure;
  j.fun = std::move(fun);
  j.lhs_args = std::move(ls);
  j.goal = std::move(goal);
  return j;
}

Judgment Judgment::order(RelTag rel, Term lhs, Term rhs, Term anchor) {
  Judgment j;
  j.kind = Kind::Order;
  j.rel = rel;
  j.lhs = std::move(lhs);
  j.rhs = std::move(rhs);
  j.anchor = std::move(anchor);
  return j;
}

Judgment Judgment::ext(StatusKind st, RelTag elem, std::vector<Term> as, std::vector<Term> bs) {
  Judgment j;
  j.kind = Kind::Ext;
  j.ext_status = st;
  j.elem_rel = elem;
  j.as = std::move(as);
  j.bs = std::move(bs);
  return j;
}

Judgment Judgment::prec(std::string f, std::string g, bool equiv) {
  Judgment j;
  j.kind = Kind::Prec;
  j.f = std::move(f);
  j.g = std::move(g);
  j.equiv = equiv;
  return j;
}

Judgment Judgment::alpha(Term lhs, Term rhs) {
  Judgment j;
  j.kind = Kind::Alpha;
  j.lhs = std::move(lhs);
  j.rhs = std::move(rhs);
  return j;
}

namespace {
std::string show_terms(const std::vector<Term>& ts) {
  std::string out = "(";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ", ";
    out += ts[i].show();
  }
  return out + ")";
}
}  // namespace

std::string Judgment::show() const {
  switch (kind) {
    case Kind::Closure:
      return goal.show() + " in CC^" + fun + show_terms(lhs_args);
    case Kind::Order: {
      std::string op = std::string(">") + (rel == RelTag::Acc ? "^l" : "") + "_" + rel_name(rel);
      return lhs.show() + " " + op + " " + rhs.show();
    }
    case Kind::Ext:
      return show_terms(as) + " >" + status_name(ext_status) + "(" + rel_name(elem_rel) + ") " + show_terms(bs);
    case Kind::Prec:
      return f + (equiv ? " ~ " : " > ") + g;
    case Kind::Alpha:
      return lhs.show() + " = " + rhs.show();
  }
  return "?";
}

DerivPtr Derivation::make(DRule rule, Judgment concl, std::vector<DerivPtr> premises,
                          std::optional<Position> pos) {
  auto d = std::make_shared<Derivation>();
  d->rule = rule;
  d->concl = std::move(concl);
  d->premises = std::move(premises);
  d->pos = std::move(pos);
  return d;
}

int Derivation::node_count() const {
  int n = 1;
  for (const auto& p : premises) n += p->node_count();
  return n;
}

int Derivation::depth() const {
  int d = 0;
  for (const auto& p : premises) d = std::max(d, p->depth());
  return d + 1;
}

std::string Derivation::show(int indent) const {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  std::string out = pad + "(" + drule_name(rule) + ") " + concl.show();
  if (pos) out += " @" + show_position(*pos);
  out += "\n";
  for (const auto& p : premises) out += p->show(indent + 1);
  return out;
}

namespace {
Term term_subst(const Term& t, const std::map<std::string, Term>& subst) {
  if (t.empty()) return t;
  Term out = t;
  for (const auto& [name, rep] : subst) out = substitute(out, name, rep);
  return out;
}
}  // namespace

DerivPtr deriv_substitute(const DerivPtr& d, const std::map<std::string, Term>& subst) {
  if (!d) return d;
  auto nd = std::make_shared<Derivation>(*d);
  Judgment& j = nd->concl;
  j.goal = term_subst(j.goal, subst);
  j.lhs = term_subst(j.lhs, subst);
  j.rhs = term_subst(j.rhs, subst);
  j.anchor = term_subst(j.anchor, subst);
  for (Term& t : j.lhs_args) t = term_subst(t, subst);
  for (Term& t : j.as) t = term_subst(t, subst);
  for (Term& t : j.bs) t = term_subst(t, subst);
  for (auto& p : nd->premises) p = deriv_substitute(p, subst);
  return nd;
}

}  // namespace horco
