#include <algorithm>
#include <functional>

#include "horco/engine.hpp"
#include "horco/error.hpp"
#include "horco/rel_ext.hpp"
#include "horco/type_acc.hpp"

namespace horco {

namespace {

bool proper_subterm_of(const Term& whole, const Term& sub) {
  switch (whole.kind()) {
    case TermKind::App:
      return whole.fun() == sub || whole.arg() == sub || proper_subterm_of(whole.fun(), sub) ||
             proper_subterm_of(whole.arg(), sub);
    case TermKind::Lam:
      return whole.body() == sub || proper_subterm_of(whole.body(), sub);
    default:
      return false;
  }
}

struct Validator {
  const Signature& sig;
  const ClosureConfig& cfg;
  TypingEnv env;
  bool has_env;
  std::string why;

  bool fail_at(const std::string& path, const std::string& msg) {
    if (why.empty()) why = path + ": " + msg;
    return false;
  }

  // Does goal equal body opened with some variable? Returns 0 on mismatch,
  // 1 with the variable in *z, 2 when the binder is unused.
  static int match_open(const Term& body, const Term& goal, std::string* z) {
    std::string var;
    std::function<bool(const Term&, const Term&, int)> go = [&](const Term& b, const Term& g,
                                                                int depth) -> bool {
      if (b.is(TermKind::BoundVar) && b.index() == depth) {
        if (!g.is(TermKind::FreeVar)) return false;
        if (var.empty()) var = g.name();
        return var == g.name();
      }
      if (b.kind() != g.kind()) return false;
      switch (b.kind()) {
        case TermKind::Symbol:
        case TermKind::FreeVar:
          return b.name() == g.name();
        case TermKind::BoundVar:
          return b.index() == g.index();
        case TermKind::App:
          return go(b.fun(), g.fun(), depth) && go(b.arg(), g.arg(), depth);
        case TermKind::Lam:
          return b.annot() == g.annot() && go(b.body(), g.body(), depth + 1);
      }
      return false;
    };
    if (!go(body, goal, 0)) return 0;
    if (var.empty()) return 2;
    *z = var;
    return 1;
  }

  static bool in_args(const Term& x, const std::vector<Term>& ts) {
    return std::any_of(ts.begin(), ts.end(), [&](const Term& t) { return t == x; });
  }

  static bool free_in_any(const std::string& x, const std::vector<Term>& ts) {
    return std::any_of(ts.begin(), ts.end(), [&](const Term& t) { return has_free_var(t, x); });
  }

  RelTag call_elem_rel() const {
    switch (cfg.call_order) {
      case CallOrder::Subterm: return RelTag::Subterm;
      case CallOrder::Accessibility: return RelTag::Acc;
      case CallOrder::RecursiveHorco: return cfg.strengthen_call ? RelTag::Horco : RelTag::Whorco;
    }
    return RelTag::Subterm;
  }

  bool closure_premise(const DerivPtr& p, const Judgment& parent, const Term& expected_goal,
                       const std::string& path) {
    if (p->concl.kind != Judgment::Kind::Closure) return fail_at(path, "expected closure premise");
    if (p->concl.fun != parent.fun) return fail_at(path, "closure head changed");
    if (p->concl.lhs_args.size() != parent.lhs_args.size())
      return fail_at(path, "closure lhs arity changed");
    for (std::size_t i = 0; i < parent.lhs_args.size(); ++i)
      if (!(p->concl.lhs_args[i] == parent.lhs_args[i]))
        return fail_at(path, "closure lhs arguments changed");
    if (!expected_goal.empty() && !(p->concl.goal == expected_goal))
      return fail_at(path, "premise goal mismatch");
    return check(p, path);
  }

  bool prec_edge(const DerivPtr& p, const std::string& f, const std::string& g, bool equiv,
                 const std::string& path) {
    if (p->rule != DRule::PrecEdge || p->concl.kind != Judgment::Kind::Prec)
      return fail_at(path, "expected prec-edge premise");
    if (p->concl.f != f || p->concl.g != g || p->concl.equiv != equiv)
      return fail_at(path, "prec-edge names mismatch");
    return check(p, path);
  }

  bool order_premise(const DerivPtr& p, RelTag rel, const Term& anchor, const std::string& path) {
    if (p->concl.kind != Judgment::Kind::Order || p->concl.rel != rel)
      return fail_at(path, "expected order premise in " + std::string(rel_name(rel)));
    if (rel == RelTag::Acc && !anchor.empty() && !(p->concl.anchor == anchor))
      return fail_at(path, "accessibility anchor mismatch");
    return check(p, path);
  }

  // P(f, t̄, u): premise is either t_j ≥ u (alpha or strict) or t > u.
  bool p_premise(const DerivPtr& p, const Term& t, const std::vector<Term>& ts, const Term& u,
                 const std::string& path) {
    if (p->concl.kind == Judgment::Kind::Alpha) {
      if (!(p->concl.rhs == u) || !in_args(p->concl.lhs, ts))
        return fail_at(path, "alpha premise does not witness P");
      return check(p, path);
    }
    if (p->concl.kind == Judgment::Kind::Order && p->concl.rel == RelTag::Horpo) {
      if (!(p->concl.rhs == u)) return fail_at(path, "P premise rhs mismatch");
      if (!(p->concl.lhs == t) && !in_args(p->concl.lhs, ts))
        return fail_at(path, "P premise lhs neither t nor an argument");
      return check(p, path);
    }
    return fail_at(path, "expected P premise");
  }

  bool check_ext(const DerivPtr& d, RelTag elem, const std::vector<Term>& as,
                 const std::vector<Term>& bs, StatusKind status, const Term& anchor,
                 const std::string& path) {
    if (d->concl.kind != Judgment::Kind::Ext) return fail_at(path, "expected extension node");
    const Judgment& j = d->concl;
    if (j.elem_rel != elem) return fail_at(path, "extension element relation mismatch");
    if (j.ext_status != status) return fail_at(path, "extension status mismatch");
    if (j.as.size() != as.size() || j.bs.size() != bs.size())
      return fail_at(path, "extension sequences changed");
    for (std::size_t i = 0; i < as.size(); ++i)
      if (!(j.as[i] == as[i])) return fail_at(path, "extension lhs sequence changed");
    for (std::size_t i = 0; i < bs.size(); ++i)
      if (!(j.bs[i] == bs[i])) return fail_at(path, "extension rhs sequence changed");
    return check(d, path, anchor);
  }

  bool check(const DerivPtr& d, const std::string& path, const Term& ext_anchor = Term()) {
    if (!d) return fail_at(path, "missing derivation");
    const Judgment& j = d->concl;
    const auto& ps = d->premises;
    auto sub = [&](std::size_t i) { return path + "/" + drule_name(d->rule) + "[" + std::to_string(i) + "]"; };

    switch (d->rule) {
      // ----------------------------------------------------------------- closure
      case DRule::Arg: {
        if (j.kind != Judgment::Kind::Closure) return fail_at(path, "arg: not a closure node");
        if (!in_args(j.goal, j.lhs_args)) return fail_at(path, "arg: goal is not an lhs argument");
        return true;
      }
      case DRule::DecompSymb: {
        if (j.kind != Judgment::Kind::Closure || ps.size() != 1)
          return fail_at(path, "decomp-symb: shape");
        auto [g, us] = spine(ps[0]->concl.goal);
        if (!g.is(TermKind::Symbol) || !sig.declared(g.name()))
          return fail_at(path, "decomp-symb: premise not symbol-headed");
        if (sig.symbol_type(g.name()).arity() != static_cast<int>(us.size()) || us.empty())
          return fail_at(path, "decomp-symb: premise not fully applied");
        bool hit = false;
        for (int i : accessible_args(sig, g.name(), cfg.acc_mode))
          if (us[i - 1] == j.goal) hit = true;
        if (!hit) return fail_at(path, "decomp-symb: goal not an accessible argument");
        return closure_premise(ps[0], j, Term(), sub(0));
      }
      case DRule::DecompLam: {
        if (!cfg.miller_rules) return fail_at(path, "decomp-lam: pattern rules disabled");
        if (j.kind != Judgment::Kind::Closure || ps.size() != 1)
          return fail_at(path, "decomp-lam: shape");
        const Term& lam = ps[0]->concl.goal;
        if (!lam.is(TermKind::Lam)) return fail_at(path, "decomp-lam: premise not a lambda");
        std::string z;
        int m = match_open(lam.body(), j.goal, &z);
        if (m == 0) return fail_at(path, "decomp-lam: goal is not the opened body");
        if (m == 1) {
          if (has_free_var(lam, z)) return fail_at(path, "decomp-lam: variable captured");
          if (free_in_any(z, j.lhs_args)) return fail_at(path, "decomp-lam: variable free in lhs");
        }
        return closure_premise(ps[0], j, Term(), sub(0));
      }
      case DRule::DecompAppLeft: {
        if (!cfg.miller_rules) return fail_at(path, "decomp-app-left: pattern rules disabled");
        if (j.kind != Judgment::Kind::Closure || ps.size() != 1)
          return fail_at(path, "decomp-app-left: shape");
        const Term& apped = ps[0]->concl.goal;
        if (!apped.is(TermKind::App) || !apped.arg().is(TermKind::FreeVar))
          return fail_at(path, "decomp-app-left: premise not u y");
        const std::string& y = apped.arg().name();
        if (free_in_any(y, j.lhs_args)) return fail_at(path, "decomp-app-left: y free in lhs");
        if (has_free_var(apped.fun(), y)) return fail_at(path, "decomp-app-left: y free in u");
        if (!(j.goal == apped.fun())) return fail_at(path, "decomp-app-left: goal mismatch");
        return closure_premise(ps[0], j, Term(), sub(0));
      }
      case DRule::Prec: {
        if (j.kind != Judgment::Kind::Closure || ps.size() != 1) return fail_at(path, "prec: shape");
        if (!j.goal.is(TermKind::Symbol)) return fail_at(path, "prec: goal not a bare symbol");
        return prec_edge(ps[0], j.fun, j.goal.name(), false, sub(0));
      }
      case DRule::Call: {
        if (j.kind != Judgment::Kind::Closure) return fail_at(path, "call: not a closure node");
        auto [g, us] = spine(j.goal);
        if (!g.is(TermKind::Symbol) || !sig.declared(g.name()))
          return fail_at(path, "call: goal not symbol-headed");
        if (ps.size() != 2 + us.size()) return fail_at(path, "call: premise count");
        if (!prec_edge(ps[0], j.fun, g.name(), true, sub(0))) return false;
        Term anchor = Term::app(Term::symbol(j.fun), j.lhs_args);
        StatusKind st = sig.status_of(j.fun);
        if (st == StatusKind::Mul &&
            sig.symbol_type(g.name()).arity() != static_cast<int>(us.size()))
          return fail_at(path, "call: mul status on a partial application");
        if (!check_ext(ps[1], call_elem_rel(), j.lhs_args, us, st, anchor, sub(1))) return false;
        for (std::size_t i = 0; i < us.size(); ++i)
          if (!closure_premise(ps[2 + i], j, us[i], sub(2 + i))) return false;
        return true;
      }
      case DRule::App: {
        if (j.kind != Judgment::Kind::Closure || ps.size() != 2 || !j.goal.is(TermKind::App))
          return fail_at(path, "app: shape");
        return closure_premise(ps[0], j, j.goal.fun(), sub(0)) &&
               closure_premise(ps[1], j, j.goal.arg(), sub(1));
      }
      case DRule::Var: {
        if (j.kind != Judgment::Kind::Closure || !j.goal.is(TermKind::FreeVar))
          return fail_at(path, "var: goal not a variable");
        if (free_in_any(j.goal.name(), j.lhs_args)) return fail_at(path, "var: variable free in lhs");
        return true;
      }
      case DRule::Lam: {
        if (j.kind != Judgment::Kind::Closure || ps.size() != 1 || !j.goal.is(TermKind::Lam))
          return fail_at(path, "lam: shape");
        std::string z;
        int m = match_open(j.goal.body(), ps[0]->concl.goal, &z);
        if (m == 0) return fail_at(path, "lam: premise is not the opened body");
        if (m == 1) {
          if (has_free_var(j.goal, z)) return fail_at(path, "lam: variable captured");
          if (free_in_any(z, j.lhs_args)) return fail_at(path, "lam: variable free in lhs");
        }
        return closure_premise(ps[0], j, Term(), sub(0));
      }
      case DRule::Red: {
        if (!cfg.red_rule) return fail_at(path, "red: rule disabled");
        if (j.kind != Judgment::Kind::Closure || ps.size() < 2) return fail_at(path, "red: shape");
        if (ps[0]->concl.kind != Judgment::Kind::Closure)
          return fail_at(path, "red: first premise not a closure member");
        Term cur = ps[0]->concl.goal;
        for (std::size_t i = 1; i < ps.size(); ++i) {
          if (!order_premise(ps[i], RelTag::Horco, Term(), sub(i))) return false;
          if (!(ps[i]->concl.lhs == cur)) return fail_at(path, "red: broken chain");
          cur = ps[i]->concl.rhs;
        }
        if (!(cur == j.goal)) return fail_at(path, "red: chain does not reach goal");
        return closure_premise(ps[0], j, Term(), sub(0));
      }

      // ----------------------------------------------------------------- whorco / horco
      case DRule::RuleRoot: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Whorco || ps.size() != 1)
          return fail_at(path, "rule: shape");
        auto [f, ls] = spine(j.lhs);
        if (!f.is(TermKind::Symbol) || !sig.declared(f.name()))
          return fail_at(path, "rule: lhs not symbol-headed");
        if (!free_vars_subset(j.rhs, j.lhs)) return fail_at(path, "rule: FV(rhs) not within FV(lhs)");
        if (has_env) {
          try {
            if (!(type_of(j.lhs, env, sig) == type_of(j.rhs, env, sig)))
              return fail_at(path, "rule: type mismatch");
          } catch (const Error& e) {
            return fail_at(path, std::string("rule: ") + e.what());
          }
        }
        const Judgment& pj = ps[0]->concl;
        if (pj.kind != Judgment::Kind::Closure || pj.fun != f.name() ||
            pj.lhs_args.size() != ls.size() || !(pj.goal == j.rhs))
          return fail_at(path, "rule: closure premise mismatch");
        for (std::size_t i = 0; i < ls.size(); ++i)
          if (!(pj.lhs_args[i] == ls[i])) return fail_at(path, "rule: closure premise lhs mismatch");
        return check(ps[0], sub(0));
      }
      case DRule::Cont: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Horco || ps.size() != 1 || !d->pos)
          return fail_at(path, "cont: shape");
        Term a = j.lhs, b = j.rhs;
        TypingEnv saved = env;
        int lamk = 0;
        for (int step : *d->pos) {
          if (a.is(TermKind::App) && b.is(TermKind::App) && step == 1) {
            if (!(a.arg() == b.arg())) return fail_at(path, "cont: contexts differ beside position");
            a = a.fun();
            b = b.fun();
          } else if (a.is(TermKind::App) && b.is(TermKind::App) && step == 2) {
            if (!(a.fun() == b.fun())) return fail_at(path, "cont: contexts differ beside position");
            a = a.arg();
            b = b.arg();
          } else if (a.is(TermKind::Lam) && b.is(TermKind::Lam) && step == 1) {
            if (!(a.annot() == b.annot())) return fail_at(path, "cont: binder types differ");
            std::string name = "^c" + std::to_string(lamk++) + "_" + a.annot().show();
            env[name] = a.annot();
            Term z = Term::free_var(name);
            a = open_with(a.body(), z);
            b = open_with(b.body(), z);
          } else {
            env = saved;
            return fail_at(path, "cont: invalid position");
          }
        }
        const Judgment& pj = ps[0]->concl;
        bool ok = pj.kind == Judgment::Kind::Order && pj.rel == RelTag::Whorco && pj.lhs == a &&
                  pj.rhs == b;
        if (!ok) {
          env = saved;
          return fail_at(path, "cont: premise does not match the divergence");
        }
        ok = check(ps[0], sub(0));
        env = saved;
        return ok;
      }
      case DRule::Trans: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Horco || ps.empty())
          return fail_at(path, "trans: shape");
        Term cur = j.lhs;
        for (std::size_t i = 0; i < ps.size(); ++i) {
          if (!order_premise(ps[i], RelTag::Horco, Term(), sub(i))) return false;
          if (!(ps[i]->concl.lhs == cur)) return fail_at(path, "trans: broken chain");
          cur = ps[i]->concl.rhs;
        }
        if (!(cur == j.rhs)) return fail_at(path, "trans: chain does not reach rhs");
        return true;
      }

      // ----------------------------------------------------------------- accessibility
      case DRule::AccBase: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Acc || !ps.empty())
          return fail_at(path, ">base: shape");
        auto [g, as] = spine(j.lhs);
        if (!g.is(TermKind::Symbol) || !sig.declared(g.name()))
          return fail_at(path, ">base: lhs not symbol-headed");
        const Type& tg = sig.symbol_type(g.name());
        if (tg.arity() != static_cast<int>(as.size()) || as.empty())
          return fail_at(path, ">base: lhs not fully applied at base type");
        std::vector<Type> doms = tg.domains();
        for (int i : accessible_args(sig, g.name(), cfg.acc_mode)) {
          const Type& ti = doms[i - 1];
          if (!(ti.result() == tg.result())) continue;
          auto [core, vs] = strip_args(j.rhs, ti.arity());
          if (core.empty() || !(core == as[i - 1])) continue;
          bool vars_ok = std::all_of(vs.begin(), vs.end(), [&](const Term& v) {
            return v.is(TermKind::FreeVar) && !has_free_var(j.anchor, v.name());
          });
          if (vars_ok) return true;
        }
        return fail_at(path, ">base: no accessible argument matches");
      }
      case DRule::AccLam: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Acc || ps.size() != 1 ||
            !j.lhs.is(TermKind::Lam))
          return fail_at(path, ">lam: shape");
        const Judgment& pj = ps[0]->concl;
        if (pj.kind != Judgment::Kind::Order || pj.rel != RelTag::Acc || !(pj.anchor == j.anchor))
          return fail_at(path, ">lam: premise shape");
        if (!pj.rhs.is(TermKind::App) || !(pj.rhs.fun() == j.rhs) ||
            !pj.rhs.arg().is(TermKind::FreeVar))
          return fail_at(path, ">lam: premise rhs is not (b x)");
        const std::string& z = pj.rhs.arg().name();
        if (has_free_var(j.rhs, z) || has_free_var(j.anchor, z))
          return fail_at(path, ">lam: variable not fresh");
        if (!(pj.lhs == open_with(j.lhs.body(), Term::free_var(z))))
          return fail_at(path, ">lam: premise lhs is not the opened body");
        return check(ps[0], sub(0));
      }
      case DRule::AccRed: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Acc || ps.size() != 1)
          return fail_at(path, ">red: shape");
        const Judgment& pj = ps[0]->concl;
        if (pj.kind != Judgment::Kind::Order || pj.rel != RelTag::Acc || !(pj.anchor == j.anchor) ||
            !(pj.lhs == j.lhs))
          return fail_at(path, ">red: premise shape");
        auto reducts = beta_reducts(pj.rhs);
        if (!in_args(j.rhs, reducts)) return fail_at(path, ">red: not a beta step");
        return check(ps[0], sub(0));
      }
      case DRule::AccTrans: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Acc || ps.size() != 2)
          return fail_at(path, ">trans: shape");
        const Judgment& p0 = ps[0]->concl;
        const Judgment& p1 = ps[1]->concl;
        if (p0.kind != Judgment::Kind::Order || p1.kind != Judgment::Kind::Order ||
            p0.rel != RelTag::Acc || p1.rel != RelTag::Acc)
          return fail_at(path, ">trans: premise shape");
        if (!(p0.anchor == j.anchor) || !(p1.anchor == j.anchor))
          return fail_at(path, ">trans: anchor mismatch");
        if (!(p0.lhs == j.lhs) || !(p0.rhs == p1.lhs) || !(p1.rhs == j.rhs))
          return fail_at(path, ">trans: broken chain");
        return check(ps[0], sub(0)) && check(ps[1], sub(1));
      }

      // ----------------------------------------------------------------- extensions
      case DRule::Lex: {
        if (j.kind != Judgment::Kind::Ext || j.ext_status == StatusKind::Mul || ps.empty())
          return fail_at(path, "lex: shape");
        bool lr = j.ext_status == StatusKind::LexLR;
        std::size_t n = std::min(j.as.size(), j.bs.size());
        if (ps.size() > n) return fail_at(path, "lex: too many premises");
        for (std::size_t k = 0; k < ps.size(); ++k) {
          const Term& a = lr ? j.as[k] : j.as[j.as.size() - 1 - k];
          const Term& b = lr ? j.bs[k] : j.bs[j.bs.size() - 1 - k];
          bool last = k + 1 == ps.size();
          const Judgment& pj = ps[k]->concl;
          if (!last) {
            if (ps[k]->rule != DRule::Alpha || !(pj.lhs == a) || !(pj.rhs == b))
              return fail_at(path, "lex: prefix not alpha-equal");
            if (!check(ps[k], sub(k))) return false;
          } else {
            if (pj.kind != Judgment::Kind::Order || pj.rel != j.elem_rel)
              return fail_at(path, "lex: pivot relation mismatch");
            if (!(pj.lhs == a) || !(pj.rhs == b)) return fail_at(path, "lex: pivot pair mismatch");
            if (j.elem_rel == RelTag::Acc && !ext_anchor.empty() && !(pj.anchor == ext_anchor))
              return fail_at(path, "lex: anchor mismatch");
            if (!check(ps[k], sub(k))) return false;
          }
        }
        return true;
      }
      case DRule::Mul: {
        if (j.kind != Judgment::Kind::Ext) return fail_at(path, "mul: shape");
        std::vector<bool> a_used(j.as.size(), false), b_cancelled(j.bs.size(), false);
        std::vector<const Derivation*> dominations;
        for (std::size_t k = 0; k < ps.size(); ++k) {
          const Judgment& pj = ps[k]->concl;
          if (ps[k]->rule == DRule::Alpha) {
            bool placed = false;
            for (std::size_t ia = 0; ia < j.as.size() && !placed; ++ia) {
              if (a_used[ia] || !(j.as[ia] == pj.lhs)) continue;
              for (std::size_t ib = 0; ib < j.bs.size(); ++ib) {
                if (b_cancelled[ib] || !(j.bs[ib] == pj.rhs)) continue;
                a_used[ia] = true;
                b_cancelled[ib] = true;
                placed = true;
                break;
              }
            }
            if (!placed) return fail_at(path, "mul: cancellation does not fit");
            if (!check(ps[k], sub(k))) return false;
          } else if (pj.kind == Judgment::Kind::Order) {
            if (pj.rel != j.elem_rel) return fail_at(path, "mul: element relation mismatch");
            if (j.elem_rel == RelTag::Acc && !ext_anchor.empty() && !(pj.anchor == ext_anchor))
              return fail_at(path, "mul: anchor mismatch");
            if (!check(ps[k], sub(k))) return false;
            dominations.push_back(ps[k].get());
          } else {
            return fail_at(path, "mul: unexpected premise");
          }
        }
        bool x_nonempty = std::any_of(a_used.begin(), a_used.end(), [](bool u) { return !u; });
        if (!x_nonempty) return fail_at(path, "mul: X is empty");
        for (std::size_t ib = 0; ib < j.bs.size(); ++ib) {
          if (b_cancelled[ib]) continue;
          bool covered = false;
          for (const Derivation* dom : dominations) {
            if (!(dom->concl.rhs == j.bs[ib])) continue;
            for (std::size_t ia = 0; ia < j.as.size(); ++ia)
              if (!a_used[ia] && j.as[ia] == dom->concl.lhs) {
                covered = true;
                break;
              }
            if (covered) break;
          }
          if (!covered) return fail_at(path, "mul: " + j.bs[ib].show() + " not dominated");
        }
        return true;
      }

      // ----------------------------------------------------------------- leaves
      case DRule::PrecEdge: {
        if (j.kind != Judgment::Kind::Prec) return fail_at(path, "prec-edge: shape");
        PrecRel want = j.equiv ? PrecRel::Equivalent : PrecRel::Greater;
        try {
          if (sig.prec_compare(j.f, j.g) != want)
            return fail_at(path, "prec-edge: " + j.f + " vs " + j.g + " not " +
                                     (j.equiv ? "equivalent" : "greater"));
        } catch (const Error& e) {
          return fail_at(path, e.what());
        }
        return true;
      }
      case DRule::Alpha: {
        if (!(j.lhs == j.rhs)) return fail_at(path, "alpha: terms differ");
        return true;
      }
      case DRule::Subterm: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Subterm)
          return fail_at(path, "subterm: shape");
        if (!proper_subterm_of(j.lhs, j.rhs)) return fail_at(path, "subterm: not a proper subterm");
        if (!free_vars_subset(j.rhs, j.lhs)) return fail_at(path, "subterm: FV not within");
        return true;
      }

      // ----------------------------------------------------------------- RPO
      case DRule::Rpo1:
      case DRule::Rpo2:
      case DRule::Rpo3:
        return check_path_ordering(d, RelTag::Rpo, path);

      // ----------------------------------------------------------------- forco
      case DRule::FoArg: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Forco)
          return fail_at(path, "arg: shape");
        auto [f, ts] = spine(j.lhs);
        if (!f.is(TermKind::Symbol)) return fail_at(path, "arg: lhs not symbol-headed");
        if (!in_args(j.rhs, ts)) return fail_at(path, "arg: rhs not an argument");
        return true;
      }
      case DRule::FoPrec:
      case DRule::FoCall:
        return check_path_ordering(d, RelTag::Forco, path);
      case DRule::FoRed: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Forco || ps.size() != 2)
          return fail_at(path, "red: shape");
        const Judgment& p0 = ps[0]->concl;
        const Judgment& p1 = ps[1]->concl;
        if (p0.kind != Judgment::Kind::Order || p1.kind != Judgment::Kind::Order ||
            p0.rel != RelTag::Forco || p1.rel != RelTag::Forco)
          return fail_at(path, "red: premise shape");
        if (!(p0.lhs == j.lhs) || !(p0.rhs == p1.lhs) || !(p1.rhs == j.rhs))
          return fail_at(path, "red: broken chain");
        return check(ps[0], sub(0)) && check(ps[1], sub(1));
      }

      // ----------------------------------------------------------------- HORPO
      case DRule::Horpo1: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Horpo || ps.size() != 1)
          return fail_at(path, "horpo-1: shape");
        auto [f, ts] = spine(j.lhs);
        if (!f.is(TermKind::Symbol)) return fail_at(path, "horpo-1: lhs not symbol-headed");
        const Judgment& pj = ps[0]->concl;
        if (pj.kind == Judgment::Kind::Alpha) {
          if (!in_args(pj.lhs, ts) || !(pj.rhs == j.rhs))
            return fail_at(path, "horpo-1: alpha premise mismatch");
          return check(ps[0], sub(0));
        }
        if (pj.kind == Judgment::Kind::Order && pj.rel == RelTag::Horpo) {
          if (!in_args(pj.lhs, ts) || !(pj.rhs == j.rhs))
            return fail_at(path, "horpo-1: premise mismatch");
          return check(ps[0], sub(0));
        }
        return fail_at(path, "horpo-1: premise kind");
      }
      case DRule::Horpo2:
      case DRule::Horpo4: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Horpo)
          return fail_at(path, "horpo: shape");
        auto [f, ts] = spine(j.lhs);
        auto [g, us] = spine(j.rhs);
        if (!f.is(TermKind::Symbol) || !g.is(TermKind::Symbol))
          return fail_at(path, "horpo: heads not symbols");
        bool equiv = d->rule == DRule::Horpo4;
        std::size_t fixed = equiv ? 2 : 1;
        if (ps.size() != fixed + us.size()) return fail_at(path, "horpo: premise count");
        if (!prec_edge(ps[0], f.name(), g.name(), equiv, sub(0))) return false;
        if (equiv) {
          StatusKind st = sig.status_of(f.name());
          if (st == StatusKind::Mul) return fail_at(path, "horpo-4: status is mul");
          if (!check_ext(ps[1], RelTag::Horpo, ts, us, st, Term(), sub(1))) return false;
        }
        for (std::size_t i = 0; i < us.size(); ++i)
          if (!p_premise(ps[fixed + i], j.lhs, ts, us[i], sub(fixed + i))) return false;
        return true;
      }
      case DRule::Horpo3: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Horpo || ps.size() != 2)
          return fail_at(path, "horpo-3: shape");
        auto [f, ts] = spine(j.lhs);
        auto [g, us] = spine(j.rhs);
        if (!f.is(TermKind::Symbol) || !g.is(TermKind::Symbol))
          return fail_at(path, "horpo-3: heads not symbols");
        if (sig.status_of(f.name()) != StatusKind::Mul) return fail_at(path, "horpo-3: status not mul");
        if (!prec_edge(ps[0], f.name(), g.name(), true, sub(0))) return false;
        return check_ext(ps[1], RelTag::Horpo, ts, us, StatusKind::Mul, Term(), sub(1));
      }
      case DRule::Horpo5: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Horpo || !j.rhs.is(TermKind::App))
          return fail_at(path, "horpo-5: shape");
        auto [f, ts] = spine(j.lhs);
        if (!f.is(TermKind::Symbol)) return fail_at(path, "horpo-5: lhs not symbol-headed");
        auto [uh, us] = spine(j.rhs);
        std::vector<Term> comps{uh};
        comps.insert(comps.end(), us.begin(), us.end());
        if (ps.size() != comps.size()) return fail_at(path, "horpo-5: premise count");
        for (std::size_t i = 0; i < comps.size(); ++i)
          if (!p_premise(ps[i], j.lhs, ts, comps[i], sub(i))) return false;
        return true;
      }
      case DRule::Horpo6: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Horpo || ps.size() != 1 ||
            !j.lhs.is(TermKind::App) || !j.rhs.is(TermKind::App))
          return fail_at(path, "horpo-6: shape");
        std::vector<Term> as{j.lhs.fun(), j.lhs.arg()};
        std::vector<Term> bs{j.rhs.fun(), j.rhs.arg()};
        return check_ext(ps[0], RelTag::Horpo, as, bs, StatusKind::Mul, Term(), sub(0));
      }
      case DRule::Horpo7: {
        if (j.kind != Judgment::Kind::Order || j.rel != RelTag::Horpo || ps.size() != 1 ||
            !j.lhs.is(TermKind::Lam) || !j.rhs.is(TermKind::Lam) || !(j.lhs.annot() == j.rhs.annot()))
          return fail_at(path, "horpo-7: shape");
        const Judgment& pj = ps[0]->concl;
        if (pj.kind != Judgment::Kind::Order || pj.rel != RelTag::Horpo)
          return fail_at(path, "horpo-7: premise shape");
        std::string z1, z2;
        int m1 = match_open(j.lhs.body(), pj.lhs, &z1);
        int m2 = match_open(j.rhs.body(), pj.rhs, &z2);
        if (m1 == 0 || m2 == 0) return fail_at(path, "horpo-7: premise not the opened bodies");
        if (m1 == 1 && m2 == 1 && z1 != z2) return fail_at(path, "horpo-7: inconsistent opening");
        std::string z = m1 == 1 ? z1 : (m2 == 1 ? z2 : std::string());
        if (!z.empty() && (has_free_var(j.lhs, z) || has_free_var(j.rhs, z)))
          return fail_at(path, "horpo-7: variable captured");
        return check(ps[0], sub(0));
      }
    }
    return fail_at(path, "unknown rule");
  }

  // Shared structure of RPO (2)/(3) and forco (prec)/(call).
  bool check_path_ordering(const DerivPtr& d, RelTag rel, const std::string& path) {
    const Judgment& j = d->concl;
    const auto& ps = d->premises;
    auto sub = [&](std::size_t i) { return path + "/" + drule_name(d->rule) + "[" + std::to_string(i) + "]"; };
    if (j.kind != Judgment::Kind::Order || j.rel != rel) return fail_at(path, "shape");
    auto [f, ts] = spine(j.lhs);
    if (!f.is(TermKind::Symbol)) return fail_at(path, "lhs not symbol-headed");

    if (d->rule == DRule::Rpo1) {
      if (ps.size() != 1) return fail_at(path, "rpo-1: premise count");
      const Judgment& pj = ps[0]->concl;
      bool is_alpha = ps[0]->rule == DRule::Alpha;
      bool is_order = pj.kind == Judgment::Kind::Order && pj.rel == rel;
      if (!is_alpha && !is_order) return fail_at(path, "rpo-1: premise kind");
      if (!in_args(pj.lhs, ts) || !(pj.rhs == j.rhs)) return fail_at(path, "rpo-1: premise mismatch");
      return check(ps[0], sub(0));
    }

    auto [g, us] = spine(j.rhs);
    if (!g.is(TermKind::Symbol)) return fail_at(path, "rhs not symbol-headed");
    bool equiv = d->rule == DRule::Rpo3 || d->rule == DRule::FoCall;
    std::size_t fixed = equiv ? 2 : 1;
    if (ps.size() != fixed + us.size()) return fail_at(path, "premise count");
    if (!prec_edge(ps[0], f.name(), g.name(), equiv, sub(0))) return false;
    if (equiv) {
      StatusKind st = sig.status_of(f.name());
      if (!check_ext(ps[1], rel, ts, us, st, Term(), sub(1))) return false;
    }
    for (std::size_t i = 0; i < us.size(); ++i) {
      const Judgment& pj = ps[fixed + i]->concl;
      if (pj.kind != Judgment::Kind::Order || pj.rel != rel || !(pj.lhs == j.lhs) ||
          !(pj.rhs == us[i]))
        return fail_at(path, "argument premise mismatch");
      if (!check(ps[fixed + i], sub(fixed + i))) return false;
    }
    return true;
  }
};

}  // namespace

bool OrientEngine::validate_certificate(const DerivPtr& d, const TypingEnv* env,
                                        std::string* why) const {
  Validator v{sig_, sys_.config, env ? *env : TypingEnv{}, env != nullptr, {}};
  bool ok = v.check(d, "root");
  if (!ok && why) *why = v.why;
  return ok;
}

}  // namespace horco
