#include "horco/engine.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>
#include <unordered_set>

#include "horco/error.hpp"
#include "horco/rel_ext.hpp"

namespace horco {

const char* call_order_name(CallOrder c) {
  switch (c) {
    case CallOrder::Subterm: return "subterm";
    case CallOrder::Accessibility: return "acc";
    case CallOrder::RecursiveHorco: return "recursive";
  }
  return "?";
}

const char* theory_issue_name(TheoryIssue::Kind k) {
  switch (k) {
    case TheoryIssue::Kind::NonSymmetric: return "NonSymmetricTheory";
    case TheoryIssue::Kind::Collapsing: return "CollapsingTheoryRule";
    case TheoryIssue::Kind::Erasing: return "ErasingTheoryRule";
    case TheoryIssue::Kind::NotInClosure: return "TheoryRuleNotInClosure";
    case TheoryIssue::Kind::Malformed: return "MalformedRule";
  }
  return "?";
}

namespace {

bool is_proper_subterm(const Term& whole, const Term& sub) {
  switch (whole.kind()) {
    case TermKind::App:
      return whole.fun() == sub || whole.arg() == sub || is_proper_subterm(whole.fun(), sub) ||
             is_proper_subterm(whole.arg(), sub);
    case TermKind::Lam:
      return whole.body() == sub || is_proper_subterm(whole.body(), sub);
    default:
      return false;
  }
}

struct AccMember {
  Term term;
  std::set<std::string> flex;  // decomposition-introduced variables
  DerivPtr deriv;
};

}  // namespace

// ---------------------------------------------------------------------------
// Query state

struct OrientEngine::Query {
  const OrientEngine& eng;
  const Signature& sig;
  const ClosureConfig& cfg;
  TypingEnv env;
  int fresh_counter = 0;
  bool limited = false;

  std::unordered_map<std::pair<Term, Term>, CmpOutcome, TermPairHash, TermPairEqual> whorco_memo;
  std::unordered_set<std::pair<Term, Term>, TermPairHash, TermPairEqual> whorco_visiting;

  struct CcState {
    std::string fun;
    std::vector<Term> ls;
    Term anchor;
    std::set<std::string> lhs_fv;
    std::vector<AccMember> members;
    std::vector<std::pair<Term, DerivPtr>> proven;
    std::unordered_map<Term, CmpOutcome, TermHash> memo;
    std::unordered_set<Term, TermHash> visiting;
  };
  std::unordered_map<Term, std::shared_ptr<CcState>, TermHash> cc_states;

  Query(const OrientEngine& e, TypingEnv environment)
      : eng(e), sig(e.sig_), cfg(e.sys_.config), env(std::move(environment)) {}

  std::string fresh(const Type& ty) {
    std::string name = "^v" + std::to_string(fresh_counter++);
    env[name] = ty;
    return name;
  }

  Type type_in_env(const Term& t) { return type_of(t, env, sig); }

  // -------------------------------------------------------------------------
  // Accessible set: closure of l̄ under (decomp-symb) and, with Miller rules,
  // (decomp-lam)/(decomp-app-left).

  std::shared_ptr<CcState> cc_state(const std::string& f, const std::vector<Term>& ls) {
    Term anchor = Term::app(Term::symbol(f), ls);
    if (auto it = cc_states.find(anchor); it != cc_states.end()) return it->second;
    auto st = std::make_shared<CcState>();
    st->fun = f;
    st->ls = ls;
    st->anchor = anchor;
    for (const Term& l : ls)
      for (const auto& v : free_vars(l)) st->lhs_fv.insert(v);

    for (const Term& l : ls) {
      st->members.push_back(
          {l, {}, Derivation::make(DRule::Arg, Judgment::closure(f, ls, l))});
    }
    auto seen = [&](const Term& t) {
      return std::any_of(st->members.begin(), st->members.end(),
                         [&](const AccMember& m) { return m.term == t; });
    };
    for (std::size_t i = 0; i < st->members.size() && i < 4096; ++i) {
      AccMember m = st->members[i];
      auto [head, args] = spine(m.term);
      if (head.is(TermKind::Symbol) && sig.declared(head.name()) && !args.empty() &&
          sig.symbol_type(head.name()).arity() == static_cast<int>(args.size())) {
        for (int idx : accessible_args(sig, head.name(), cfg.acc_mode)) {
          const Term& child = args[idx - 1];
          if (seen(child)) continue;
          st->members.push_back({child, m.flex,
                                 Derivation::make(DRule::DecompSymb,
                                                  Judgment::closure(f, ls, child), {m.deriv})});
        }
      }
      if (cfg.miller_rules && m.term.is(TermKind::Lam)) {
        std::string z = fresh(m.term.annot());
        Term opened = open_with(m.term.body(), Term::free_var(z));
        if (!seen(opened)) {
          auto flex = m.flex;
          flex.insert(z);
          st->members.push_back({opened, std::move(flex),
                                 Derivation::make(DRule::DecompLam,
                                                  Judgment::closure(f, ls, opened), {m.deriv})});
        }
      }
      if (cfg.miller_rules && m.term.is(TermKind::App) && m.term.arg().is(TermKind::FreeVar)) {
        const std::string& y = m.term.arg().name();
        if (m.flex.count(y) && !st->lhs_fv.count(y) && !has_free_var(m.term.fun(), y)) {
          Term child = m.term.fun();
          if (!seen(child)) {
            auto flex = m.flex;
            flex.erase(y);
            st->members.push_back({child, std::move(flex),
                                   Derivation::make(DRule::DecompAppLeft,
                                                    Judgment::closure(f, ls, child), {m.deriv})});
          }
        }
      }
    }
    cc_states.emplace(anchor, st);
    return st;
  }

  // Matches a goal against a member up to renaming of its flex variables:
  // each flex variable maps, injectively, to a goal variable outside FV(l̄)
  // and outside the member's rigid free variables.
  bool match_member(const AccMember& m, const Term& goal, const std::set<std::string>& lhs_fv,
                    std::map<std::string, Term>* binding_out) {
    if (m.flex.empty()) {
      if (m.term == goal) {
        binding_out->clear();
        return true;
      }
      return false;
    }
    std::set<std::string> rigid;
    for (const auto& v : free_vars(m.term))
      if (!m.flex.count(v)) rigid.insert(v);
    std::map<std::string, std::string> binding;
    std::set<std::string> used;
    std::function<bool(const Term&, const Term&)> go = [&](const Term& mt, const Term& g) -> bool {
      if (mt.is(TermKind::FreeVar) && m.flex.count(mt.name())) {
        if (!g.is(TermKind::FreeVar)) return false;
        const std::string& w = g.name();
        if (lhs_fv.count(w) || rigid.count(w)) return false;
        auto it = binding.find(mt.name());
        if (it != binding.end()) return it->second == w;
        if (used.count(w)) return false;
        binding.emplace(mt.name(), w);
        used.insert(w);
        return true;
      }
      if (mt.kind() != g.kind()) return false;
      switch (mt.kind()) {
        case TermKind::Symbol:
        case TermKind::FreeVar:
          return mt.name() == g.name();
        case TermKind::BoundVar:
          return mt.index() == g.index();
        case TermKind::App:
          return go(mt.fun(), g.fun()) && go(mt.arg(), g.arg());
        case TermKind::Lam:
          return mt.annot() == g.annot() && go(mt.body(), g.body());
      }
      return false;
    };
    if (!go(m.term, goal)) return false;
    binding_out->clear();
    for (const auto& [from, to] : binding) binding_out->emplace(from, Term::free_var(to));
    return true;
  }

  // -------------------------------------------------------------------------
  // Closure membership search

  Cmp call_comparator(CcState& st, int depth) {
    switch (cfg.call_order) {
      case CallOrder::Subterm:
        return [](const Term& a, const Term& b) -> CmpOutcome {
          if (is_proper_subterm(a, b) && free_vars_subset(b, a))
            return CmpOutcome::yes_with(
                Derivation::make(DRule::Subterm, Judgment::order(RelTag::Subterm, a, b)));
          return CmpOutcome::no();
        };
      case CallOrder::Accessibility: {
        Term anchor = st.anchor;
        return [this, anchor, depth](const Term& a, const Term& b) -> CmpOutcome {
          CmpOutcome r = acc_greater(sig, cfg.acc_mode, anchor, a, b, depth, &fresh_counter);
          if (r.tri == Tri::DepthLimited) limited = true;
          return r;
        };
      }
      case CallOrder::RecursiveHorco:
        if (cfg.strengthen_call)
          return [this, depth](const Term& a, const Term& b) { return horco(a, b, depth - 1); };
        return [this, depth](const Term& a, const Term& b) { return whorco(a, b, depth - 1); };
    }
    return [](const Term&, const Term&) { return CmpOutcome::no(); };
  }

  RelTag call_elem_rel() const {
    switch (cfg.call_order) {
      case CallOrder::Subterm: return RelTag::Subterm;
      case CallOrder::Accessibility: return RelTag::Acc;
      case CallOrder::RecursiveHorco: return cfg.strengthen_call ? RelTag::Horco : RelTag::Whorco;
    }
    return RelTag::Subterm;
  }

  CmpOutcome cc(CcState& st, const Term& goal, int depth) {
    if (depth <= 0) {
      limited = true;
      return CmpOutcome::limited();
    }
    if (auto it = st.memo.find(goal); it != st.memo.end()) return it->second;
    if (!st.visiting.insert(goal).second) return CmpOutcome::no();
    bool saved = limited;
    limited = false;
    CmpOutcome result = cc_core(st, goal, depth);
    bool this_limited = limited;
    limited = saved || this_limited;
    st.visiting.erase(goal);
    if (!result.yes() && this_limited) result = CmpOutcome::limited();
    if (result.yes() || (result.tri == Tri::No && !this_limited)) st.memo[goal] = result;
    if (result.yes()) st.proven.emplace_back(goal, result.deriv);
    return result;
  }

  CmpOutcome cc_core(CcState& st, const Term& goal, int depth) {
    // accessible set, up to the flex renaming
    for (const AccMember& m : st.members) {
      std::map<std::string, Term> binding;
      if (match_member(m, goal, st.lhs_fv, &binding)) {
        DerivPtr d = binding.empty() ? m.deriv : deriv_substitute(m.deriv, binding);
        return CmpOutcome::yes_with(d);
      }
    }

    // (var)
    if (goal.is(TermKind::FreeVar) && !st.lhs_fv.count(goal.name())) {
      return CmpOutcome::yes_with(
          Derivation::make(DRule::Var, Judgment::closure(st.fun, st.ls, goal)));
    }

    auto [head, args] = spine(goal);

    // (prec)
    if (head.is(TermKind::Symbol) && sig.declared(head.name()) && args.empty() &&
        sig.prec_compare(st.fun, head.name()) == PrecRel::Greater) {
      return CmpOutcome::yes_with(Derivation::make(
          DRule::Prec, Judgment::closure(st.fun, st.ls, goal),
          {Derivation::make(DRule::PrecEdge, Judgment::prec(st.fun, head.name(), false))}));
    }

    // (call): with mul status the call must be fully applied, otherwise
    // arguments beyond the compared tuple would escape the multiset
    // comparison (the lex prefix rule is the analogous safeguard)
    bool call_applies = head.is(TermKind::Symbol) && sig.declared(head.name()) &&
                        sig.prec_compare(st.fun, head.name()) == PrecRel::Equivalent;
    if (call_applies && sig.status_of(st.fun) == StatusKind::Mul &&
        sig.symbol_type(head.name()).arity() != static_cast<int>(args.size()))
      call_applies = false;
    if (call_applies) {
      std::vector<DerivPtr> arg_derivs;
      bool args_ok = true;
      for (const Term& u : args) {
        CmpOutcome r = cc(st, u, depth - 1);
        if (!r.yes()) {
          args_ok = false;
          break;
        }
        arg_derivs.push_back(r.deriv);
      }
      if (args_ok) {
        CmpOutcome ext =
            status_compare(call_comparator(st, depth), call_elem_rel(), sig, st.fun, st.ls,
                           head.name(), args);
        if (ext.tri == Tri::DepthLimited) limited = true;
        if (ext.yes()) {
          std::vector<DerivPtr> premises{
              Derivation::make(DRule::PrecEdge, Judgment::prec(st.fun, head.name(), true)),
              ext.deriv};
          premises.insert(premises.end(), arg_derivs.begin(), arg_derivs.end());
          return CmpOutcome::yes_with(Derivation::make(
              DRule::Call, Judgment::closure(st.fun, st.ls, goal), std::move(premises)));
        }
      }
    }

    // (app)
    if (goal.is(TermKind::App)) {
      CmpOutcome rf = cc(st, goal.fun(), depth - 1);
      if (rf.yes()) {
        CmpOutcome ra = cc(st, goal.arg(), depth - 1);
        if (ra.yes()) {
          return CmpOutcome::yes_with(Derivation::make(
              DRule::App, Judgment::closure(st.fun, st.ls, goal), {rf.deriv, ra.deriv}));
        }
      }
    }

    // (lam)
    if (goal.is(TermKind::Lam)) {
      Term z = Term::free_var(fresh(goal.annot()));
      CmpOutcome r = cc(st, open_with(goal.body(), z), depth - 1);
      if (r.yes()) {
        return CmpOutcome::yes_with(
            Derivation::make(DRule::Lam, Judgment::closure(st.fun, st.ls, goal), {r.deriv}));
      }
    }

    // (red): an already-derived member rewrites to the goal
    if (cfg.red_rule) {
      std::vector<std::pair<Term, DerivPtr>> candidates;
      for (const AccMember& m : st.members)
        if (m.flex.empty()) candidates.emplace_back(m.term, m.deriv);
      candidates.insert(candidates.end(), st.proven.begin(), st.proven.end());
      std::unordered_set<Term, TermHash> tried;
      for (const auto& [w, wd] : candidates) {
        if (w == goal || !tried.insert(w).second) continue;
        auto chain = horco_chain(w, goal, cfg.trans_budget, depth - 1);
        if (chain) {
          std::vector<DerivPtr> premises{wd};
          premises.insert(premises.end(), chain->begin(), chain->end());
          return CmpOutcome::yes_with(Derivation::make(
              DRule::Red, Judgment::closure(st.fun, st.ls, goal), std::move(premises)));
        }
      }
    }

    return CmpOutcome::no();
  }

  // -------------------------------------------------------------------------
  // whorco / horco

  CmpOutcome whorco(const Term& t, const Term& u, int budget) {
    auto [head, ls] = spine(t);
    if (!head.is(TermKind::Symbol) || !sig.declared(head.name())) return CmpOutcome::no();
    if (!free_vars_subset(u, t)) return CmpOutcome::no();
    if (!(type_in_env(t) == type_in_env(u))) return CmpOutcome::no();
    if (budget <= 0) {
      limited = true;
      return CmpOutcome::limited();
    }
    auto key = std::make_pair(t, u);
    if (auto it = whorco_memo.find(key); it != whorco_memo.end()) return it->second;
    if (!whorco_visiting.insert(key).second) return CmpOutcome::no();
    bool saved = limited;
    limited = false;
    auto st = cc_state(head.name(), ls);
    CmpOutcome r = cc(*st, u, budget);
    bool this_limited = limited;
    limited = saved || this_limited;
    whorco_visiting.erase(key);
    CmpOutcome result = r;
    if (r.yes()) {
      result = CmpOutcome::yes_with(
          Derivation::make(DRule::RuleRoot, Judgment::order(RelTag::Whorco, t, u), {r.deriv}));
    } else if (this_limited) {
      result = CmpOutcome::limited();
    }
    if (result.yes() || (result.tri == Tri::No && !this_limited)) whorco_memo[key] = result;
    return result;
  }

  // Finds a single divergence position where whorco applies and contexts
  // agree elsewhere.
  bool find_divergence(const Term& t, const Term& u, Position& pos, int lam_depth, int budget,
                       DerivPtr* out) {
    CmpOutcome r = whorco(t, u, budget);
    if (r.yes()) {
      *out = r.deriv;
      return true;
    }
    if (t.is(TermKind::App) && u.is(TermKind::App)) {
      if (t.arg() == u.arg()) {
        pos.push_back(1);
        if (find_divergence(t.fun(), u.fun(), pos, lam_depth, budget, out)) return true;
        pos.pop_back();
      }
      if (t.fun() == u.fun()) {
        pos.push_back(2);
        if (find_divergence(t.arg(), u.arg(), pos, lam_depth, budget, out)) return true;
        pos.pop_back();
      }
      return false;
    }
    if (t.is(TermKind::Lam) && u.is(TermKind::Lam) && t.annot() == u.annot()) {
      std::string name = "^c" + std::to_string(lam_depth) + "_" + t.annot().show();
      bool had = env.count(name) > 0;
      Type saved_ty;
      if (had) saved_ty = env.at(name);
      env[name] = t.annot();
      Term z = Term::free_var(name);
      pos.push_back(1);
      bool ok = find_divergence(open_with(t.body(), z), open_with(u.body(), z), pos, lam_depth + 1,
                                budget, out);
      if (!ok) pos.pop_back();
      if (had)
        env[name] = saved_ty;
      else
        env.erase(name);
      return ok;
    }
    return false;
  }

  CmpOutcome horco(const Term& t, const Term& u, int budget) {
    Position pos;
    DerivPtr inner;
    bool saved = limited;
    limited = false;
    bool found = find_divergence(t, u, pos, 0, budget, &inner);
    bool this_limited = limited;
    limited = saved || this_limited;
    if (found) {
      return CmpOutcome::yes_with(
          Derivation::make(DRule::Cont, Judgment::order(RelTag::Horco, t, u), {inner}, pos));
    }
    return this_limited ? CmpOutcome::limited() : CmpOutcome::no();
  }

  // Chains horco steps through hybrids of t and u: at a divergence position,
  // replace in t the subterm by u's.
  std::optional<std::vector<DerivPtr>> horco_chain(const Term& t, const Term& u, int steps,
                                                   int budget) {
    CmpOutcome direct = horco(t, u, budget);
    if (direct.yes()) return std::vector<DerivPtr>{direct.deriv};
    if (steps <= 1) return std::nullopt;
    std::unordered_set<Term, TermHash> tried;
    for (const Position& p : positions_of(t)) {
      if (p.empty() || !valid_position(u, p)) continue;
      Term tp = subterm_at(t, p);
      Term up = subterm_at(u, p);
      if (tp == up) continue;
      Term hybrid = replace_at(t, p, up);
      if (hybrid == t || hybrid == u || !tried.insert(hybrid).second) continue;
      CmpOutcome first = horco(t, hybrid, budget);
      if (!first.yes()) continue;
      auto rest = horco_chain(hybrid, u, steps - 1, budget);
      if (rest) {
        rest->insert(rest->begin(), first.deriv);
        return rest;
      }
    }
    return std::nullopt;
  }
};

// ---------------------------------------------------------------------------
// Public surface

OrientEngine::OrientEngine(RewriteSystem sys) : sys_(std::move(sys)), sig_(sys_.sig) {}

CmpOutcome OrientEngine::cc_member(const std::string& f, const std::vector<Term>& ls,
                                   const Term& goal, const TypingEnv& env, int budget) const {
  Query q(*this, env);
  auto st = q.cc_state(f, ls);
  return q.cc(*st, goal, budget < 0 ? sys_.config.depth_budget : budget);
}

CmpOutcome OrientEngine::whorco_greater(const Term& t, const Term& u, const TypingEnv& env,
                                        int budget) const {
  Query q(*this, env);
  return q.whorco(t, u, budget < 0 ? sys_.config.depth_budget : budget);
}

CmpOutcome OrientEngine::horco_greater(const Term& t, const Term& u, const TypingEnv& env,
                                       int budget) const {
  Query q(*this, env);
  return q.horco(t, u, budget < 0 ? sys_.config.depth_budget : budget);
}

CmpOutcome OrientEngine::horco_trans_greater(const Term& t, const Term& u, int steps,
                                             const TypingEnv& env, int budget) const {
  Query q(*this, env);
  auto chain = q.horco_chain(t, u, steps, budget < 0 ? sys_.config.depth_budget : budget);
  if (chain) {
    if (chain->size() == 1) return CmpOutcome::yes_with(chain->front());
    return CmpOutcome::yes_with(Derivation::make(
        DRule::Trans, Judgment::order(RelTag::Horco, t, u), std::move(*chain)));
  }
  return q.limited ? CmpOutcome::limited() : CmpOutcome::no();
}

Verdict OrientEngine::check_rule(const RewriteRule& rule) const {
  auto start = std::chrono::steady_clock::now();
  auto [head, ls] = spine(rule.lhs);
  if (!head.is(TermKind::Symbol))
    fail(ErrorCode::MalformedRule, "lhs not symbol-headed: " + rule.show());
  if (!sig_.declared(head.name()))
    fail(ErrorCode::MalformedRule, "lhs head undeclared: " + rule.show());
  if (!free_vars_subset(rule.rhs, rule.lhs))
    fail(ErrorCode::MalformedRule, "FV(rhs) not within FV(lhs): " + rule.show());
  Type tl, tr;
  try {
    tl = type_of(rule.lhs, rule.env, sig_);
    tr = type_of(rule.rhs, rule.env, sig_);
  } catch (const Error& e) {
    fail(ErrorCode::MalformedRule, std::string("ill-typed rule: ") + e.what());
  }
  if (!(tl == tr))
    fail(ErrorCode::MalformedRule,
         "type mismatch: " + tl.show() + " vs " + tr.show() + " in " + rule.show());

  Query q(*this, rule.env);
  CmpOutcome r = q.whorco(rule.lhs, rule.rhs, sys_.config.depth_budget);
  Verdict v;
  v.status = r.tri;
  v.certificate = r.deriv;
  v.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return v;
}

namespace {
// Canonical form of a rule pair under variable renaming: free variables
// renamed by first occurrence across lhs then rhs.
std::pair<Term, Term> canonical_rule(const Term& lhs, const Term& rhs) {
  std::map<std::string, Term> renaming;
  int next = 0;
  std::function<void(const Term&)> scan = [&](const Term& t) {
    switch (t.kind()) {
      case TermKind::FreeVar:
        if (!renaming.count(t.name()))
          renaming.emplace(t.name(), Term::free_var("!" + std::to_string(next++)));
        break;
      case TermKind::App:
        scan(t.fun());
        scan(t.arg());
        break;
      case TermKind::Lam:
        scan(t.body());
        break;
      default:
        break;
    }
  };
  scan(lhs);
  scan(rhs);
  Term l = lhs, r = rhs;
  for (const auto& [from, to] : renaming) {
    l = substitute(l, from, to);
    r = substitute(r, from, to);
  }
  return {l, r};
}
}  // namespace

SystemReport OrientEngine::check_system() const {
  SystemReport rep;
  rep.sig_violations = sig_.violations();

  // symmetric theory: reversal closure, symbol-headed sides, FV equality
  std::vector<std::pair<Term, Term>> canon;
  for (const auto& e : sys_.theory) canon.push_back(canonical_rule(e.lhs, e.rhs));
  for (std::size_t i = 0; i < sys_.theory.size(); ++i) {
    const auto& e = sys_.theory[i];
    auto [lh, largs] = spine(e.lhs);
    auto [rh, rargs] = spine(e.rhs);
    if (!lh.is(TermKind::Symbol)) {
      rep.theory_issues.push_back(
          {TheoryIssue::Kind::Malformed, e.show(), "theory lhs not symbol-headed"});
      continue;
    }
    if (!rh.is(TermKind::Symbol)) {
      rep.theory_issues.push_back(
          {TheoryIssue::Kind::Collapsing, e.show(), "theory rhs not symbol-headed (collapsing)"});
      continue;
    }
    if (free_vars(e.lhs) != free_vars(e.rhs)) {
      rep.theory_issues.push_back(
          {TheoryIssue::Kind::Erasing, e.show(), "FV(lhs) differs from FV(rhs) (erasing)"});
      continue;
    }
    auto reversed = canonical_rule(e.rhs, e.lhs);
    bool found = std::any_of(canon.begin(), canon.end(), [&](const auto& c) {
      return c.first == reversed.first && c.second == reversed.second;
    });
    if (!found) {
      rep.theory_issues.push_back({TheoryIssue::Kind::NonSymmetric, e.show(),
                                   "reversed rule missing from the theory"});
      continue;
    }
    // every rhs argument in the closure of the lhs arguments
    for (const Term& ri : rargs) {
      CmpOutcome r = cc_member(lh.name(), largs, ri, e.env, sys_.config.depth_budget);
      if (!r.yes()) {
        rep.theory_issues.push_back({TheoryIssue::Kind::NotInClosure, e.show(),
                                     ri.show() + " not in CC^" + lh.name() + " of lhs arguments"});
      }
    }
  }

  bool any_no = false, any_dl = false;
  for (const auto& rule : sys_.rules) {
    try {
      Verdict v = check_rule(rule);
      if (v.status == Tri::No) any_no = true;
      if (v.status == Tri::DepthLimited) any_dl = true;
      rep.rule_verdicts.push_back(std::move(v));
    } catch (const Error& e) {
      rep.theory_issues.push_back({TheoryIssue::Kind::Malformed, rule.show(), e.what()});
      Verdict v;
      v.status = Tri::No;
      v.note = e.what();
      rep.rule_verdicts.push_back(std::move(v));
      any_no = true;
    }
  }

  if (!rep.clean() || any_no)
    rep.overall = Tri::No;
  else if (any_dl)
    rep.overall = Tri::DepthLimited;
  else
    rep.overall = Tri::Yes;
  return rep;
}

}  // namespace horco
