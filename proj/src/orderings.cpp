#include "horco/orderings.hpp"

#include "horco/error.hpp"

namespace horco {

namespace {
void require_first_order(const Term& t, const TypingEnv& env, const Signature& sig) {
  if (!is_first_order(t, env, sig)) fail(ErrorCode::NotFirstOrder, t.show());
}
}  // namespace

// ---------------------------------------------------------------------------
// RPO

CmpOutcome RpoEngine::greater(const Term& t, const Term& u) {
  require_first_order(t, env_, sig_);
  require_first_order(u, env_, sig_);
  return inner(t, u);
}

CmpOutcome RpoEngine::inner(const Term& t, const Term& u) {
  auto key = std::make_pair(t, u);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  CmpOutcome result = CmpOutcome::no();
  auto [ft, ts] = spine(t);
  if (ft.is(TermKind::Symbol)) {
    // (1) some t_i ≥ u
    for (const Term& ti : ts) {
      if (ti == u) {
        result = CmpOutcome::yes_with(Derivation::make(
            DRule::Rpo1, Judgment::order(RelTag::Rpo, t, u),
            {Derivation::make(DRule::Alpha, Judgment::alpha(ti, u))}));
        break;
      }
      CmpOutcome r = inner(ti, u);
      if (r.yes()) {
        result = CmpOutcome::yes_with(
            Derivation::make(DRule::Rpo1, Judgment::order(RelTag::Rpo, t, u), {r.deriv}));
        break;
      }
    }
    if (!result.yes()) {
      auto [gu, us] = spine(u);
      if (gu.is(TermKind::Symbol)) {
        const std::string& f = ft.name();
        const std::string& g = gu.name();
        PrecRel p = sig_.prec_compare(f, g);
        auto dominates_all = [&](std::vector<DerivPtr>& premises) {
          for (const Term& ui : us) {
            CmpOutcome r = inner(t, ui);
            if (!r.yes()) return false;
            premises.push_back(r.deriv);
          }
          return true;
        };
        if (p == PrecRel::Greater) {
          // (2)
          std::vector<DerivPtr> premises{Derivation::make(DRule::PrecEdge, Judgment::prec(f, g, false))};
          if (dominates_all(premises))
            result = CmpOutcome::yes_with(
                Derivation::make(DRule::Rpo2, Judgment::order(RelTag::Rpo, t, u), std::move(premises)));
        } else if (p == PrecRel::Equivalent) {
          // (3)
          Cmp cmp = [this](const Term& a, const Term& b) { return inner(a, b); };
          CmpOutcome ext = status_compare(cmp, RelTag::Rpo, sig_, f, ts, g, us);
          if (ext.yes()) {
            std::vector<DerivPtr> premises{Derivation::make(DRule::PrecEdge, Judgment::prec(f, g, true)),
                                           ext.deriv};
            if (dominates_all(premises))
              result = CmpOutcome::yes_with(
                  Derivation::make(DRule::Rpo3, Judgment::order(RelTag::Rpo, t, u), std::move(premises)));
          }
        }
      }
    }
  }
  memo_[key] = result;
  return result;
}

// ---------------------------------------------------------------------------
// First-order recursive computability ordering

CmpOutcome ForcoEngine::greater(const Term& t, const Term& u) {
  require_first_order(t, env_, sig_);
  require_first_order(u, env_, sig_);
  return inner(t, u);
}

CmpOutcome ForcoEngine::inner(const Term& t, const Term& u) {
  auto key = std::make_pair(t, u);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  CmpOutcome result = CmpOutcome::no();
  auto [ft, ts] = spine(t);
  if (ft.is(TermKind::Symbol)) {
    const std::string& f = ft.name();
    // (arg)
    for (const Term& ti : ts) {
      if (ti == u) {
        result = CmpOutcome::yes_with(Derivation::make(DRule::FoArg, Judgment::order(RelTag::Forco, t, u)));
        break;
      }
    }
    // (prec) / (call)
    if (!result.yes()) {
      auto [gu, us] = spine(u);
      if (gu.is(TermKind::Symbol)) {
        const std::string& g = gu.name();
        PrecRel p = sig_.prec_compare(f, g);
        auto dominates_all = [&](std::vector<DerivPtr>& premises) {
          for (const Term& ui : us) {
            CmpOutcome r = inner(t, ui);
            if (!r.yes()) return false;
            premises.push_back(r.deriv);
          }
          return true;
        };
        if (p == PrecRel::Greater) {
          std::vector<DerivPtr> premises{Derivation::make(DRule::PrecEdge, Judgment::prec(f, g, false))};
          if (dominates_all(premises))
            result = CmpOutcome::yes_with(
                Derivation::make(DRule::FoPrec, Judgment::order(RelTag::Forco, t, u), std::move(premises)));
        } else if (p == PrecRel::Equivalent) {
          Cmp cmp = [this](const Term& a, const Term& b) { return inner(a, b); };
          CmpOutcome ext = status_compare(cmp, RelTag::Forco, sig_, f, ts, g, us);
          if (ext.yes()) {
            std::vector<DerivPtr> premises{Derivation::make(DRule::PrecEdge, Judgment::prec(f, g, true)),
                                           ext.deriv};
            if (dominates_all(premises))
              result = CmpOutcome::yes_with(
                  Derivation::make(DRule::FoCall, Judgment::order(RelTag::Forco, t, u), std::move(premises)));
          }
        }
      }
    }
    // (red) through an argument: f t̄ > t_i and t_i > u
    if (!result.yes()) {
      for (const Term& ti : ts) {
        if (!spine(ti).first.is(TermKind::Symbol)) continue;
        CmpOutcome r = inner(ti, u);
        if (r.yes()) {
          DerivPtr arg_step = Derivation::make(DRule::FoArg, Judgment::order(RelTag::Forco, t, ti));
          result = CmpOutcome::yes_with(Derivation::make(
              DRule::FoRed, Judgment::order(RelTag::Forco, t, u), {arg_step, r.deriv}));
          break;
        }
      }
    }
  }
  memo_[key] = result;
  return result;
}

// ---------------------------------------------------------------------------
// HORPO

Type HorpoEngine::cached_type(const Term& t) {
  if (auto it = type_cache_.find(t); it != type_cache_.end()) return it->second;
  Type ty = type_of(t, env_, sig_);
  type_cache_.emplace(t, ty);
  return ty;
}

CmpOutcome HorpoEngine::greater(const Term& t, const Term& u) {
  Type tt = cached_type(t);
  Type tu = cached_type(u);
  if (!(tt == tu)) return CmpOutcome::no();
  return inner(t, u);
}

// a ≥ b: α-equality or strict horpo, as one premise.
CmpOutcome HorpoEngine::ge_premise(const Term& a, const Term& b) {
  if (a == b) return CmpOutcome::yes_with(Derivation::make(DRule::Alpha, Judgment::alpha(a, b)));
  return greater(a, b);
}

// P(f, t̄, u) = f t̄ > u or some t_j ≥ u.
bool HorpoEngine::p_premise(const Term& t, const std::vector<Term>& ts, const Term& u, DerivPtr* out) {
  for (const Term& tj : ts) {
    CmpOutcome r = ge_premise(tj, u);
    if (r.yes()) {
      *out = r.deriv;
      return true;
    }
  }
  CmpOutcome r = greater(t, u);
  if (r.yes()) {
    *out = r.deriv;
    return true;
  }
  return false;
}

CmpOutcome HorpoEngine::inner(const Term& t, const Term& u) {
  auto key = std::make_pair(t, u);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  memo_[key] = CmpOutcome::no();  // cut re-entrancy; overwritten below

  CmpOutcome result = CmpOutcome::no();
  Judgment concl = Judgment::order(RelTag::Horpo, t, u);
  auto [ft, ts] = spine(t);

  if (ft.is(TermKind::Symbol)) {
    // (1) some t_i ≥ u
    Type tu = cached_type(u);
    for (const Term& ti : ts) {
      if (!(cached_type(ti) == tu)) continue;
      CmpOutcome r = ge_premise(ti, u);
      if (r.yes()) {
        result = CmpOutcome::yes_with(Derivation::make(DRule::Horpo1, concl, {r.deriv}));
        break;
      }
    }

    auto [gu, us] = spine(u);
    if (!result.yes() && gu.is(TermKind::Symbol)) {
      const std::string& f = ft.name();
      const std::string& g = gu.name();
      PrecRel p = sig_.prec_compare(f, g);
      auto p_all = [&](std::vector<DerivPtr>& premises) {
        for (const Term& ui : us) {
          DerivPtr d;
          if (!p_premise(t, ts, ui, &d)) return false;
          premises.push_back(d);
        }
        return true;
      };
      if (p == PrecRel::Greater) {
        // (2)
        std::vector<DerivPtr> premises{Derivation::make(DRule::PrecEdge, Judgment::prec(f, g, false))};
        if (p_all(premises))
          result = CmpOutcome::yes_with(Derivation::make(DRule::Horpo2, concl, std::move(premises)));
      } else if (p == PrecRel::Equivalent) {
        Cmp cmp = [this](const Term& a, const Term& b) { return greater(a, b); };
        if (sig_.status_of(f) == StatusKind::Mul) {
          // (3)
          CmpOutcome ext = mul_ext(cmp, RelTag::Horpo, ts, us);
          if (ext.yes())
            result = CmpOutcome::yes_with(Derivation::make(
                DRule::Horpo3, concl,
                {Derivation::make(DRule::PrecEdge, Judgment::prec(f, g, true)), ext.deriv}));
        } else {
          // (4)
          LexDir dir = sig_.status_of(f) == StatusKind::LexRL ? LexDir::RL : LexDir::LR;
          CmpOutcome ext = lex_ext(cmp, RelTag::Horpo, ts, us, dir);
          if (ext.yes()) {
            std::vector<DerivPtr> premises{Derivation::make(DRule::PrecEdge, Judgment::prec(f, g, true)),
                                           ext.deriv};
            if (p_all(premises))
              result = CmpOutcome::yes_with(Derivation::make(DRule::Horpo4, concl, std::move(premises)));
          }
        }
      }
    }

    // (5) u is an application spine: P over every spine component
    if (!result.yes() && u.is(TermKind::App)) {
      std::vector<Term> comps{gu};
      comps.insert(comps.end(), us.begin(), us.end());
      std::vector<DerivPtr> premises;
      bool all = true;
      for (const Term& c : comps) {
        DerivPtr d;
        if (!p_premise(t, ts, c, &d)) {
          all = false;
          break;
        }
        premises.push_back(d);
      }
      if (all) result = CmpOutcome::yes_with(Derivation::make(DRule::Horpo5, concl, std::move(premises)));
    }
  }

  // (6) application pairs by multiset on the binary split
  if (!result.yes() && t.is(TermKind::App) && u.is(TermKind::App)) {
    std::vector<Term> as{t.fun(), t.arg()};
    std::vector<Term> bs{u.fun(), u.arg()};
    if (opts_.restricted6) {
      auto one_side = [&](const Term& ea, const Term& eb, const Term& sa, const Term& sb) -> CmpOutcome {
        if (!(ea == eb)) return CmpOutcome::no();
        CmpOutcome r = greater(sa, sb);
        if (!r.yes()) return CmpOutcome::no();
        std::vector<DerivPtr> prem{Derivation::make(DRule::Alpha, Judgment::alpha(ea, eb)), r.deriv};
        return CmpOutcome::yes_with(Derivation::make(
            DRule::Mul, Judgment::ext(StatusKind::Mul, RelTag::Horpo, as, bs), std::move(prem)));
      };
      CmpOutcome ext = one_side(t.fun(), u.fun(), t.arg(), u.arg());
      if (!ext.yes()) ext = one_side(t.arg(), u.arg(), t.fun(), u.fun());
      if (ext.yes()) result = CmpOutcome::yes_with(Derivation::make(DRule::Horpo6, concl, {ext.deriv}));
    } else {
      Cmp cmp = [this](const Term& a, const Term& b) { return greater(a, b); };
      CmpOutcome ext = mul_ext(cmp, RelTag::Horpo, as, bs);
      if (ext.yes()) result = CmpOutcome::yes_with(Derivation::make(DRule::Horpo6, concl, {ext.deriv}));
    }
  }

  // (7) identical binders
  if (!result.yes() && t.is(TermKind::Lam) && u.is(TermKind::Lam) && t.annot() == u.annot()) {
    std::string name = "^h" + std::to_string(open_depth_) + "_" + t.annot().show();
    Term z = Term::free_var(name);
    bool had = env_.count(name) > 0;
    Type saved = had ? env_[name] : Type();
    env_[name] = t.annot();
    ++open_depth_;
    CmpOutcome r = inner(open_with(t.body(), z), open_with(u.body(), z));
    --open_depth_;
    if (had)
      env_[name] = saved;
    else
      env_.erase(name);
    if (r.yes()) result = CmpOutcome::yes_with(Derivation::make(DRule::Horpo7, concl, {r.deriv}));
  }

  memo_[key] = result;
  return result;
}

CmpOutcome rpo_greater(const Signature& sig, const TypingEnv& env, const Term& t, const Term& u) {
  return RpoEngine(sig, env).greater(t, u);
}

CmpOutcome forco_greater(const Signature& sig, const TypingEnv& env, const Term& t, const Term& u) {
  return ForcoEngine(sig, env).greater(t, u);
}

CmpOutcome horpo_greater(const Signature& sig, const TypingEnv& env, const Term& t, const Term& u,
                         HorpoOptions opts) {
  return HorpoEngine(sig, env, opts).greater(t, u);
}

}  // namespace horco
