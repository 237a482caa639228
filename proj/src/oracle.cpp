#include "horco/oracle.hpp"

#include <algorithm>

#include "horco/error.hpp"

namespace horco {

namespace {

bool rpo_rec(const Signature& sig, const Term& t, const Term& u);

bool lex_rec(const Signature& sig, const std::vector<Term>& ts, const std::vector<Term>& us,
             bool left_to_right) {
  std::size_t n = std::min(ts.size(), us.size());
  for (std::size_t k = 0; k < n; ++k) {
    const Term& a = left_to_right ? ts[k] : ts[ts.size() - 1 - k];
    const Term& b = left_to_right ? us[k] : us[us.size() - 1 - k];
    if (a == b) continue;
    return rpo_rec(sig, a, b);
  }
  return false;
}

bool mul_rec(const Signature& sig, const std::vector<Term>& ts, const std::vector<Term>& us) {
  // all ways to cancel us elements against distinct equal ts elements
  std::size_t n = us.size();
  std::vector<int> choice(n, -1);
  std::vector<bool> used(ts.size(), false);
  std::function<bool(std::size_t)> go = [&](std::size_t j) -> bool {
    if (j == n) {
      std::vector<std::size_t> xs;
      for (std::size_t i = 0; i < ts.size(); ++i)
        if (!used[i]) xs.push_back(i);
      if (xs.empty()) return false;
      for (std::size_t jj = 0; jj < n; ++jj) {
        if (choice[jj] >= 0) continue;
        bool dominated = std::any_of(xs.begin(), xs.end(),
                                     [&](std::size_t i) { return rpo_rec(sig, ts[i], us[jj]); });
        if (!dominated) return false;
      }
      return true;
    }
    if (go(j + 1)) return true;  // leave us[j] dominated
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (used[i] || !(ts[i] == us[j])) continue;
      used[i] = true;
      choice[j] = static_cast<int>(i);
      if (go(j + 1)) return true;
      used[i] = false;
      choice[j] = -1;
    }
    return false;
  };
  return go(0);
}

bool rpo_rec(const Signature& sig, const Term& t, const Term& u) {
  auto [f, ts] = spine(t);
  if (!f.is(TermKind::Symbol)) return false;
  for (const Term& ti : ts)
    if (ti == u || rpo_rec(sig, ti, u)) return true;
  auto [g, us] = spine(u);
  if (!g.is(TermKind::Symbol)) return false;
  PrecRel p = sig.prec_compare(f.name(), g.name());
  auto dominates_all = [&] {
    return std::all_of(us.begin(), us.end(), [&](const Term& ui) { return rpo_rec(sig, t, ui); });
  };
  if (p == PrecRel::Greater) return dominates_all();
  if (p != PrecRel::Equivalent) return false;
  switch (sig.status_of(f.name())) {
    case StatusKind::LexLR:
      return lex_rec(sig, ts, us, true) && dominates_all();
    case StatusKind::LexRL:
      return lex_rec(sig, ts, us, false) && dominates_all();
    case StatusKind::Mul:
      return mul_rec(sig, ts, us);
  }
  return false;
}

}  // namespace

bool oracle_rpo(const Signature& sig, const TypingEnv& env, const Term& t, const Term& u) {
  if (!is_first_order(t, env, sig) || !is_first_order(u, env, sig))
    fail(ErrorCode::NotFirstOrder, t.show() + " vs " + u.show());
  return rpo_rec(sig, t, u);
}

}  // namespace horco
