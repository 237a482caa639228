#pragma once

// Shared fixtures for the test suites: small signatures and the brute-force
// splitting oracle for the multiset extension. The oracle enumerates every
// nonempty X ⊆ as and checks bs = (as − X) ∪ Y with all of Y dominated; it
// must stay independent of rel_ext's backtracking search.

#include <functional>
#include <vector>

#include "horco/engine.hpp"
#include "horco/parser.hpp"
#include "horco/signature.hpp"
#include "horco/term.hpp"
#include "horco/typing.hpp"

namespace testsupport {

using namespace horco;

inline Type N() { return Type::base("N"); }
inline Type T() { return Type::base("T"); }

/// 0, s, plus, times over N with times > plus > s > 0, lex statuses.
inline SignatureConfig arith_config() {
  SignatureConfig cfg;
  cfg.declare("0", N());
  cfg.declare("s", Type::arrow(N(), N()));
  cfg.declare("plus", Type::arrow({N(), N()}, N()));
  cfg.declare("times", Type::arrow({N(), N()}, N()));
  cfg.prec_greater("times", "plus");
  cfg.prec_greater("plus", "s");
  cfg.prec_greater("s", "0");
  cfg.status["plus"] = StatusKind::LexLR;
  cfg.status["times"] = StatusKind::LexLR;
  return cfg;
}

inline const char* goedel_text() {
  return "sig\n"
         " 0 : N\n"
         " s : N -> N\n"
         " rec : N -> T -> (N -> T -> T) -> T\n"
         "prec\n"
         " rec > s, 0\n"
         "status\n"
         " rec lex\n"
         "rules\n"
         " rec 0 u v -> u\n"
         " rec (s x) u v -> v x (rec x u v)\n";
}

inline const char* process_text() {
  return "sig\n"
         " seq : P -> P -> P\n"
         " choice : (D -> P) -> P\n"
         "prec\n"
         " seq > choice\n"
         "rules\n"
         " seq (choice p) x -> choice \\y. seq (p y) x\n";
}

inline const char* mendler_text() {
  return "sig\n"
         " c : (B -> N) -> B\n"
         " f : B -> B -> N\n"
         "rules\n"
         " f (c x) -> x\n";
}

/// Brute-force Dershowitz-Manna check over a boolean comparator.
inline bool oracle_mul(const std::function<bool(const Term&, const Term&)>& gt,
                       const std::vector<Term>& as, const std::vector<Term>& bs) {
  std::size_t n = as.size();
  for (std::size_t mask = 1; mask < (1u << n); ++mask) {
    // rest = as − X must embed into bs by α-equality, one-for-one
    std::vector<bool> used(bs.size(), false);
    bool embeds = true;
    for (std::size_t i = 0; i < n && embeds; ++i) {
      if (mask & (1u << i)) continue;  // i ∈ X
      bool placed = false;
      for (std::size_t j = 0; j < bs.size(); ++j) {
        if (used[j] || !(bs[j] == as[i])) continue;
        used[j] = true;
        placed = true;
        break;
      }
      embeds = placed;
    }
    if (!embeds) continue;
    bool all_dominated = true;
    for (std::size_t j = 0; j < bs.size() && all_dominated; ++j) {
      if (used[j]) continue;  // part of as − X
      bool dominated = false;
      for (std::size_t i = 0; i < n && !dominated; ++i)
        if (mask & (1u << i)) dominated = gt(as[i], bs[j]);
      all_dominated = dominated;
    }
    if (all_dominated) return true;
  }
  return false;
}

/// Strict proper subterm, the standard comparator for extension tests.
inline bool subterm_gt(const Term& a, const Term& b) {
  switch (a.kind()) {
    case TermKind::App:
      return a.fun() == b || a.arg() == b || subterm_gt(a.fun(), b) || subterm_gt(a.arg(), b);
    case TermKind::Lam:
      return a.body() == b || subterm_gt(a.body(), b);
    default:
      return false;
  }
}

inline Cmp subterm_cmp() {
  return [](const Term& a, const Term& b) -> CmpOutcome {
    if (subterm_gt(a, b))
      return CmpOutcome::yes_with(
          Derivation::make(DRule::Subterm, Judgment::order(RelTag::Subterm, a, b)));
    return CmpOutcome::no();
  };
}

}  // namespace testsupport
