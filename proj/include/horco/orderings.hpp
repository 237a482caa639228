#pragma once

#include <unordered_map>

#include "horco/derivation.hpp"
#include "horco/rel_ext.hpp"
#include "horco/signature.hpp"
#include "horco/typing.hpp"

namespace horco {

struct TermPairEqual {
  bool operator()(const std::pair<Term, Term>& a, const std::pair<Term, Term>& b) const {
    return a.first == b.first && a.second == b.second;
  }
};

/// First-order recursive path ordering. Total and terminating; memoized per
/// engine instance. Throws NotFirstOrder on non-first-order inputs.
class RpoEngine {
 public:
  RpoEngine(const Signature& sig, TypingEnv env) : sig_(sig), env_(std::move(env)) {}
  CmpOutcome greater(const Term& t, const Term& u);

 private:
  CmpOutcome inner(const Term& t, const Term& u);
  const Signature& sig_;
  TypingEnv env_;
  std::unordered_map<std::pair<Term, Term>, CmpOutcome, TermPairHash, TermPairEqual> memo_;
};

/// First-order recursive computability ordering, inductive presentation:
/// (arg), (prec), (call), and (red) with intermediates drawn from the
/// arguments. Throws NotFirstOrder on non-first-order inputs.
class ForcoEngine {
 public:
  ForcoEngine(const Signature& sig, TypingEnv env) : sig_(sig), env_(std::move(env)) {}
  CmpOutcome greater(const Term& t, const Term& u);

 private:
  CmpOutcome inner(const Term& t, const Term& u);
  const Signature& sig_;
  TypingEnv env_;
  std::unordered_map<std::pair<Term, Term>, CmpOutcome, TermPairHash, TermPairEqual> memo_;
};

struct HorpoOptions {
  /// Restrict rule (6) to one-side-strict/other-equal.
  bool restricted6 = false;
};

/// Monomorphic HORPO, rules (1)-(7). Relates well-typed terms of equal type;
/// type mismatch is No, ill-typed input throws IllTyped.
class HorpoEngine {
 public:
  HorpoEngine(const Signature& sig, TypingEnv env, HorpoOptions opts = {})
      : sig_(sig), env_(std::move(env)), opts_(opts) {}
  CmpOutcome greater(const Term& t, const Term& u);

 private:
  CmpOutcome inner(const Term& t, const Term& u);
  CmpOutcome ge_premise(const Term& a, const Term& b);                 // a ≥ b as a premise
  bool p_premise(const Term& t, const std::vector<Term>& ts, const Term& u, DerivPtr* out);
  Type cached_type(const Term& t);

  const Signature& sig_;
  TypingEnv env_;
  HorpoOptions opts_;
  int open_depth_ = 0;
  std::unordered_map<std::pair<Term, Term>, CmpOutcome, TermPairHash, TermPairEqual> memo_;
  std::unordered_map<Term, Type, TermHash> type_cache_;
};

/// One-shot conveniences.
CmpOutcome rpo_greater(const Signature& sig, const TypingEnv& env, const Term& t, const Term& u);
CmpOutcome forco_greater(const Signature& sig, const TypingEnv& env, const Term& t, const Term& u);
CmpOutcome horpo_greater(const Signature& sig, const TypingEnv& env, const Term& t, const Term& u,
                         HorpoOptions opts = {});

}  // namespace horco
