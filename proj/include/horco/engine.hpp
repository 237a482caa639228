#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horco/derivation.hpp"
#include "horco/orderings.hpp"
#include "horco/system.hpp"

namespace horco {

/// Per-rule outcome. Oriented (Tri::Yes) carries a replayable certificate.
struct Verdict {
  Tri status = Tri::No;
  DerivPtr certificate;
  std::string note;
  double millis = 0.0;
};

struct TheoryIssue {
  enum class Kind { NonSymmetric, Collapsing, Erasing, NotInClosure, Malformed };
  Kind kind;
  std::string rule_text;
  std::string message;
};

const char* theory_issue_name(TheoryIssue::Kind k);

struct SystemReport {
  std::vector<Violation> sig_violations;
  std::vector<TheoryIssue> theory_issues;
  std::vector<Verdict> rule_verdicts;  // aligned with the system's rules
  Tri overall = Tri::Yes;

  bool clean() const { return sig_violations.empty() && theory_issues.empty(); }
};

/// Computability-closure membership, whorco/horco and rule checking over one
/// rewrite system. Immutable after construction; every public query owns its
/// own search state, so concurrent queries are safe.
class OrientEngine {
 public:
  explicit OrientEngine(RewriteSystem sys);

  const RewriteSystem& system() const { return sys_; }
  const Signature& signature() const { return sig_; }
  const ClosureConfig& config() const { return sys_.config; }

  /// goal ∈ CC^f(l̄), goal-directed with the configured rule set.
  CmpOutcome cc_member(const std::string& f, const std::vector<Term>& ls, const Term& goal,
                       const TypingEnv& env, int budget = -1) const;

  /// t >_whorco u: t = f l̄, FV(u) ⊆ FV(t), τ(t)=τ(u), u ∈ CC^f(l̄).
  CmpOutcome whorco_greater(const Term& t, const Term& u, const TypingEnv& env, int budget = -1) const;

  /// Closure by context of whorco: one rewrite at a single position.
  CmpOutcome horco_greater(const Term& t, const Term& u, const TypingEnv& env, int budget = -1) const;

  /// Bounded chaining of horco steps through hybrid intermediates.
  CmpOutcome horco_trans_greater(const Term& t, const Term& u, int steps, const TypingEnv& env,
                                 int budget = -1) const;

  /// Well-formedness (MalformedRule on violation) then whorco on lhs/rhs.
  Verdict check_rule(const RewriteRule& rule) const;

  /// Signature validation, symmetric-theory checks, then every rule.
  SystemReport check_system() const;

  /// Replays a certificate: every node's side conditions re-checked against
  /// this system; no search. `env` types the rule variables for the type
  /// conditions of (rule) nodes; pass nullptr to skip those.
  bool validate_certificate(const DerivPtr& d, const TypingEnv* env, std::string* why = nullptr) const;

 private:
  struct Query;
  friend struct Query;

  RewriteSystem sys_;
  Signature sig_;
};

}  // namespace horco
