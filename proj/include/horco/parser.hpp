#pragma once

#include <string>
#include <utility>

#include "horco/system.hpp"

namespace horco {

/// Parses the line-oriented system format: sections `sig`, `prec`, `status`,
/// `rules`, `theory`; `#` comments. Identifiers not declared in `sig` are
/// rule variables; their types are inferred by unification over both sides.
RewriteSystem parse_system(const std::string& text);

/// Prints a system back into the same format; parse ∘ print is the identity
/// up to whitespace.
std::string print_system(const RewriteSystem& sys);

/// Parses a single term against a signature, inferring the types of
/// undeclared identifiers; the inferred bindings are added to `env` (which
/// may pre-seed variable types).
Term parse_term(const std::string& text, const Signature& sig, TypingEnv& env);

/// Parses two terms with a shared variable scope (as the two sides of a rule
/// would be).
std::pair<Term, Term> parse_term_pair(const std::string& lhs, const std::string& rhs,
                                      const Signature& sig, TypingEnv& env);

}  // namespace horco
