#pragma once

#include <map>
#include <string>

#include "horco/signature.hpp"
#include "horco/term.hpp"
#include "horco/type.hpp"

namespace horco {

/// Free-variable typing environment; each variable has at most one binding.
using TypingEnv = std::map<std::string, Type>;

/// The unique simple type of `t` under `env` and `sig`. Throws
/// UndeclaredSymbol, UnboundVariable, ApplicationTypeMismatch,
/// NonArrowApplied, IllTyped (dangling bound variable).
Type type_of(const Term& t, const TypingEnv& env, const Signature& sig);

/// Substitution with the type-preservation precondition checked against
/// `env` (TypeMismatch when violated).
Term substitute_checked(const Term& t, const std::string& name, const Term& u, const TypingEnv& env,
                        const Signature& sig);

/// First-order term in the classic sense: algebraic, every spine fully
/// applied down to base type, variables base-typed.
bool is_first_order(const Term& t, const TypingEnv& env, const Signature& sig);

}  // namespace horco
