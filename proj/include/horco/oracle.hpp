#pragma once

#include "horco/signature.hpp"
#include "horco/typing.hpp"

namespace horco {

/// Textbook first-order recursive path ordering, written independently of
/// RpoEngine (direct recursion, no memoization, no certificates); exists to
/// cross-check it. Throws NotFirstOrder.
bool oracle_rpo(const Signature& sig, const TypingEnv& env, const Term& t, const Term& u);

}  // namespace horco
