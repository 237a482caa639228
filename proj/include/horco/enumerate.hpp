#pragma once

#include <cstdint>
#include <vector>

#include "horco/signature.hpp"
#include "horco/term.hpp"
#include "horco/typing.hpp"

namespace horco {

/// All well-typed terms of `target` type up to `max_size` nodes, duplicate
/// free, in deterministic size-lexicographic order. Candidate types are the
/// subtype closure of the signature, environment and target; λ annotations
/// and application argument types are drawn from it. CapExceeded when
/// max_size exceeds `cap`.
std::vector<Term> enumerate_terms(const Signature& sig, const TypingEnv& env, const Type& target,
                                  int max_size, int cap = 12);

/// Independent recursive counter for the same space: counts without
/// constructing terms.
std::int64_t count_terms(const Signature& sig, const TypingEnv& env, const Type& target,
                         int max_size);

}  // namespace horco
