#pragma once

#include <functional>
#include <vector>

#include "horco/derivation.hpp"
#include "horco/signature.hpp"
#include "horco/term.hpp"

namespace horco {

/// Element comparator for the extensions. Must be deterministic for fixed
/// inputs; Yes carries a certificate.
using Cmp = std::function<CmpOutcome(const Term&, const Term&)>;

enum class LexDir { LR, RL };

/// Lexicographic extension with α-equality as the equal case. Unequal
/// lengths: position-wise until the first strict difference; exhausting one
/// sequence without a strict step is No.
CmpOutcome lex_ext(const Cmp& cmp, RelTag elem_rel, const std::vector<Term>& as,
                   const std::vector<Term>& bs, LexDir dir);

/// Dershowitz–Manna multiset extension: nonempty X ⊆ as and bs = (as − X) ∪ Y
/// with every y ∈ Y dominated by some x ∈ X. Backtracking search, α-equality
/// for removals; DepthLimited propagates from cmp.
CmpOutcome mul_ext(const Cmp& cmp, RelTag elem_rel, const std::vector<Term>& as,
                   const std::vector<Term>& bs);

/// Status relation: Yes when f >_F g; when f ≃_F g, the lex or mul extension
/// per stat_f; otherwise No.
CmpOutcome status_compare(const Cmp& cmp, RelTag elem_rel, const Signature& sig, const std::string& f,
                          const std::vector<Term>& as, const std::string& g, const std::vector<Term>& bs);

}  // namespace horco
