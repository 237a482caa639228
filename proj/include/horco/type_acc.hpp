#pragma once

#include <set>
#include <string>
#include <vector>

#include "horco/derivation.hpp"
#include "horco/signature.hpp"
#include "horco/term.hpp"
#include "horco/type.hpp"

namespace horco {

enum class AccMode { BaseOnly, Positive };

const char* acc_mode_name(AccMode m);

/// Positions of every occurrence of the base type `base` in `type`.
std::vector<Position> pos_of_base(const std::string& base, const Type& type);

enum class Sign { Plus, Minus };

/// Positive/negative positions of a type: pos^+(B)={ε}, pos^-(B)=∅,
/// pos^δ(T→U) = 1·pos^(-δ)(T) ∪ 2·pos^δ(U).
std::vector<Position> pos_signed(const Type& type, Sign sign);

/// Accessible argument indices (1-based) of symbol f with declared type
/// T1→…→Tn→B. BaseOnly: Ti a base type. Positive: every occurrence of B in
/// Ti positive.
std::set<int> accessible_args(const Signature& sig, const std::string& f, AccMode mode);

/// The accessibility ordering a >^l b, goal-directed with the (>base),
/// (>lam), (>red) and (>trans) rules. `counter` feeds fresh-variable names;
/// DepthLimited on budget exhaustion.
CmpOutcome acc_greater(const Signature& sig, AccMode mode, const Term& anchor, const Term& a,
                       const Term& b, int budget, int* counter = nullptr);

/// Bounded breadth-first search for from →β* to; the returned vector is the
/// step sequence (excluding `from`, ending at `to`), empty when unreachable.
bool beta_reaches(const Term& from, const Term& to, int max_nodes, std::vector<Term>* path);

}  // namespace horco
