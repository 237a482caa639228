#include "horco/rel_ext.hpp"

#include <algorithm>

namespace horco {

CmpOutcome lex_ext(const Cmp& cmp, RelTag elem_rel, const std::vector<Term>& as,
                   const std::vector<Term>& bs, LexDir dir) {
  std::size_t n = std::min(as.size(), bs.size());
  std::vector<DerivPtr> premises;
  StatusKind st = dir == LexDir::LR ? StatusKind::LexLR : StatusKind::LexRL;
  for (std::size_t k = 0; k < n; ++k) {
    const Term& a = dir == LexDir::LR ? as[k] : as[as.size() - 1 - k];
    const Term& b = dir == LexDir::LR ? bs[k] : bs[bs.size() - 1 - k];
    if (a == b) {
      premises.push_back(Derivation::make(DRule::Alpha, Judgment::alpha(a, b)));
      continue;
    }
    CmpOutcome r = cmp(a, b);
    if (r.tri != Tri::Yes) return r.tri == Tri::DepthLimited ? CmpOutcome::limited() : CmpOutcome::no();
    premises.push_back(r.deriv);
    return CmpOutcome::yes_with(
        Derivation::make(DRule::Lex, Judgment::ext(st, elem_rel, as, bs), std::move(premises)));
  }
  // one sequence is a prefix of the other in scan order
  return CmpOutcome::no();
}

namespace {
// Backtracks over assignments of bs elements: each b is either cancelled
// against an unused α-equal a, or must be dominated by some uncancelled a.
struct MulSearch {
  const Cmp& cmp;
  const std::vector<Term>& as;
  const std::vector<Term>& bs;
  std::vector<bool> a_used;
  std::vector<int> b_choice;  // index into as when cancelled, -1 when dominated
  bool saw_limited = false;

  explicit MulSearch(const Cmp& c, const std::vector<Term>& a, const std::vector<Term>& b)
      : cmp(c), as(a), bs(b), a_used(a.size(), false), b_choice(b.size(), -1) {}

  bool finish(std::vector<DerivPtr>& premises) {
    std::vector<std::size_t> x_set;
    for (std::size_t i = 0; i < as.size(); ++i)
      if (!a_used[i]) x_set.push_back(i);
    if (x_set.empty()) return false;  // X must be nonempty
    std::vector<DerivPtr> prem;
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (b_choice[j] >= 0) {
        prem.push_back(Derivation::make(DRule::Alpha, Judgment::alpha(as[b_choice[j]], bs[j])));
        continue;
      }
      bool dominated = false;
      for (std::size_t i : x_set) {
        CmpOutcome r = cmp(as[i], bs[j]);
        if (r.tri == Tri::DepthLimited) saw_limited = true;
        if (r.tri == Tri::Yes) {
          prem.push_back(r.deriv);
          dominated = true;
          break;
        }
      }
      if (!dominated) return false;
    }
    premises = std::move(prem);
    return true;
  }

  bool go(std::size_t j, std::vector<DerivPtr>& premises) {
    if (j == bs.size()) return finish(premises);
    // leave bs[j] to be dominated
    b_choice[j] = -1;
    if (go(j + 1, premises)) return true;
    // or cancel it against an α-equal as element
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (a_used[i] || !(as[i] == bs[j])) continue;
      a_used[i] = true;
      b_choice[j] = static_cast<int>(i);
      if (go(j + 1, premises)) return true;
      a_used[i] = false;
      b_choice[j] = -1;
    }
    return false;
  }
};
}  // namespace

CmpOutcome mul_ext(const Cmp& cmp, RelTag elem_rel, const std::vector<Term>& as,
                   const std::vector<Term>& bs) {
  MulSearch search(cmp, as, bs);
  std::vector<DerivPtr> premises;
  if (search.go(0, premises)) {
    return CmpOutcome::yes_with(Derivation::make(
        DRule::Mul, Judgment::ext(StatusKind::Mul, elem_rel, as, bs), std::move(premises)));
  }
  return search.saw_limited ? CmpOutcome::limited() : CmpOutcome::no();
}

CmpOutcome status_compare(const Cmp& cmp, RelTag elem_rel, const Signature& sig, const std::string& f,
                          const std::vector<Term>& as, const std::string& g,
                          const std::vector<Term>& bs) {
  PrecRel p = sig.prec_compare(f, g);
  if (p == PrecRel::Greater)
    return CmpOutcome::yes_with(Derivation::make(DRule::PrecEdge, Judgment::prec(f, g, false)));
  if (p != PrecRel::Equivalent) return CmpOutcome::no();
  switch (sig.status_of(f)) {
    case StatusKind::LexLR: return lex_ext(cmp, elem_rel, as, bs, LexDir::LR);
    case StatusKind::LexRL: return lex_ext(cmp, elem_rel, as, bs, LexDir::RL);
    case StatusKind::Mul: return mul_ext(cmp, elem_rel, as, bs);
  }
  return CmpOutcome::no();
}

}  // namespace horco
