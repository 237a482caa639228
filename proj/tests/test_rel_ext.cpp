#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "horco/enumerate.hpp"
#include "horco/rel_ext.hpp"
#include "support.hpp"

using namespace horco;
using namespace testsupport;

namespace {
Term sx() { return Term::app(Term::symbol("s"), Term::free_var("x")); }
Term x() { return Term::free_var("x"); }
Term u() { return Term::free_var("u"); }
Term v() { return Term::free_var("v"); }
}  // namespace

TEST_CASE("lexicographic extension") {
  Cmp cmp = subterm_cmp();
  CHECK(lex_ext(cmp, RelTag::Subterm, {sx(), u()}, {x(), u()}, LexDir::LR).tri == Tri::Yes);
  CHECK(lex_ext(cmp, RelTag::Subterm, {u(), v()}, {u(), v()}, LexDir::LR).tri == Tri::No);

  // DepthLimited propagates from the pivot comparison
  Cmp dl = [](const Term& a, const Term& b) -> CmpOutcome {
    if (a == Term::free_var("b") && b == Term::free_var("c")) return CmpOutcome::limited();
    return CmpOutcome::no();
  };
  CHECK(lex_ext(dl, RelTag::Subterm, {Term::free_var("a"), Term::free_var("b")},
                {Term::free_var("a"), Term::free_var("c")}, LexDir::LR)
            .tri == Tri::DepthLimited);

  // prefix exhaustion is conservative
  CHECK(lex_ext(cmp, RelTag::Subterm, {u(), v()}, {u()}, LexDir::LR).tri == Tri::No);
  CHECK(lex_ext(cmp, RelTag::Subterm, {u()}, {u(), v()}, LexDir::LR).tri == Tri::No);

  // right-to-left scans from the end
  CHECK(lex_ext(cmp, RelTag::Subterm, {u(), sx()}, {u(), x()}, LexDir::RL).tri == Tri::Yes);
  Term su = Term::app(Term::symbol("s"), u());
  CHECK(lex_ext(cmp, RelTag::Subterm, {sx(), u()}, {x(), su}, LexDir::LR).tri == Tri::Yes);
  CHECK(lex_ext(cmp, RelTag::Subterm, {sx(), u()}, {x(), su}, LexDir::RL).tri == Tri::No);
}

TEST_CASE("multiset extension") {
  Cmp cmp = subterm_cmp();
  CHECK(mul_ext(cmp, RelTag::Subterm, {sx()}, {x(), x()}).tri == Tri::Yes);
  CHECK(oracle_mul(subterm_gt, {sx()}, {x(), x()}));

  std::vector<Term> m{sx(), u()};
  CHECK(mul_ext(cmp, RelTag::Subterm, m, m).tri == Tri::No);

  CHECK(mul_ext(cmp, RelTag::Subterm, {Term::free_var("a"), Term::free_var("b")},
                {Term::free_var("a")})
            .tri == Tri::Yes);

  // empty lhs can never dominate
  CHECK(mul_ext(cmp, RelTag::Subterm, {}, {}).tri == Tri::No);
  CHECK(mul_ext(cmp, RelTag::Subterm, {u()}, {}).tri == Tri::Yes);
}

TEST_CASE("multiset extension agrees with the brute-force splitting oracle") {
  Signature sig{arith_config()};
  TypingEnv env{{"x", N()}};
  auto pool = enumerate_terms(sig, env, N(), 3);
  REQUIRE(pool.size() >= 6);
  pool.resize(6);

  Cmp cmp = subterm_cmp();
  // all multisets of size <= 4 over the pool, as index tuples
  std::vector<std::vector<int>> multisets{{}};
  for (int size = 1; size <= 4; ++size) {
    std::vector<std::vector<int>> next;
    for (const auto& m : multisets)
      if (static_cast<int>(m.size()) == size - 1)
        for (int i = m.empty() ? 0 : m.back(); i < static_cast<int>(pool.size()); ++i) {
          auto ext = m;
          ext.push_back(i);
          next.push_back(ext);
        }
    multisets.insert(multisets.end(), next.begin(), next.end());
  }
  auto realize = [&](const std::vector<int>& idx) {
    std::vector<Term> out;
    for (int i : idx) out.push_back(pool[i]);
    return out;
  };
  int disagreements = 0;
  for (const auto& ma : multisets)
    for (const auto& mb : multisets) {
      auto as = realize(ma), bs = realize(mb);
      bool impl = mul_ext(cmp, RelTag::Subterm, as, bs).tri == Tri::Yes;
      bool oracle = oracle_mul(subterm_gt, as, bs);
      if (impl != oracle) ++disagreements;
    }
  CHECK(disagreements == 0);
}

TEST_CASE("extensions are irreflexive when the comparator is") {
  Signature sig{arith_config()};
  TypingEnv env{{"x", N()}};
  Cmp cmp = subterm_cmp();
  for (const Term& a : enumerate_terms(sig, env, N(), 4)) {
    CHECK(lex_ext(cmp, RelTag::Subterm, {a, a}, {a, a}, LexDir::LR).tri == Tri::No);
    CHECK(mul_ext(cmp, RelTag::Subterm, {a}, {a}).tri == Tri::No);
  }
}

TEST_CASE("status relation") {
  Signature sig{arith_config()};
  Cmp cmp = subterm_cmp();

  // a precedence edge decides regardless of the arguments
  CHECK(status_compare(cmp, RelTag::Subterm, sig, "plus", {x()}, "s", {sx(), sx()}).tri == Tri::Yes);

  SignatureConfig cfg = arith_config();
  cfg.status["plus"] = StatusKind::Mul;
  Signature msig(cfg);
  CHECK(status_compare(cmp, RelTag::Subterm, msig, "plus", {sx()}, "plus", {x()}).tri == Tri::Yes);

  CHECK(status_compare(cmp, RelTag::Subterm, sig, "plus", {x(), u()}, "plus", {x(), u()}).tri ==
        Tri::No);

  // incomparable symbols never compare
  SignatureConfig two;
  two.declare("a", Type::arrow(N(), N()));
  two.declare("b", Type::arrow(N(), N()));
  Signature tsig(two);
  CHECK(status_compare(cmp, RelTag::Subterm, tsig, "a", {sx()}, "b", {x()}).tri == Tri::No);
}
