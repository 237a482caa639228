#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "horco/enumerate.hpp"
#include "horco/error.hpp"
#include "horco/parser.hpp"
#include "support.hpp"

using namespace horco;
using namespace testsupport;

namespace {

Signature choice_sig() {
  SignatureConfig cfg;
  cfg.declare("choice", Type::arrow(Type::arrow(Type::base("D"), Type::base("P")), Type::base("P")));
  cfg.declare("seq", Type::arrow({Type::base("P"), Type::base("P")}, Type::base("P")));
  return Signature(cfg);
}

}  // namespace

TEST_CASE("type_of on the basic forms") {
  Signature sig{arith_config()};
  TypingEnv env;

  Term id = Term::bind("x", N(), Term::free_var("x"));
  CHECK(type_of(id, env, sig) == Type::arrow(N(), N()));

  Signature csig = choice_sig();
  TypingEnv cenv{{"P", Type::arrow(Type::base("D"), Type::base("P"))}};
  Term cp = Term::app(Term::symbol("choice"), Term::free_var("P"));
  CHECK(type_of(cp, cenv, csig) == Type::base("P"));

  Term over = Term::app(Term::app(Term::symbol("s"), Term::symbol("0")), Term::symbol("0"));
  CHECK_THROWS_AS(type_of(over, env, sig), Error);
  try {
    type_of(over, env, sig);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonArrowApplied);
  }

  CHECK_THROWS_AS(type_of(Term::symbol("ghost"), env, sig), Error);
  CHECK_THROWS_AS(type_of(Term::free_var("z"), env, sig), Error);

  Term bad = Term::app(Term::symbol("plus"), Term::symbol("s"));
  try {
    type_of(bad, env, sig);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ApplicationTypeMismatch);
  }
}

TEST_CASE("alpha equivalence is structural with named free variables") {
  Term a = Term::bind("x", N(), Term::free_var("x"));
  Term b = Term::bind("y", N(), Term::free_var("y"));
  CHECK(a == b);

  Term c = Term::lam(N(), Term::free_var("z"));
  Term d = Term::lam(N(), Term::free_var("w"));
  CHECK(c != d);

  Term e = Term::app(Term::symbol("f"), Term::free_var("x"));
  CHECK(e == Term::app(Term::symbol("f"), Term::free_var("x")));
}

TEST_CASE("alpha equivalence is an equivalence relation on an enumerated space") {
  Signature sig{arith_config()};
  TypingEnv env{{"x", N()}};
  auto terms = enumerate_terms(sig, env, N(), 3);
  for (const Term& t : terms) CHECK(t == t);
  for (const Term& t : terms)
    for (const Term& u : terms) CHECK((t == u) == (u == t));
  for (const Term& t : terms)
    for (const Term& u : terms)
      for (const Term& v : terms)
        if (t == u && u == v) CHECK(t == v);
}

TEST_CASE("substitution replaces free variables without capture") {
  Term s0 = Term::app(Term::symbol("s"), Term::symbol("0"));
  CHECK(substitute(Term::free_var("x"), "x", s0) == s0);

  // (\y. x)[x := y] keeps y free: the binder cannot capture it
  Term t = Term::lam(N(), Term::free_var("x"));
  Term r = substitute(t, "x", Term::free_var("y"));
  CHECK(r == Term::lam(N(), Term::free_var("y")));
  CHECK(free_vars(r) == std::set<std::string>{"y"});

  Term redex = Term::app(Term::bind("x", N(), Term::free_var("x")), Term::free_var("z"));
  Term expect = Term::app(Term::bind("x", N(), Term::free_var("x")), Term::symbol("0"));
  CHECK(substitute(redex, "z", Term::symbol("0")) == expect);
}

TEST_CASE("substitute_checked enforces the typing precondition") {
  Signature sig{arith_config()};
  TypingEnv env{{"x", N()}};
  Term body = Term::app(Term::symbol("s"), Term::free_var("x"));
  CHECK(substitute_checked(body, "x", Term::symbol("0"), env, sig) ==
        Term::app(Term::symbol("s"), Term::symbol("0")));
  CHECK_THROWS_AS(substitute_checked(body, "x", Term::symbol("s"), env, sig), Error);
}

TEST_CASE("beta normalization, leftmost-outermost") {
  Term id = Term::bind("x", N(), Term::free_var("x"));
  Term a = Term::free_var("a");
  CHECK(beta_normalize(Term::app(id, a)) == a);

  // (\x. f x x)(c w) duplicates its argument
  SignatureConfig cfg;
  cfg.declare("f", Type::arrow({N(), N()}, N()));
  cfg.declare("c", Type::arrow(N(), N()));
  Signature sig(cfg);
  Term cw = Term::app(Term::symbol("c"), Term::free_var("w"));
  Term dup = Term::bind("x", N(),
                        Term::app(Term::app(Term::symbol("f"), Term::free_var("x")), Term::free_var("x")));
  CHECK(beta_normalize(Term::app(dup, cw)) == Term::app(Term::app(Term::symbol("f"), cw), cw));

  Term normal = Term::app(Term::symbol("c"), Term::free_var("w"));
  CHECK(beta_normalize(normal) == normal);

  Term redex = Term::app(id, a);
  CHECK_THROWS_AS(beta_normalize(redex, 0), Error);
}

TEST_CASE("subject reduction and typed substitution over an enumerated space") {
  SignatureConfig cfg;
  cfg.declare("0", N());
  cfg.declare("s", Type::arrow(N(), N()));
  cfg.declare("g", Type::arrow(Type::arrow(N(), N()), N()));
  Signature sig(cfg);
  TypingEnv env{{"x", N()}};
  int redexes = 0;
  for (const Term& t : enumerate_terms(sig, env, N(), 6)) {
    Type before = type_of(t, env, sig);
    if (!is_beta_normal(t)) ++redexes;
    CHECK(type_of(beta_normalize(t), env, sig) == before);
    Term sub = substitute(t, "x", Term::app(Term::symbol("s"), Term::symbol("0")));
    CHECK(type_of(sub, env, sig) == before);
  }
  CHECK(redexes > 0);  // the space genuinely exercises reduction
}

TEST_CASE("positions: subterm extraction, replacement, round trip") {
  Term f = Term::symbol("f");
  Term a = Term::free_var("a");
  Term b = Term::free_var("b");
  Term fab = Term::app(Term::app(f, a), b);

  CHECK(subterm_at(fab, {1, 2}) == a);
  CHECK(replace_at(Term::app(f, a), {2}, b) == Term::app(f, b));
  CHECK_THROWS_AS(subterm_at(Term::free_var("x"), {1}), Error);

  Signature sig{arith_config()};
  TypingEnv env{{"x", N()}};
  for (const Term& t : enumerate_terms(sig, env, N(), 4))
    for (const Position& p : positions_of(t)) CHECK(replace_at(t, p, subterm_at(t, p)) == t);
}

TEST_CASE("free variables") {
  Term lam = Term::bind("x", N(), Term::app(Term::free_var("x"), Term::free_var("y")));
  CHECK(free_vars(lam) == std::set<std::string>{"y"});
  CHECK(free_vars(Term::symbol("f")).empty());

  // body of the process rule's rhs: seq (p y) x
  Signature sig = choice_sig();
  TypingEnv env{{"p", Type::arrow(Type::base("D"), Type::base("P"))}};
  Term t = parse_term("seq (p y) x", sig, env);
  CHECK(free_vars(t) == std::set<std::string>{"p", "x", "y"});
}

TEST_CASE("miller pattern recognition") {
  SignatureConfig cfg;
  Type R = Type::base("R");
  cfg.declare("sin", Type::arrow(R, R));
  cfg.declare("d", Type::arrow(Type::arrow(R, R), Type::arrow(R, R)));
  cfg.declare("c", Type::arrow(R, R));
  cfg.declare("a", R);
  Signature sig(cfg);

  TypingEnv env;
  CHECK(is_miller_pattern(parse_term("d (\\x. sin (F x))", sig, env)));

  TypingEnv env2;
  CHECK_FALSE(is_miller_pattern(parse_term("d (\\x. F x x)", sig, env2)));

  TypingEnv env3{{"F", Type::arrow(R, R)}};
  CHECK_FALSE(is_miller_pattern(parse_term("F (c a)", sig, env3)));

  // non-beta-normal terms are not patterns
  Term redex = Term::app(Term::bind("x", R, Term::free_var("x")), Term::symbol("a"));
  CHECK_FALSE(is_miller_pattern(redex));

  // eta-expanded argument still counts as a bound variable
  TypingEnv env4;
  CHECK(is_miller_pattern(parse_term("d (\\x. sin (F x)) a", sig, env4)));
}

TEST_CASE("eta normalization strips expansions") {
  Term f = Term::symbol("s");
  Term expanded = Term::lam(N(), Term::app(f, Term::bound_var(0)));
  CHECK(eta_normalize(expanded) == f);

  // \x. g x x must stay: the binder occurs in the function part
  Term g = Term::free_var("g");
  Term keep = Term::lam(N(), Term::app(Term::app(g, Term::bound_var(0)), Term::bound_var(0)));
  CHECK(eta_normalize(keep) == keep);
}

TEST_CASE("algebraic recognizer") {
  Signature sig{arith_config()};
  CHECK(is_algebraic(Term::app(Term::symbol("s"), Term::free_var("x"))));
  CHECK_FALSE(is_algebraic(Term::bind("x", N(), Term::free_var("x"))));
  CHECK_FALSE(is_algebraic(Term::app(Term::free_var("F"), Term::symbol("0"))));
}
