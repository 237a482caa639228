#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "horco/engine.hpp"
#include "horco/enumerate.hpp"
#include "horco/error.hpp"
#include "horco/parser.hpp"
#include "support.hpp"

using namespace horco;
using namespace testsupport;

namespace {

RewriteSystem goedel_sys(CallOrder order = CallOrder::Accessibility,
                         AccMode mode = AccMode::BaseOnly) {
  RewriteSystem sys = parse_system(goedel_text());
  sys.config.call_order = order;
  sys.config.acc_mode = mode;
  return sys;
}

}  // namespace

TEST_CASE("closure membership: recursor right-hand side") {
  OrientEngine eng(goedel_sys());
  const RewriteRule& rule = eng.system().rules[1];
  auto [head, ls] = spine(rule.lhs);
  REQUIRE(head == Term::symbol("rec"));
  CHECK(eng.cc_member("rec", ls, rule.rhs, rule.env).tri == Tri::Yes);
  CHECK(eng.cc_member("rec", ls, ls[0], rule.env).tri == Tri::Yes);  // (arg)
}

TEST_CASE("closure membership: the process rule needs accessibility") {
  RewriteSystem sys = parse_system(process_text());
  sys.config.acc_mode = AccMode::Positive;
  sys.config.call_order = CallOrder::Accessibility;
  OrientEngine eng(sys);
  const RewriteRule& rule = eng.system().rules[0];
  auto [head, ls] = spine(rule.lhs);
  CHECK(eng.cc_member("seq", ls, rule.rhs, rule.env).tri == Tri::Yes);

  RewriteSystem sub = parse_system(process_text());
  sub.config.call_order = CallOrder::Subterm;
  OrientEngine eng2(sub);
  CHECK(eng2.cc_member("seq", ls, rule.rhs, rule.env).tri == Tri::No);
}

TEST_CASE("closure membership rejects the Mendler projection everywhere") {
  RewriteSystem sys = parse_system(mendler_text());
  for (AccMode mode : {AccMode::BaseOnly, AccMode::Positive})
    for (CallOrder order : {CallOrder::Subterm, CallOrder::Accessibility, CallOrder::RecursiveHorco})
      for (bool red : {false, true}) {
        RewriteSystem s = sys;
        s.config.acc_mode = mode;
        s.config.call_order = order;
        s.config.red_rule = red;
        OrientEngine eng(s);
        const RewriteRule& rule = eng.system().rules[0];
        auto [head, ls] = spine(rule.lhs);
        CHECK(eng.cc_member("f", ls, rule.rhs, rule.env).tri == Tri::No);
      }
}

TEST_CASE("whorco: side conditions") {
  OrientEngine eng(goedel_sys());
  const RewriteRule& rule = eng.system().rules[1];
  CHECK(eng.whorco_greater(rule.lhs, rule.rhs, rule.env).tri == Tri::Yes);

  // lhs must be symbol-headed
  CHECK(eng.whorco_greater(Term::free_var("x"), Term::symbol("0"), {{"x", N()}}).tri == Tri::No);

  // free variables of the rhs must occur in the lhs
  TypingEnv env{{"x", N()}, {"y", N()}};
  Term sx = Term::app(Term::symbol("s"), Term::free_var("x"));
  CHECK(eng.whorco_greater(sx, Term::free_var("y"), env).tri == Tri::No);

  // equal types required
  Term s_ = Term::symbol("s");
  CHECK(eng.whorco_greater(sx, s_, env).tri == Tri::No);

  // incomparable heads
  SignatureConfig two;
  two.declare("a", Type::arrow(N(), N()));
  two.declare("b", Type::arrow(N(), N()));
  two.declare("0", N());
  RewriteSystem tsys{two, {}, {}, {}};
  OrientEngine teng(tsys);
  TypingEnv tenv;
  Term a0 = Term::app(Term::symbol("a"), Term::symbol("0"));
  Term b0 = Term::app(Term::symbol("b"), Term::symbol("0"));
  CHECK(teng.whorco_greater(a0, b0, tenv).tri == Tri::No);
}

TEST_CASE("horco: closure by context") {
  RewriteSystem sys = goedel_sys();
  sys.sig.declare("h", Type::arrow(T(), T()));
  OrientEngine eng(sys);
  const RewriteRule& rule = eng.system().rules[1];
  Term ht = Term::app(Term::symbol("h"), rule.lhs);
  Term hu = Term::app(Term::symbol("h"), rule.rhs);
  CmpOutcome r = eng.horco_greater(ht, hu, rule.env);
  REQUIRE(r.tri == Tri::Yes);
  REQUIRE(r.deriv->pos.has_value());
  CHECK(*r.deriv->pos == Position{2});

  CHECK(eng.horco_greater(ht, ht, rule.env).tri == Tri::No);

  // under a binder
  Term lam_t = Term::lam(N(), ht);
  Term lam_u = Term::lam(N(), hu);
  CmpOutcome r2 = eng.horco_greater(lam_t, lam_u, rule.env);
  REQUIRE(r2.tri == Tri::Yes);
  CHECK(*r2.deriv->pos == Position{1, 2});
}

TEST_CASE("horco needs a single divergence with matching contexts") {
  OrientEngine eng(goedel_sys());
  Signature sig(eng.system().sig);
  TypingEnv env = eng.system().rules[1].env;
  env["w"] = T();
  // two unrelated divergences never compose, with or without chaining
  Term t = parse_term("rec (s x) u v", sig, env);
  Term u = parse_term("rec x w v", sig, env);
  CHECK(eng.horco_greater(t, u, env).tri == Tri::No);
  CHECK(eng.horco_trans_greater(t, u, 3, env).tri == Tri::No);
}

TEST_CASE("horco_trans: a genuine two-step chain through a hybrid") {
  SignatureConfig cfg;
  Type R = Type::base("R");
  cfg.declare("0", R);
  cfg.declare("s", Type::arrow(R, R));
  cfg.declare("h", Type::arrow({Type::arrow(R, R), R}, T()));
  RewriteSystem sys{cfg, {}, {}, {}};
  sys.config.call_order = CallOrder::Subterm;
  sys.config.depth_budget = 8;
  OrientEngine eng(sys);
  Signature sig(cfg);
  TypingEnv env{{"F", Type::arrow(R, R)}};

  Term lam_strict = Term::lam(R, Term::app(Term::symbol("s"),
                                           Term::app(Term::free_var("F"), Term::bound_var(0))));
  Term lam_weak = Term::lam(R, Term::app(Term::free_var("F"), Term::bound_var(0)));
  Term s0 = Term::app(Term::symbol("s"), Term::symbol("0"));
  Term t = Term::app(Term::app(Term::symbol("h"), lam_strict), s0);
  Term u = Term::app(Term::app(Term::symbol("h"), lam_weak), Term::symbol("0"));

  // horpo relates them through rule (6) with both components strict
  CHECK(horpo_greater(sig, env, t, u).tri == Tri::Yes);
  // a single context step does not: both argument positions diverge
  CHECK(eng.horco_greater(t, u, env).tri == Tri::No);
  CmpOutcome chain = eng.horco_trans_greater(t, u, 3, env);
  REQUIRE(chain.tri == Tri::Yes);
  CHECK(chain.deriv->rule == DRule::Trans);
  CHECK(chain.deriv->premises.size() == 2);
  std::string why;
  CHECK(eng.validate_certificate(chain.deriv, &env, &why));
}

TEST_CASE("check_rule: verdicts and malformed rules") {
  OrientEngine eng(goedel_sys());
  Verdict v0 = eng.check_rule(eng.system().rules[0]);
  CHECK(v0.status == Tri::Yes);
  REQUIRE(v0.certificate);
  CHECK(v0.certificate->rule == DRule::RuleRoot);

  RewriteRule bad;
  bad.lhs = Term::app(Term::symbol("s"), Term::free_var("x"));
  bad.rhs = Term::free_var("y");
  bad.env = {{"x", N()}, {"y", N()}};
  CHECK_THROWS_AS(eng.check_rule(bad), Error);
  try {
    eng.check_rule(bad);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedRule);
  }

  RewriteRule varhead;
  varhead.lhs = Term::free_var("x");
  varhead.rhs = Term::free_var("x");
  varhead.env = {{"x", N()}};
  CHECK_THROWS_AS(eng.check_rule(varhead), Error);
}

TEST_CASE("check_system: symmetric theories") {
  // commutativity is accepted
  RewriteSystem comm = parse_system(
      "sig\n 0 : N\n s : N -> N\n plus : N -> N -> N\n"
      "prec\n plus > s, 0\n"
      "rules\n plus 0 x -> x\n"
      "theory\n plus x y -> plus y x\n plus y x -> plus x y\n");
  OrientEngine eng(comm);
  SystemReport rep = eng.check_system();
  CHECK(rep.theory_issues.empty());
  CHECK(rep.overall == Tri::Yes);

  // a collapsing identity is rejected
  RewriteSystem bad = parse_system(
      "sig\n 0 : N\n plus : N -> N -> N\n"
      "rules\n plus 0 x -> x\n"
      "theory\n plus x 0 -> x\n");
  OrientEngine eng2(bad);
  SystemReport rep2 = eng2.check_system();
  REQUIRE_FALSE(rep2.theory_issues.empty());
  CHECK(rep2.theory_issues[0].kind == TheoryIssue::Kind::Collapsing);
  CHECK(rep2.overall == Tri::No);

  // an erasing identity is rejected too
  RewriteSystem erasing = parse_system(
      "sig\n 0 : N\n times : N -> N -> N\n"
      "rules\n times 0 x -> 0\n"
      "theory\n times x 0 -> times 0 0\n times 0 0 -> times x 0\n");
  OrientEngine eng3(erasing);
  SystemReport rep3 = eng3.check_system();
  bool erasing_found = false;
  for (const auto& issue : rep3.theory_issues)
    if (issue.kind == TheoryIssue::Kind::Erasing) erasing_found = true;
  CHECK(erasing_found);

  // a one-sided theory is not symmetric
  RewriteSystem asym = parse_system(
      "sig\n 0 : N\n plus : N -> N -> N\n g : N -> N\n"
      "rules\n plus 0 x -> x\n"
      "theory\n plus x y -> plus y (g x)\n");
  OrientEngine eng4(asym);
  SystemReport rep4 = eng4.check_system();
  bool nonsym = false;
  for (const auto& issue : rep4.theory_issues)
    if (issue.kind == TheoryIssue::Kind::NonSymmetric) nonsym = true;
  CHECK(nonsym);

  // empty system is vacuously oriented
  RewriteSystem empty = parse_system("sig\n 0 : N\n");
  OrientEngine eng5(empty);
  CHECK(eng5.check_system().overall == Tri::Yes);
}

TEST_CASE("certificate replay accepts emitted certificates and rejects tampering") {
  OrientEngine eng(goedel_sys());
  for (const auto& rule : eng.system().rules) {
    Verdict v = eng.check_rule(rule);
    REQUIRE(v.status == Tri::Yes);
    std::string why;
    CHECK(eng.validate_certificate(v.certificate, &rule.env, &why));
  }

  // a (prec) node whose precedence edge is absent
  auto [head, ls] = spine(eng.system().rules[1].lhs);  // (s x, u, v)
  DerivPtr bogus_prec = Derivation::make(
      DRule::Prec, Judgment::closure("s", {Term::symbol("0")}, Term::symbol("rec")),
      {Derivation::make(DRule::PrecEdge, Judgment::prec("s", "rec", false))});
  std::string why;
  CHECK_FALSE(eng.validate_certificate(bogus_prec, nullptr, &why));

  // a (var) node whose variable occurs in the lhs arguments
  DerivPtr bogus_var = Derivation::make(
      DRule::Var, Judgment::closure("rec", ls, Term::free_var("x")));
  CHECK_FALSE(eng.validate_certificate(bogus_var, nullptr, &why));

  // an (arg) node whose goal is not an argument
  DerivPtr bogus_arg = Derivation::make(
      DRule::Arg, Judgment::closure("rec", ls, Term::symbol("0")));
  CHECK_FALSE(eng.validate_certificate(bogus_arg, nullptr, &why));

  // legitimate fresh variables are accepted
  DerivPtr good_var = Derivation::make(
      DRule::Var, Judgment::closure("rec", ls, Term::free_var("fresh")));
  CHECK(eng.validate_certificate(good_var, nullptr, &why));
}

TEST_CASE("budget monotonicity: a yes at budget k stays yes at larger budgets") {
  RewriteSystem sys = goedel_sys(CallOrder::RecursiveHorco);
  OrientEngine eng(sys);
  const RewriteRule& rule = eng.system().rules[1];
  int first_yes = -1;
  for (int k = 1; k <= 12; ++k) {
    CmpOutcome r = eng.whorco_greater(rule.lhs, rule.rhs, rule.env, k);
    if (r.tri == Tri::Yes && first_yes < 0) first_yes = k;
    if (first_yes >= 0 && k >= first_yes) CHECK(r.tri == Tri::Yes);
  }
  CHECK(first_yes > 0);
}

TEST_CASE("mul status never orients an identity rule through a bare-head call") {
  RewriteSystem sys = parse_system(
      "sig\n 0 : N\n plus : N -> N -> N\n"
      "status\n plus mul\n"
      "rules\n plus x y -> plus x y\n");
  for (CallOrder order : {CallOrder::Subterm, CallOrder::Accessibility, CallOrder::RecursiveHorco}) {
    RewriteSystem s = sys;
    s.config.call_order = order;
    OrientEngine eng(std::move(s));
    CHECK(eng.check_rule(eng.system().rules[0]).status == Tri::No);
    // the bare symbol must not slip into the closure
    auto [head, ls] = spine(eng.system().rules[0].lhs);
    CHECK(eng.cc_member("plus", ls, Term::symbol("plus"), eng.system().rules[0].env).tri == Tri::No);
  }

  // fully applied mul-status calls still work
  RewriteSystem comm = parse_system(
      "sig\n 0 : N\n s : N -> N\n plus : N -> N -> N\n"
      "prec\n plus > s, 0\n"
      "status\n plus mul\n"
      "rules\n plus (s x) y -> s (plus x y)\n");
  OrientEngine eng(std::move(comm));
  Verdict v = eng.check_rule(eng.system().rules[0]);
  CHECK(v.status == Tri::Yes);
  std::string why;
  CHECK(eng.validate_certificate(v.certificate, &eng.system().rules[0].env, &why));
}

TEST_CASE("first-order restriction: whorco with recursive calls and red equals rpo") {
  RewriteSystem sys{arith_config(), {}, {}, {}};
  sys.config.call_order = CallOrder::RecursiveHorco;
  sys.config.red_rule = true;
  OrientEngine eng(sys);
  Signature sig{arith_config()};
  TypingEnv env{{"x", N()}, {"y", N()}};

  auto terms = enumerate_terms(sig, env, N(), 4);
  std::erase_if(terms, [&](const Term& t) { return !is_first_order(t, env, sig); });
  REQUIRE(terms.size() > 50);
  RpoEngine rpo(sig, env);
  int yes = 0;
  for (const Term& t : terms)
    for (const Term& u : terms) {
      bool by_rpo = rpo.greater(t, u).yes();
      Tri by_cc = eng.whorco_greater(t, u, env).tri;
      CAPTURE(t.show());
      CAPTURE(u.show());
      CHECK(by_cc == (by_rpo ? Tri::Yes : Tri::No));
      yes += by_rpo;
    }
  CHECK(yes > 0);
}

TEST_CASE("concurrent rule checks over one engine agree with the serial run") {
  OrientEngine eng(goedel_sys());
  std::vector<Tri> serial;
  for (const auto& rule : eng.system().rules) serial.push_back(eng.check_rule(rule).status);

  std::vector<std::vector<Tri>> parallel(4);
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&, w] {
      for (const auto& rule : eng.system().rules)
        parallel[w].push_back(eng.check_rule(rule).status);
    });
  for (auto& t : workers) t.join();
  for (const auto& run : parallel) CHECK(run == serial);
}

TEST_CASE("whorco is stable under well-typed substitutions of oriented rules") {
  OrientEngine eng(goedel_sys());
  const RewriteRule& rule = eng.system().rules[1];
  REQUIRE(eng.whorco_greater(rule.lhs, rule.rhs, rule.env).tri == Tri::Yes);

  Term s0 = Term::app(Term::symbol("s"), Term::symbol("0"));
  Term ssx = Term::app(Term::symbol("s"), Term::app(Term::symbol("s"), Term::free_var("x")));
  std::vector<std::pair<std::string, Term>> subs{{"x", s0}, {"x", ssx}};
  for (const auto& [var, rep] : subs) {
    Term lhs = substitute(rule.lhs, var, rep);
    Term rhs = substitute(rule.rhs, var, rep);
    CHECK(eng.whorco_greater(lhs, rhs, rule.env).tri == Tri::Yes);
  }
}
