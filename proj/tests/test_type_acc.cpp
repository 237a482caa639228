#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "horco/parser.hpp"
#include "horco/type_acc.hpp"
#include "support.hpp"

using namespace horco;
using namespace testsupport;

namespace {

Type D() { return Type::base("D"); }
Type P() { return Type::base("P"); }
Type B() { return Type::base("B"); }

std::vector<Type> all_types(int depth) {
  std::vector<Type> bases{Type::base("A"), Type::base("B")};
  std::vector<std::vector<Type>> by_depth{bases};
  for (int d = 1; d <= depth; ++d) {
    std::vector<Type> layer;
    for (int i = 0; i < d; ++i)
      for (const Type& l : by_depth[i])
        for (const Type& r : by_depth[d - 1 - i]) layer.push_back(Type::arrow(l, r));
    by_depth.push_back(layer);
  }
  std::vector<Type> out;
  for (const auto& layer : by_depth) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

}  // namespace

TEST_CASE("positions of a base type inside a type") {
  CHECK(pos_of_base("P", Type::arrow(D(), P())) == std::vector<Position>{{2}});
  CHECK(pos_of_base("P", P()) == std::vector<Position>{{}});
  CHECK(pos_of_base("N", P()).empty());
}

TEST_CASE("signed positions") {
  CHECK(pos_signed(Type::arrow(D(), P()), Sign::Plus) == std::vector<Position>{{2}});
  CHECK(pos_signed(B(), Sign::Plus) == std::vector<Position>{{}});
  CHECK(pos_signed(B(), Sign::Minus).empty());

  Type bn = Type::arrow(B(), Type::base("N"));
  CHECK(pos_signed(bn, Sign::Plus) == std::vector<Position>{{2}});
  CHECK(pos_of_base("B", bn) == std::vector<Position>{{1}});  // negative occurrence
}

TEST_CASE("signed positions partition the base positions, all depths up to 4") {
  for (const Type& t : all_types(4)) {
    auto plus = pos_signed(t, Sign::Plus);
    auto minus = pos_signed(t, Sign::Minus);
    for (const auto& p : plus)
      CHECK(std::find(minus.begin(), minus.end(), p) == minus.end());
    std::size_t base_positions = 0;
    for (const auto& p : t.positions())
      if (t.subtype_at(p).is_base()) ++base_positions;
    CHECK(plus.size() + minus.size() == base_positions);
  }
}

TEST_CASE("accessible arguments") {
  SignatureConfig cfg;
  cfg.declare("choice", Type::arrow(Type::arrow(D(), P()), P()));
  cfg.declare("seq", Type::arrow({P(), P()}, P()));
  cfg.declare("c", Type::arrow(Type::arrow(B(), Type::base("N")), B()));
  cfg.declare("rec", Type::arrow({N(), T(), Type::arrow({N(), T()}, T())}, T()));
  Signature sig(cfg);

  CHECK(accessible_args(sig, "choice", AccMode::Positive) == std::set<int>{1});
  CHECK(accessible_args(sig, "seq", AccMode::Positive) == std::set<int>{1, 2});
  CHECK(accessible_args(sig, "c", AccMode::Positive).empty());
  CHECK(accessible_args(sig, "rec", AccMode::BaseOnly) == std::set<int>{1, 2});
  CHECK(accessible_args(sig, "rec", AccMode::Positive) == std::set<int>{1, 2});
  CHECK(accessible_args(sig, "choice", AccMode::BaseOnly).empty());
}

TEST_CASE("base-only and positive modes agree on all-base argument types") {
  Signature sig{arith_config()};
  for (const auto& f : sig.symbol_names()) {
    auto base = accessible_args(sig, f, AccMode::BaseOnly);
    auto pos = accessible_args(sig, f, AccMode::Positive);
    CHECK(base == pos);
    CHECK(static_cast<int>(base.size()) == sig.symbol_type(f).arity());
  }
}

TEST_CASE("accessibility ordering: the process example") {
  RewriteSystem sys = parse_system(process_text());
  Signature sig(sys.sig);
  const RewriteRule& rule = sys.rules[0];

  // anchor l = seq (choice p) x; choice p >^l p y for fresh y
  Term cp = subterm_at(rule.lhs, {1, 2});
  REQUIRE(cp == Term::app(Term::symbol("choice"), Term::free_var("p")));
  Term goal = Term::app(Term::free_var("p"), Term::free_var("y"));
  CmpOutcome r = acc_greater(sig, AccMode::Positive, rule.lhs, cp, goal, 8);
  CHECK(r.tri == Tri::Yes);

  // but not for x, which is free in the anchor
  Term bad = Term::app(Term::free_var("p"), Term::free_var("x"));
  CHECK(acc_greater(sig, AccMode::Positive, rule.lhs, cp, bad, 8).tri == Tri::No);
}

TEST_CASE("accessibility ordering: base argument and deep chaining") {
  Signature sig{arith_config()};
  Term anchor = Term::free_var("l");
  Term s_x = Term::app(Term::symbol("s"), Term::free_var("x"));
  CHECK(acc_greater(sig, AccMode::BaseOnly, anchor, s_x, Term::free_var("x"), 8).tri == Tri::Yes);

  Term ssx = Term::app(Term::symbol("s"), s_x);
  CHECK(acc_greater(sig, AccMode::BaseOnly, anchor, ssx, Term::free_var("x"), 8).tri == Tri::Yes);
}

TEST_CASE("accessibility ordering rejects the Mendler projection") {
  RewriteSystem sys = parse_system(mendler_text());
  Signature sig(sys.sig);
  TypingEnv env{{"w", Type::arrow(B(), Type::base("N"))}, {"z", B()}};
  Term cw = Term::app(Term::symbol("c"), Term::free_var("w"));
  Term wz = Term::app(Term::free_var("w"), Term::free_var("z"));
  CHECK(acc_greater(sig, AccMode::Positive, sys.rules[0].lhs, cw, wz, 8).tri == Tri::No);
  CHECK(acc_greater(sig, AccMode::Positive, sys.rules[0].lhs, cw, Term::free_var("w"), 8).tri ==
        Tri::No);
}

TEST_CASE("accessibility handles lambda decomposition with a beta step") {
  // g : (D -> P) -> P, a = g (\z. h z), goal h y: (>base) then (>red)
  SignatureConfig cfg;
  cfg.declare("g", Type::arrow(Type::arrow(D(), P()), P()));
  cfg.declare("h", Type::arrow(D(), P()));
  Signature sig(cfg);
  Term body = Term::app(Term::symbol("h"), Term::bound_var(0));
  Term a = Term::app(Term::symbol("g"), Term::lam(D(), body));
  Term goal = Term::app(Term::symbol("h"), Term::free_var("y"));
  CmpOutcome r = acc_greater(sig, AccMode::Positive, Term::free_var("l"), a, goal, 8);
  CHECK(r.tri == Tri::Yes);
}

TEST_CASE("beta reachability search") {
  Term id = Term::bind("x", N(), Term::free_var("x"));
  Term zero = Term::symbol("0");
  Term redex = Term::app(id, zero);
  std::vector<Term> path;
  CHECK(beta_reaches(redex, zero, 64, &path));
  REQUIRE(path.size() == 1);
  CHECK(path[0] == zero);
  CHECK_FALSE(beta_reaches(zero, redex, 64, nullptr));
}
