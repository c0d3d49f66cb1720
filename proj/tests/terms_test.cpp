#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "inhab/terms.hpp"
#include "testutil.hpp"

using namespace inhab;

TEST_CASE("beta normality") {
  CHECK(is_beta_normal(parse_term("\\x. x")));
  CHECK_FALSE(is_beta_normal(Term::app(Term::abs("x", Term::var("x")),
                                       Term::var("y"))));
  CHECK(is_beta_normal(parse_term("x_t y_1 x_f")));
  // a redex below an abstraction is still a redex
  Term inner_redex =
      Term::abs("z", Term::app(Term::abs("x", Term::var("x")), Term::var("z")));
  CHECK_FALSE(is_beta_normal(inner_redex));
}

TEST_CASE("normality is closed under subterms") {
  testutil::Rng rng(21);
  std::vector<std::string> pool{"x", "y"};
  for (int i = 0; i < 200; ++i) {
    Term t = testutil::random_normal_term(rng, 6, pool);
    REQUIRE(is_beta_normal(t));
    if (t.is_abs()) CHECK(is_beta_normal(t.body()));
    if (t.is_app()) {
      CHECK(is_beta_normal(t.fn()));
      CHECK(is_beta_normal(t.arg()));
    }
  }
}

TEST_CASE("spine decomposition") {
  Spine s0 = spine_decompose(parse_term("x_f"));
  CHECK(s0.head == "x_f");
  CHECK(s0.arguments.empty());

  Spine s1 = spine_decompose(parse_term("x_t y_1 x_f"));
  CHECK(s1.head == "x_t");
  REQUIRE(s1.arguments.size() == 2);
  CHECK(alpha_equal(s1.arguments[0], Term::var("y_1")));
  CHECK(alpha_equal(s1.arguments[1], Term::var("x_f")));

  Spine s2 = spine_decompose(parse_term("x (\\y. y)"));
  CHECK(s2.head == "x");
  REQUIRE(s2.arguments.size() == 1);
  CHECK(s2.arguments[0].is_abs());

  CHECK_THROWS_AS(spine_decompose(parse_term("\\x. x")), std::invalid_argument);
}

TEST_CASE("every normal term is an abstraction or a spine") {
  testutil::Rng rng(22);
  std::vector<std::string> pool{"x", "y", "z"};
  for (int i = 0; i < 300; ++i) {
    Term t = testutil::random_normal_term(rng, 7, pool);
    if (t.is_abs()) continue;
    // must decompose without throwing
    Spine s = spine_decompose(t);
    CHECK(!s.head.empty());
  }
}

TEST_CASE("term parsing and printing") {
  Term id = parse_term("\\x. x");
  REQUIRE(id.is_abs());
  CHECK(id.binder() == "x");
  CHECK(id.body().is_var());

  // application is left-associative
  Term t = parse_term("xt y1 xf");
  REQUIRE(t.is_app());
  CHECK(t.fn().is_app());
  CHECK(alpha_equal(t.fn().fn(), Term::var("xt")));

  Term k = parse_term("\\x.\\y. x y");
  CHECK(alpha_equal(parse_term(print_term(k)), k));
  CHECK(alpha_equal(parse_term("\\a.\\b. a b"), k));
  CHECK_FALSE(alpha_equal(parse_term("\\a.\\b. b a"), k));

  CHECK_THROWS_AS(parse_term("\\x x"), ParseError);
  CHECK_THROWS_AS(parse_term("(x"), ParseError);
  CHECK_THROWS_AS(parse_term(""), ParseError);
}

TEST_CASE("round-trip up to alpha on random normal terms") {
  testutil::Rng rng(23);
  std::vector<std::string> pool{"x", "y_1", "q0@_"};
  for (int i = 0; i < 500; ++i) {
    Term t = testutil::random_normal_term(rng, 7, pool);
    Term back = parse_term(print_term(t));
    CHECK(alpha_equal(back, t));
  }
}

TEST_CASE("alpha equality handles shadowing") {
  // \x.\x. x == \a.\b. b, != \a.\b. a
  Term shadow = Term::abs("x", Term::abs("x", Term::var("x")));
  CHECK(alpha_equal(shadow, parse_term("\\a.\\b. b")));
  CHECK_FALSE(alpha_equal(shadow, parse_term("\\a.\\b. a")));
  // free variables match by name
  CHECK(alpha_equal(Term::var("x"), Term::var("x")));
  CHECK_FALSE(alpha_equal(Term::var("x"), Term::var("y")));
}
