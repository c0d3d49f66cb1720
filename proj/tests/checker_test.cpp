#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "inhab/checker.hpp"
#include "inhab/encoder.hpp"
#include "inhab/search.hpp"
#include "testutil.hpp"

using namespace inhab;

namespace {

Type at(const char* n) { return Type::atom(n); }

TMSpec tm1() {
  TMSpec spec;
  spec.symbols = {"_"};
  spec.states = {"q0", "qf"};
  spec.initial = "q0";
  spec.final_state = "qf";
  spec.transitions = {{"q0", "_", "qf", "_", +1}};
  spec.validate();
  return spec;
}

}  // namespace

TEST_CASE("axiom and identity") {
  Context ctx = Context{}.extended("x", at("a"));
  CHECK(check(ctx, Term::var("x"), at("a")));
  CHECK_FALSE(check(ctx, Term::var("x"), at("b")));
  // unknown free variable is not derivable, not an error
  CHECK_FALSE(check(Context{}, Term::var("z"), at("a")));

  Type both = Type::inter(Type::arrow(at("a"), at("a")),
                          Type::arrow(at("b"), at("b")));
  CHECK(check(Context{}, parse_term("\\x. x"), both));
  CHECK_FALSE(check(Context{}, parse_term("\\x. x"),
                    Type::arrow(at("a"), at("b"))));
}

TEST_CASE("non-normal terms are rejected as an error") {
  Term redex = Term::app(Term::abs("x", Term::var("x")), Term::var("y"));
  CHECK_THROWS_AS(check(Context{}, redex, at("a")), std::invalid_argument);
}

TEST_CASE("the width-3 judgment family of the single-step machine") {
  TMSpec spec = tm1();
  EncodingBundle b = encode_tau_star_tm(spec);
  auto judgments = inner_judgments_tm(b, initial_config(spec, 3));
  REQUIRE(judgments.size() == 3);
  Term m = parse_term("x_t y_1 x_f");

  // Gamma_1 |- x_t y_1 x_f : <q0,_>, via the transition component
  CHECK(check(judgments[0].ctx, m, at("q0@_")));
  CHECK(judgments[0].goal == at("q0@_"));
  CHECK(judgments[1].goal == at("_"));
  CHECK(check_multi(judgments, m));

  // the same term fails when a neighbor mark is wrong
  Context broken = judgments[0].ctx.extended("y_1", at("dot"));
  CHECK_FALSE(check(broken, m, at("q0@_")));

  // partial application: Gamma_1 |- x_t y_1 : _ -> <q0,_>
  CHECK(check(judgments[0].ctx, parse_term("x_t y_1"),
              Type::arrow(at("_"), at("q0@_"))));
}

TEST_CASE("check_multi basics") {
  CHECK(check_multi({}, Term::var("x")));  // vacuous
  Context ctx = Context{}.extended("x", at("a"));
  CHECK_FALSE(check_multi({Judgment{ctx, at("b")}}, Term::var("x")));
}

TEST_CASE("intersection targets inside context types") {
  // x : a -> (b & c) supports x y : b by &E after ->E
  Context ctx = Context{}
                    .extended("x", Type::arrow(at("a"), Type::inter(at("b"), at("c"))))
                    .extended("y", at("a"));
  CHECK(check(ctx, parse_term("x y"), at("b")));
  CHECK(check(ctx, parse_term("x y"), at("c")));
  CHECK(check(ctx, parse_term("x y"), Type::inter(at("b"), at("c"))));
  CHECK_FALSE(check(ctx, parse_term("x y"), at("a")));
}

TEST_CASE("shadowing: inner binders hide outer bindings") {
  Context ctx = Context{}.extended("x", at("a"));
  // \x. x against b -> b re-binds x
  CHECK(check(ctx, parse_term("\\x. x"), Type::arrow(at("b"), at("b"))));
  CHECK_FALSE(check(ctx, parse_term("\\x. x"), Type::arrow(at("b"), at("a"))));
}

TEST_CASE("intersection introduction/elimination, weakening, inversion") {
  testutil::Rng rng(0xbead);
  int positive = 0;
  for (int i = 0; i < 300; ++i) {
    testutil::CheckerInstance inst = testutil::random_checker_instance(rng);
    bool cs = check(inst.ctx, inst.m, inst.sigma);
    bool ct = check(inst.ctx, inst.m, inst.tau);
    Type both = Type::inter(inst.sigma, inst.tau);
    CHECK((cs && ct) == check(inst.ctx, inst.m, both));
    if (check(inst.ctx, inst.m, both)) {
      CHECK(cs);  // &E
      CHECK(ct);
    }
    if (cs) {
      ++positive;
      // weakening with a fresh variable
      Type rho = testutil::random_type(rng, 2, {"a", "b", "c"});
      CHECK(check(inst.ctx.extended("fresh_z", rho), inst.m, inst.sigma));
    }
    // abstraction inversion
    Term lam = Term::abs("w", inst.m);
    bool lhs = check(inst.ctx, lam, Type::arrow(inst.sigma, inst.tau));
    bool rhs = check(inst.ctx.extended("w", inst.sigma), inst.m, inst.tau);
    CHECK(lhs == rhs);
  }
  CHECK(positive > 30);  // the suite exercises non-vacuous cases
}

TEST_CASE("transcripts validate and replay") {
  TMSpec spec = tm1();
  EncodingBundle b = encode_tau_star_tm(spec);
  auto judgments = inner_judgments_tm(b, initial_config(spec, 3));
  Term m = parse_term("x_t y_1 x_f");
  for (const auto& j : judgments) {
    auto d = check_with_transcript(j.ctx, m, j.goal);
    REQUIRE(d.has_value());
    CHECK(validate_derivation(*d));
    std::string text = transcript_text(*d);
    auto replayed = replay_transcript(text, j.ctx);
    CHECK(replayed.has_value());
  }
  // a tampered transcript does not replay
  auto d = check_with_transcript(judgments[0].ctx, m, judgments[0].goal);
  std::string text = transcript_text(*d);
  auto pos = text.find("q0@_");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 4, "qf@_");
  bool rejected = false;
  try {
    rejected = !replay_transcript(text, judgments[0].ctx).has_value();
  } catch (const std::exception&) {
    rejected = true;
  }
  CHECK(rejected);
}

TEST_CASE("replayed transcripts survive random checking") {
  testutil::Rng rng(0x5eed);
  int replays = 0;
  for (int i = 0; i < 200; ++i) {
    testutil::CheckerInstance inst = testutil::random_checker_instance(rng);
    auto d = check_with_transcript(inst.ctx, inst.m, inst.sigma);
    if (!d) continue;
    ++replays;
    CHECK(validate_derivation(*d));
    CHECK(replay_transcript(transcript_text(*d), inst.ctx).has_value());
  }
  CHECK(replays > 20);
}
