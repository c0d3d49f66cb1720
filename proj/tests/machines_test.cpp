#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "inhab/machines.hpp"
#include "testutil.hpp"

using namespace inhab;

namespace {

TMSpec tm1() {
  return parse_tm_spec(
      "symbols: _\n"
      "states: q0 qf\n"
      "initial: q0\n"
      "final: qf\n"
      "delta: q0 _ -> qf _ R\n");
}

TMSpec tm2() {
  return parse_tm_spec(
      "symbols: _\n"
      "states: q0 qf\n"
      "initial: q0\n"
      "final: qf\n"
      "delta: q0 _ -> q0 _ R\n");
}

}  // namespace

TEST_CASE("tm_step applies delta, halts on the final state, detects the edge") {
  TMSpec spec = tm1();
  Config start = initial_config(spec, 3);
  StepResult r = tm_step(spec, start);
  REQUIRE(std::holds_alternative<Config>(r));
  Config next = std::get<Config>(r);
  CHECK(next.state == "qf");
  CHECK(next.pos == 2);
  CHECK(next.tape == std::vector<std::string>{"_", "_", "_"});

  CHECK(std::holds_alternative<Halted>(tm_step(spec, next)));

  TMSpec runner = tm2();
  Config at_edge{"q0", 3, {"_", "_", "_"}};
  CHECK(std::holds_alternative<OutOfBounds>(tm_step(runner, at_edge)));
}

TEST_CASE("tm_run outcomes") {
  TMSpec spec = tm1();
  RunResult r = tm_run(spec, initial_config(spec, 3), 10);
  REQUIRE(std::holds_alternative<Trace>(r));
  const Trace& t = std::get<Trace>(r);
  CHECK(t.configs.size() == 2);
  CHECK(t.steps.size() == 1);
  CHECK(replay_trace(spec, t));

  RunResult rejected = tm_run(tm2(), initial_config(tm2(), 3), 10);
  CHECK(std::holds_alternative<Rejected>(rejected));

  Config accepting{"qf", 1, {"_", "_", "_"}};
  RunResult already = tm_run(spec, accepting, 10);
  REQUIRE(std::holds_alternative<Trace>(already));
  CHECK(std::get<Trace>(already).configs.size() == 1);

  // a zero budget on a non-final start exhausts
  RunResult spent = tm_run(spec, initial_config(spec, 3), 0);
  CHECK(std::holds_alternative<BudgetExhausted>(spent));
}

TEST_CASE("tape width monotonicity on random machines") {
  testutil::Rng rng(0xface);
  for (int i = 0; i < 60; ++i) {
    TMSpec spec = testutil::random_tm(rng);
    for (int n = 3; n <= 4; ++n) {
      RunResult r = tm_run(spec, initial_config(spec, n),
                           default_step_budget(spec, n));
      if (!std::holds_alternative<Trace>(r)) continue;
      for (int m = n + 1; m <= n + 2; ++m) {
        RunResult wider = tm_run(spec, initial_config(spec, m),
                                 default_step_budget(spec, m));
        CHECK(std::holds_alternative<Trace>(wider));
      }
    }
  }
}

TEST_CASE("tm_run is deterministic") {
  testutil::Rng rng(0xdead);
  for (int i = 0; i < 20; ++i) {
    TMSpec spec = testutil::random_tm(rng);
    RunResult a = tm_run(spec, initial_config(spec, 3), 50);
    RunResult b = tm_run(spec, initial_config(spec, 3), 50);
    CHECK(a.index() == b.index());
    if (std::holds_alternative<Trace>(a)) {
      CHECK(std::get<Trace>(a).configs == std::get<Trace>(b).configs);
    }
  }
}

TEST_CASE("ssts_step rewrites two adjacent cells") {
  SSTS R;
  R.alphabet = {"0", "1"};
  R.rules = {{"0", "0", "1", "1"}};
  R.validate();
  Word w{"0", "0", "0", "0"};
  Word after = ssts_step(R, w, R.rules[0], 1);
  CHECK(after == Word{"1", "1", "0", "0"});
  Word done = ssts_step(R, after, R.rules[0], 3);
  CHECK(done == Word{"1", "1", "1", "1"});
  CHECK_THROWS_AS(ssts_step(R, after, R.rules[0], 1), InapplicableRule);
  CHECK_THROWS_AS(ssts_step(R, w, R.rules[0], 4), InapplicableRule);
}

TEST_CASE("ssts_reach finds shortest derivations and proves parity failures") {
  SSTS R;
  R.alphabet = {"0", "1"};
  R.rules = {{"0", "0", "1", "1"}};
  R.validate();

  auto d4 = ssts_reach(R, 4, 100);
  REQUIRE(d4.has_value());
  CHECK(d4->steps.size() == 2);
  CHECK(replay_derivation(R, *d4));
  CHECK(d4->final_word() == uniform_word("1", 4));

  // every step converts exactly two zeros: odd widths are unreachable
  CHECK_FALSE(ssts_reach(R, 3, 100).has_value());

  SSTS stuck;
  stuck.alphabet = {"0", "1"};
  stuck.rules = {{"0", "0", "0", "1"}};
  stuck.validate();
  for (int n = 2; n <= 6; ++n) {
    CHECK_FALSE(ssts_reach(stuck, n, default_state_bound(stuck, n)).has_value());
  }
}

TEST_CASE("derivations replay and preserve word length") {
  testutil::Rng rng(0xabba);
  for (int i = 0; i < 40; ++i) {
    SSTS R = testutil::random_ssts(rng);
    for (int n = 3; n <= 5; ++n) {
      auto d = ssts_reach(R, n, default_state_bound(R, n));
      if (!d) continue;
      CHECK(replay_derivation(R, *d));
      for (const auto& step : d->steps)
        CHECK(step.word.size() == static_cast<std::size_t>(n));
    }
  }
}

TEST_CASE("spec files parse and validate") {
  TMSpec spec = parse_tm_spec(
      "# a two-symbol machine\n"
      "symbols: _ a\n"
      "states: q0 q1 qf\n"
      "initial: q0\n"
      "final: qf\n"
      "delta: q0 _ -> q1 a R\n"
      "delta: q0 a -> qf a R\n"
      "delta: q1 _ -> q0 _ L\n"
      "delta: q1 a -> qf _ L\n");
  CHECK(spec.symbols.size() == 2);
  CHECK(spec.transitions.size() == 4);

  CHECK_THROWS_AS(parse_tm_spec("symbols: _\nstates: q0 qf\ninitial: q0\n"
                                "final: qf\n"),
                  SpecError);  // delta not total
  CHECK_THROWS_AS(parse_tm_spec("symbols: _ l\nstates: q0 qf\ninitial: q0\n"
                                "final: qf\ndelta: q0 _ -> qf _ R\n"
                                "delta: q0 l -> qf l R\n"),
                  SpecError);  // reserved-symbol clash
  CHECK_THROWS_AS(parse_tm_spec("bogus: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_tm_spec("delta: q0 _ -> qf _\n"), ParseError);

  SSTS R = parse_ssts_spec("alphabet: 0 1 a\nrule: 0 a => a 1\n");
  CHECK(R.alphabet.size() == 3);
  CHECK(R.rules.size() == 1);
  CHECK_THROWS_AS(parse_ssts_spec("alphabet: 0\n"), SpecError);
  CHECK_THROWS_AS(parse_ssts_spec("alphabet: 0 1\nrule: 0 2 => 1 1\n"),
                  SpecError);
}
