#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "inhab/encoder.hpp"
#include "inhab/pipeline.hpp"
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

TMSpec tm2() {
  TMSpec spec = tm1();
  spec.transitions = {{"q0", "_", "q0", "_", +1}};
  spec.validate();
  return spec;
}

}  // namespace

TEST_CASE("identity is found, empty goals exhaust definitively") {
  SearchResult r = inhabit(Type::arrow(at("a"), at("a")), SearchConfig{2, {}});
  REQUIRE(r.found());
  CHECK(alpha_equal(*r.term, parse_term("\\x. x")));

  SearchResult none = inhabit(at("a"), SearchConfig{8, {}});
  CHECK_FALSE(none.found());
  CHECK_FALSE(none.depth_limit_hit);  // provably uninhabited, not a cutoff
}

TEST_CASE("found terms are normal and pass checking with transcripts") {
  Type both = Type::inter(Type::arrow(at("a"), at("a")),
                          Type::arrow(at("b"), at("b")));
  SearchResult r = inhabit(both, SearchConfig{3, {}});
  REQUIRE(r.found());
  CHECK(is_beta_normal(*r.term));
  REQUIRE(r.transcripts.size() == 1);
  CHECK(validate_derivation(r.transcripts[0]));
  CHECK(replay_transcript(transcript_text(r.transcripts[0]), Context{})
            .has_value());
}

TEST_CASE("tau_star of the single-step machine is inhabited at depth 9") {
  EncodingBundle b = encode_tau_star_tm(tm1());
  SearchResult shallow = inhabit(b.tau_star, SearchConfig{8, {}});
  CHECK_FALSE(shallow.found());
  CHECK(shallow.depth_limit_hit);

  SearchResult r = inhabit(b.tau_star, SearchConfig{9, {}});
  REQUIRE(r.found());
  CHECK(check(Context{}, *r.term, b.tau_star));
}

TEST_CASE("the post-abstraction expansion node picks the initializer head") {
  // {y_1:l |- circ, y_1:r |- hash, y_1:dot |- dollar} over the full context
  EncodingBundle b = encode_tau_star_tm(tm1());
  std::map<std::string, Type> base{{b.var_0, b.sigma_0},
                                   {b.var_star, b.sigma_star},
                                   {b.var_final, b.sigma_final},
                                   {b.var_t[0], b.sigma_t[0]}};
  auto with_y = [&](const char* mark) {
    auto m = base;
    m["y_1"] = at(mark);
    return Context(m);
  };
  std::vector<Judgment> js{Judgment{with_y("l"), at("circ")},
                           Judgment{with_y("r"), at("hash")},
                           Judgment{with_y("dot"), at("dollar")}};
  SearchResult shallow = inhabit_multi(js, SearchConfig{3, {}});
  CHECK_FALSE(shallow.found());

  SearchResult r = inhabit_multi(js, SearchConfig{4, {}});
  REQUIRE(r.found());
  Spine spine = spine_decompose(*r.term);
  CHECK(spine.head == "x_0");
  CHECK(check_multi(js, *r.term));
}

TEST_CASE("the width-3 family of the single-step machine") {
  TMSpec spec = tm1();
  EncodingBundle b = encode_tau_star_tm(spec);
  auto js = inner_judgments_tm(b, initial_config(spec, 3));

  SearchResult r = inhabit_multi(js, SearchConfig{3, {}});
  REQUIRE(r.found());
  CHECK(alpha_equal(*r.term, parse_term("x_t y_1 x_f")));

  SearchResult too_shallow = inhabit_multi(js, SearchConfig{1, {}});
  CHECK_FALSE(too_shallow.found());
  CHECK(too_shallow.depth_limit_hit);
}

TEST_CASE("the right-runner family is uninhabited at every width") {
  TMSpec spec = tm2();
  EncodingBundle b = encode_tau_star_tm(spec);
  for (int w = 3; w <= 5; ++w) {
    auto js = inner_judgments_tm(b, initial_config(spec, w));
    SearchResult r = inhabit_multi(js, SearchConfig{2 * w, {}});
    CHECK_FALSE(r.found());
  }
}

TEST_CASE("enumeration oracle basics") {
  Context xa = Context{}.extended("x", at("a"));
  auto only_x = enumerate_inhabitants({Judgment{xa, at("a")}}, 1);
  REQUIRE(only_x.size() == 1);
  CHECK(alpha_equal(only_x[0], Term::var("x")));

  Type both = Type::inter(Type::arrow(at("a"), at("a")),
                          Type::arrow(at("b"), at("b")));
  auto ids = enumerate_inhabitants({Judgment{Context{}, both}}, 2);
  REQUIRE(ids.size() == 1);
  CHECK(alpha_equal(ids[0], parse_term("\\z. z")));

  CHECK(enumerate_inhabitants({Judgment{Context{}, at("a")}}, 6).empty());
}

TEST_CASE("searches are deterministic") {
  EncodingBundle b = encode_tau_star_tm(tm1());
  SearchResult r1 = inhabit(b.tau_star, SearchConfig{9, {}});
  SearchResult r2 = inhabit(b.tau_star, SearchConfig{9, {}});
  REQUIRE(r1.found());
  REQUIRE(r2.found());
  CHECK(print_term(*r1.term) == print_term(*r2.term));
}

TEST_CASE("max_branch truncation reports a limit hit") {
  EncodingBundle b = encode_tau_star_tm(tm1());
  SearchResult r = inhabit(b.tau_star, SearchConfig{9, 2});
  CHECK_FALSE(r.found());
  CHECK(r.depth_limit_hit);
}

namespace {

// Small judgment sets: shared variable names, per-judgment types of rank at
// most 2 over two atoms.
std::vector<Judgment> random_judgment_set(testutil::Rng& rng) {
  std::vector<std::string> atoms{"a", "b"};
  std::size_t n_judgments = 1 + rng.below(3);
  std::size_t n_vars = 1 + rng.below(3);
  static const char* names[] = {"f", "g", "x"};
  std::vector<Judgment> js;
  for (std::size_t j = 0; j < n_judgments; ++j) {
    Context ctx;
    for (std::size_t v = 0; v < n_vars; ++v)
      ctx = ctx.extended(names[v], testutil::random_type(rng, 2, atoms));
    js.push_back(Judgment{ctx, testutil::random_type(rng, 2, atoms)});
  }
  return js;
}

}  // namespace

TEST_CASE("search agrees with the enumeration oracle at matched bounds") {
  testutil::Rng rng(0x07ac1e);
  const std::size_t size_bound = 7;
  int non_empty = 0, definitive = 0;
  for (int i = 0; i < 60; ++i) {
    auto js = random_judgment_set(rng);
    auto enumerated = enumerate_inhabitants(js, size_bound);
    SearchResult r = inhabit_multi(js, SearchConfig{(int)size_bound, {}});

    if (!enumerated.empty()) {
      ++non_empty;
      // any term of <= 7 nodes has height <= 7: search must find something
      CHECK(r.found());
    }
    if (r.found()) {
      CHECK(check_multi(js, *r.term));
      if (r.term->node_count() <= size_bound) CHECK(!enumerated.empty());
    } else if (!r.depth_limit_hit) {
      // complete exhaustion proves uninhabitedness outright
      ++definitive;
      CHECK(enumerated.empty());
    }
  }
  CHECK(non_empty > 5);
  CHECK(definitive > 5);
}

TEST_CASE("every search hit appears in a sufficiently large enumeration") {
  testutil::Rng rng(0xfeed);
  int confirmed = 0;
  for (int i = 0; i < 200 && confirmed < 12; ++i) {
    auto js = random_judgment_set(rng);
    SearchResult r = inhabit_multi(js, SearchConfig{3, {}});
    if (!r.found() || r.term->node_count() > 9) continue;
    auto enumerated = enumerate_inhabitants(js, r.term->node_count());
    bool present = false;
    for (const auto& t : enumerated)
      present = present || alpha_equal(t, *r.term);
    CHECK(present);
    ++confirmed;
  }
  CHECK(confirmed >= 8);
}
