#include <doctest.h>

#include <string>

#include "tauber/errors.hpp"
#include "tauber/game_io.hpp"
#include "tauber/hidden_game.hpp"
#include "tauber/stochastic_game.hpp"

using namespace tauber;

namespace {

std::string data(const char* name) { return std::string(TAUBER_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("load_game") {
  SUBCASE("matching pennies") {
    const FiniteGame g = load_game(data("matching_pennies.json"));
    CHECK(g.num_states == 1);
    CHECK(g.state_names == std::vector<std::string>{"root"});
    const GameValues v = game_values(g, 10, 0.1);
    CHECK(std::abs(v.v_n[0]) <= 1e-9);
    CHECK(std::abs(v.v_lambda[0]) <= 1e-9);
  }
  SUBCASE("constant game with ragged action sets") {
    const FiniteGame g = load_game(data("constant.json"));
    CHECK(g.actions1 == std::vector<std::size_t>{1, 2});
    const GameValues v = game_values(g, 7, 0.05);
    for (double x : v.v_n) CHECK(x == doctest::Approx(0.5));
    for (double x : v.v_lambda) CHECK(x == doctest::Approx(0.5));
  }
  SUBCASE("big match") {
    const FiniteGame g = load_game(data("big_match.json"));
    for (double lambda : {0.5, 0.1, 0.01}) {
      CHECK(game_values(g, 1, lambda).v_lambda[0] == doctest::Approx(0.5).epsilon(1e-8));
    }
  }
  SUBCASE("round trip") {
    const FiniteGame g = random_game({.seed = 21, .num_states = 3, .actions1 = 2, .actions2 = 3});
    const FiniteGame back = parse_game(game_to_json(g));
    CHECK(back.actions1 == g.actions1);
    CHECK(back.actions2 == g.actions2);
    CHECK(back.payoff == g.payoff);
    for (std::size_t k = 0; k < 3; ++k) {
      for (std::size_t c = 0; c < g.transition[k].size(); ++c) {
        CHECK(back.transition[k][c] == doctest::Approx(g.transition[k][c]).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("load_game rejects malformed input") {
  const std::string ok_head = R"("states": ["s"], "actions1": [1], "actions2": [1], )";
  CHECK_THROWS_AS(load_game(data("missing.json")), InputError);
  CHECK_THROWS_AS(parse_game("{not json"), InputError);
  CHECK_THROWS_AS(parse_game("{" + ok_head + R"("payoff": [[[0]]]})"), InputError);
  CHECK_THROWS_AS(parse_game("{" + ok_head + R"("payoff": [[[0]]], "transition": [[[[0.9]]]]})"),
                  InputError);
  CHECK_THROWS_AS(parse_game("{" + ok_head + R"("payoff": [[["x"]]], "transition": [[[[1]]]]})"),
                  InputError);
  CHECK_THROWS_AS(parse_game("{" + ok_head + R"("payoff": [[[0, 1]]], "transition": [[[[1]]]]})"),
                  InputError);
  CHECK_THROWS_AS(parse_game(R"({"states": ["s"], "actions1": [0], "actions2": [1],
                                 "payoff": [[]], "transition": [[]]})"),
                  InputError);
  CHECK_THROWS_AS(parse_game("{" + ok_head + R"("payoff": [[[0]]], "transition": [[[[-0.5, 1.5]]]]})"),
                  InputError);
  // Within load tolerance: renormalized.
  const FiniteGame g = parse_game("{" + ok_head + R"("payoff": [[[0]]], "transition": [[[[1.0000000001]]]]})");
  CHECK(g.transition[0][0] == 1.0);
}

TEST_CASE("load_hidden_game") {
  SUBCASE("revealing file") {
    const HiddenGameSpec s = load_hidden_game(data("revealing_hidden.json"));
    CHECK(s.num_states == 2);
    CHECK(s.num_signals == 2);
    const BeliefUpdate u = belief_update(s, {0.5, 0.5}, 0, 0, 1);
    CHECK(u.posterior[1] == doctest::Approx(1.0));
  }
  SUBCASE("noisy file") {
    const HiddenGameSpec s = load_hidden_game(data("noisy_hidden.json"));
    CHECK(s.actions2 == 1);
    const FiniteGame m = s.transition_marginal();
    CHECK(m.next_state_law(0, 0, 0)[0] == doctest::Approx(0.9));
  }
  SUBCASE("single state") {
    const HiddenGameSpec s = load_hidden_game(data("single_state_hidden.json"));
    CHECK(s.num_states == 1);
  }
  SUBCASE("declared transition must match the kernel marginal") {
    const std::string base = R"({"states": ["a", "b"], "actions1": [1, 1], "actions2": [1, 1],
      "signals": ["x"], "payoff": [[[0]], [[1]]],
      "kernel": [[[[0.4, 0.6]]], [[[1, 0]]]])";
    CHECK_NOTHROW(parse_hidden_game(base + R"(, "transition": [[[[0.4, 0.6]]], [[[1, 0]]]]})"));
    CHECK_THROWS_AS(parse_hidden_game(base + R"(, "transition": [[[[0.5, 0.5]]], [[[1, 0]]]]})"),
                    InputError);
  }
  SUBCASE("state-dependent action sets are rejected") {
    CHECK_THROWS_AS(parse_hidden_game(R"({"states": ["a", "b"], "actions1": [1, 2], "actions2": [1, 1],
      "signals": ["x"], "payoff": [[[0]], [[1], [2]]],
      "kernel": [[[[1, 0]]], [[[1, 0]], [[0, 1]]]]})"),
                    InputError);
  }
  SUBCASE("missing signals") {
    CHECK_THROWS_AS(parse_hidden_game(R"({"states": ["a"], "actions1": [1], "actions2": [1],
      "payoff": [[[0]]], "kernel": [[[[1]]]]})"),
                    InputError);
  }
}
