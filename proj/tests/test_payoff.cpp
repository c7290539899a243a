#include <cmath>
#include <random>

#include "doctest.h"
#include "duel/payoff.hpp"
#include "oracles.hpp"

using duel::AccuracyFunction;
using duel::Breakpoint;
using duel::ConsumptionPath;
using duel::Play;
using duel::SniperSchedule;

namespace {

duel::DuelParameters game(int m, double a = 1.0, double c2 = 1.0) {
  duel::DuelParameters p;
  p.p2 = AccuracyFunction::power(c2);
  p.a = a;
  p.m = m;
  return p;
}

const duel::TTable& table3() {
  static const duel::TTable t = duel::solve_game(game(3), duel::SolverConfig{});
  return t;
}

}  // namespace

TEST_SUITE("payoff") {
  TEST_CASE("single shot success") {
    const AccuracyFunction P;
    CHECK(duel::single_shot_success(P, 0.3, 0.0) == 0.0);
    CHECK(duel::single_shot_success(P, 1.0, 1.0) == 1.0);
    CHECK(duel::single_shot_success(P, 0.5, 2.0) == doctest::Approx(0.75).epsilon(1e-15));
  }

  TEST_CASE("continuous success") {
    const AccuracyFunction P;
    const ConsumptionPath hold({{0.0, 1.0}, {0.4, 1.0}}, false);
    CHECK(duel::continuous_success_prob(hold, P, 0.1, 0.3) == 0.0);
    const ConsumptionPath linear({{0.0, 1.0}, {1.0, 0.0}}, false);
    CHECK(duel::continuous_success_prob(linear, P, 0.0, 1.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
    CHECK(duel::continuous_success_prob(ConsumptionPath::hold(1.0, true), P, 0.2, 1.0) == 1.0);
  }

  TEST_CASE("paths are validated") {
    CHECK_THROWS_AS(ConsumptionPath({{0.1, 1.0}}, false), std::invalid_argument);
    CHECK_THROWS_AS(ConsumptionPath({{0.0, 1.0}, {0.5, 1.2}}, false), std::invalid_argument);
    CHECK_THROWS_AS(ConsumptionPath({{0.0, 1.0}, {0.5, 0.5}, {0.5, 0.2}}, false), std::invalid_argument);
    CHECK_THROWS_AS(SniperSchedule({0.5, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(SniperSchedule({1.5}), std::invalid_argument);
  }

  TEST_CASE("no shots") {
    CHECK(duel::payoff({ConsumptionPath::hold(1.0, true), SniperSchedule{}}, game(0, 1.0)) == 1.0);
    CHECK(duel::payoff({ConsumptionPath::hold(0.0, true), SniperSchedule{}}, game(0, 0.0)) == 0.0);
  }

  TEST_CASE("idle gunner against a shot at t = 1") {
    const Play play{ConsumptionPath::hold(1.0, false), SniperSchedule({1.0})};
    CHECK(duel::payoff(play, game(1)) == -1.0);
  }

  TEST_CASE("linear spend against a shot at t = 1") {
    const Play play{ConsumptionPath({{0.0, 1.0}, {1.0, 0.0}}, false), SniperSchedule({1.0})};
    CHECK(duel::payoff(play, game(1)) == doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-10));
    CHECK(duel::payoff(play, game(1)) == doctest::Approx(0.264241).epsilon(1e-6));
  }

  TEST_CASE("payoff rejects a play of the wrong game") {
    const Play play{ConsumptionPath::hold(1.0), SniperSchedule({1.0, 1.0})};
    CHECK_THROWS_AS(duel::payoff(play, game(1)), std::invalid_argument);
    CHECK_THROWS_AS(duel::payoff(play, game(2, 0.5)), std::invalid_argument);
  }

  TEST_CASE("payoff matches the recursion over shots") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
      const int m = 1 + trial % 4;
      const double c2 = trial % 2 ? 2.0 : 1.0;
      std::vector<double> ts{0.0, u(rng), u(rng), u(rng), 1.0};
      std::sort(ts.begin(), ts.end());
      std::vector<Breakpoint> pts{{0.0, 1.5}};
      std::vector<oracle::Segment> segs;
      for (std::size_t i = 1; i < ts.size(); ++i) {
        const double prev = pts.back().alpha;
        double alpha = i == 2 ? prev : prev * u(rng);  // one flat stretch
        if (i + 1 == ts.size() && trial % 3 == 0) alpha = 0.0;
        segs.push_back({ts[i - 1], ts[i], prev, alpha});
        pts.push_back({ts[i], alpha});
      }
      std::vector<double> shots;
      for (int i = 0; i < m; ++i) shots.push_back(u(rng) * 0.999);
      std::sort(shots.begin(), shots.end());
      auto params = game(m, 1.5, c2);
      const double got = duel::payoff({ConsumptionPath(pts, false), SniperSchedule(shots)}, params);
      const double want = oracle::recursive_payoff(segs, shots, c2, params.A1, params.A2);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }

  TEST_CASE("shots left are counted before a shot at the same moment") {
    const Play play{ConsumptionPath::hold(1.0), SniperSchedule({0.3, 0.3, 0.8})};
    CHECK(play.n(0.3) == 3);
    CHECK(play.n(0.31) == 1);
    CHECK(play.n(1.0) == 0);
  }

  TEST_CASE("simplest T-plays reach the value") {
    const auto& table = table3();
    const auto params = game(3);
    const auto [first, second] = duel::simplest_t_plays(table, params);
    CHECK(duel::is_t_play(first, table));
    CHECK(duel::is_t_play(second, table));
    CHECK(std::abs(duel::payoff(first, params) - table.value(3)) <= 1e-5);
    CHECK(std::abs(duel::payoff(second, params) - table.value(3)) <= 1e-5);
  }

  TEST_CASE("simplest T-play without shots is a terminal burst") {
    const auto table = duel::solve_game(game(0), duel::SolverConfig{});
    const auto [first, second] = duel::simplest_t_plays(table, game(0));
    CHECK(first.path.bursts());
    CHECK(duel::payoff(first, game(0)) == 1.0);
  }

  TEST_CASE("an early shot is not a T-play") {
    const auto& table = table3();
    const Play play{ConsumptionPath::hold(1.0),
                    SniperSchedule({table.T(3, 1.0) - 0.05, table.T(2, 1.0), table.T(1, 1.0)})};
    CHECK_FALSE(duel::is_t_play(play, table));
  }

  TEST_CASE("spending before the curve is not a T-play") {
    const auto& table = table3();
    const Play play{ConsumptionPath({{0.0, 1.0}, {0.1, 0.9}, {1.0, 0.0}}, false),
                    SniperSchedule({1.0, 1.0, 1.0})};
    CHECK_FALSE(duel::is_t_play(play, table));
  }

  TEST_CASE("plays round-trip through JSON") {
    const auto [first, second] = duel::simplest_t_plays(table3(), game(3));
    const Play back = duel::play_from_json(duel::to_json(second));
    CHECK(back.path.points().size() == second.path.points().size());
    CHECK(duel::payoff(back, game(3)) == duel::payoff(second, game(3)));
  }
}
