#include <cmath>

#include "doctest.h"
#include "duel/strategy.hpp"

using duel::Action;
using duel::Role;
using duel::TieBreak;

namespace {

duel::DuelParameters game(int m) {
  duel::DuelParameters p;
  p.m = m;
  return p;
}

const duel::TTable& table3() {
  static const duel::TTable t = duel::solve_game(game(3), duel::SolverConfig{});
  return t;
}

}  // namespace

TEST_SUITE("strategy") {
  TEST_CASE("tie-break names") {
    for (auto tie : {TieBreak::GunnerFirst, TieBreak::SniperFirst, TieBreak::Both, TieBreak::Random})
      CHECK(duel::parse_tie_break(duel::to_string(tie)) == tie);
    CHECK_THROWS_AS(duel::parse_tie_break("coin"), std::invalid_argument);
  }

  TEST_CASE("both hold well before the curve") {
    const auto& table = table3();
    const double T = table.T(3, 0.8);
    const auto g = duel::next_action({&table, Role::Gunner}, T - 0.1, 0.8, 3);
    const auto s = duel::next_action({&table, Role::Sniper}, T - 0.1, 0.8, 3);
    CHECK(g.kind == Action::Kind::Hold);
    CHECK(g.intensity == 0.0);
    CHECK(s.kind == Action::Kind::Hold);
    CHECK(s.moment == doctest::Approx(T));
  }

  TEST_CASE("on the curve the gunner spends at the inverse slope") {
    const auto& table = table3();
    const double x = 0.6;
    const double T = table.T(2, x);
    const auto g = duel::next_action({&table, Role::Gunner}, T, x, 2);
    CHECK(g.kind == Action::Kind::Spend);
    const double h = 1e-4;
    const double fd = (table.T(2, x + h) - table.T(2, x - h)) / (2 * h);
    CHECK(g.intensity > 0.0);
    CHECK(g.intensity == doctest::Approx(-1.0 / fd).epsilon(1e-4));
    CHECK(duel::next_action({&table, Role::Sniper}, T, x, 2).kind == Action::Kind::Fire);
  }

  TEST_CASE("terminal phase") {
    const auto& table = table3();
    CHECK(duel::next_action({&table, Role::Gunner}, 0.2, 0.5, 0).kind == Action::Kind::Burst);
    CHECK(duel::next_action({&table, Role::Sniper}, 0.2, 0.0, 2).kind == Action::Kind::Hold);
    CHECK(duel::next_action({&table, Role::Sniper}, 1.0, 0.0, 2).kind == Action::Kind::Fire);
  }

  TEST_CASE("near zero resource the sniper's moment comes from the table edge") {
    const auto& table = table3();
    const auto s = duel::next_action({&table, Role::Sniper}, 0.0, 1e-6, 1);
    CHECK(s.moment == doctest::Approx(table.T(1, 1e-6)));
    CHECK(s.moment <= 1.0);
  }

  TEST_CASE("being past the curve is a protocol violation") {
    const auto& table = table3();
    CHECK_THROWS_AS(duel::next_action({&table, Role::Gunner}, table.T(3, 1.0) + 0.1, 1.0, 3),
                    duel::ProtocolViolation);
  }

  TEST_CASE("T against T reaches the value with every tie-break") {
    const auto& table = table3();
    const auto params = game(3);
    for (auto tie : {TieBreak::GunnerFirst, TieBreak::SniperFirst, TieBreak::Both, TieBreak::Random}) {
      const auto r = duel::simulate(duel::TGunner(table), duel::TSniper(table, tie), params, 5);
      CHECK(duel::is_t_play(r.play, table));
      CHECK(std::abs(r.payoff - table.value(3)) <= 1e-4);
    }
  }

  TEST_CASE("simulation is deterministic in the seed") {
    const auto& table = table3();
    const auto a = duel::random_t_play(table, game(3), 42);
    const auto b = duel::random_t_play(table, game(3), 42);
    CHECK(a.payoff == b.payoff);
    CHECK(duel::to_json(a).dump() == duel::to_json(b).dump());
  }

  TEST_CASE("the gunner's response to shots at t = 1 is the second simplest play") {
    const auto& table = table3();
    const auto params = game(3);
    const duel::SniperSchedule late({1.0, 1.0, 1.0});
    const auto path = duel::gunner_response(late, table, params);
    const auto [first, second] = duel::simplest_t_plays(table, params);
    CHECK(duel::payoff({path, late}, params) == doctest::Approx(duel::payoff(second, params)).epsilon(1e-9));
    for (double t : {0.3, 0.5, 0.7, 0.9}) CHECK(path.alpha(t) == doctest::Approx(second.path.alpha(t)).epsilon(1e-6));
  }

  TEST_CASE("wasted shots leave the gunner a certain success") {
    const auto& table = table3();
    const auto params = game(3);
    const duel::ScriptedSniper sniper(duel::SniperSchedule({0.0, 0.0, 0.0}));
    const auto r = duel::simulate(duel::TGunner(table), sniper, params, 1);
    CHECK(r.payoff == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.payoff >= table.value(3));
  }

  TEST_CASE("dumping everything at once hands the sniper the game") {
    const auto& table = table3();
    const auto params = game(3);
    const duel::ScriptedGunner gunner(duel::ConsumptionPath({{0.0, 1.0}, {1e-3, 0.0}}, false));
    const auto r = duel::simulate(gunner, duel::TSniper(table), params, 1);
    CHECK(r.payoff < -0.99);
    CHECK(r.payoff <= table.value(3));
  }

  TEST_CASE("deviations do not pay") {
    const auto& table = table3();
    const auto params = game(3);
    const double v = table.value(3);
    const auto suite = duel::deviation_suite(params, table, 3, 14);
    CHECK(suite.snipers.size() == 14);
    CHECK(suite.gunners.size() == 14);
    for (const auto& d : suite.snipers) {
      const auto r = duel::simulate(duel::TGunner(table), duel::ScriptedSniper(d.schedule, d.label), params, 3);
      CHECK_MESSAGE(r.payoff >= v - 1e-4, d.label);
    }
    for (const auto& d : suite.gunners) {
      const auto r = duel::simulate(duel::ScriptedGunner(d.path, d.label), duel::TSniper(table), params, 3);
      CHECK_MESSAGE(r.payoff <= v + 1e-4, d.label);
    }
  }

  TEST_CASE("transcripts list events in time order") {
    const auto r = duel::random_t_play(table3(), game(3), 9);
    const auto j = duel::to_json(r);
    double last = 0.0;
    for (const auto& e : j.at("events")) {
      CHECK(e.at("t").get<double>() >= last);
      last = e.at("t").get<double>();
    }
    CHECK(j.at("seed").get<std::uint64_t>() == 9);
  }
}
