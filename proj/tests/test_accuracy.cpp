#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "duel/accuracy.hpp"

using duel::AccuracyFunction;

TEST_SUITE("accuracy") {
  TEST_CASE("identity complements") {
    const AccuracyFunction P;
    CHECK(duel::eval_p(P, 0.0) == 1.0);
    CHECK(duel::eval_p(P, 0.5) == 0.5);
    CHECK(P.is_identity());
  }

  TEST_CASE("log complement of t^2") {
    const auto P = AccuracyFunction::power(2.0);
    CHECK(duel::eval_log_p(P, 0.5) == doctest::Approx(std::log(0.75)).epsilon(1e-15));
    CHECK(duel::eval_log_p(P, 0.5) == doctest::Approx(-0.287682).epsilon(1e-6));
  }

  TEST_CASE("log complement is clamped at t = 1") {
    const AccuracyFunction P;
    const double at_one = duel::eval_log_p(P, 1.0);
    CHECK(std::isfinite(at_one));
    CHECK(at_one == doctest::Approx(std::log(duel::kClip)).epsilon(1e-5));
  }

  TEST_CASE("evaluation outside [0, 1] is rejected") {
    const AccuracyFunction P;
    CHECK_THROWS_AS(duel::eval_p(P, -0.1), std::domain_error);
    CHECK_THROWS_AS(duel::eval_q(P, 1.1), std::domain_error);
    CHECK_THROWS_AS(duel::eval_log_p(P, 2.0), std::domain_error);
  }

  TEST_CASE("power family") {
    const auto P = AccuracyFunction::power(0.5);
    CHECK(P(0.25) == doctest::Approx(0.5));
    CHECK(P.derivative(0.25) == doctest::Approx(1.0));
    CHECK(P.inverse(0.5) == doctest::Approx(0.25));
    CHECK(P.complement(1e-20) == doctest::Approx(1.0 - 1e-10).epsilon(1e-15));
    CHECK(P.spec() == "power:0.5");
    CHECK(AccuracyFunction::parse(P.spec()).spec() == P.spec());
  }

  TEST_CASE("spec grammar is strict") {
    CHECK_THROWS_AS(AccuracyFunction::parse("power"), std::invalid_argument);
    CHECK_THROWS_AS(AccuracyFunction::parse("power:"), std::invalid_argument);
    CHECK_THROWS_AS(AccuracyFunction::parse("power:2x"), std::invalid_argument);
    CHECK_THROWS_AS(AccuracyFunction::parse("power:0"), std::invalid_argument);
    CHECK_THROWS_AS(AccuracyFunction::parse("linear:1"), std::invalid_argument);
    CHECK_THROWS_AS(AccuracyFunction::parse("csv:/nonexistent/table.csv"), std::invalid_argument);
  }

  TEST_CASE("tabulated curve from csv") {
    const auto path = std::filesystem::temp_directory_path() / "duel_accuracy_test.csv";
    {
      std::ofstream out(path);
      out << "t,P\n# sampled from t^2\n";
      for (int i = 0; i <= 40; ++i) {
        const double t = i / 40.0;
        out << t << "," << t * t << "\n";
      }
    }
    const auto P = AccuracyFunction::parse("csv:" + path.string());
    CHECK(P.kind() == AccuracyFunction::Kind::Tabulated);
    CHECK(P(0.0) == 0.0);
    CHECK(P(1.0) == 1.0);
    CHECK(P(0.33) == doctest::Approx(0.33 * 0.33).epsilon(1e-3));
    CHECK(P.inverse(P(0.61)) == doctest::Approx(0.61).epsilon(1e-10));
    CHECK(P.strictly_increasing());
    std::filesystem::remove(path);
  }

  TEST_CASE("tabulated curve must run from (0, 0) to (1, 1)") {
    CHECK_THROWS_AS(AccuracyFunction::tabulated({0.0, 0.5, 1.0}, {0.1, 0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(AccuracyFunction::tabulated({0.0, 0.5, 1.0}, {0.0, 0.6, 0.5}), std::invalid_argument);
  }

  TEST_CASE("parameters are validated") {
    duel::DuelParameters p;
    CHECK_NOTHROW(p.validate());
    p.a = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.a = 1.0;
    p.m = -1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.m = 1;
    p.A2 = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  }

  TEST_CASE("normalizing an identity sniper changes nothing") {
    duel::DuelParameters p;
    p.p1 = AccuracyFunction::power(3.0);
    const auto game = duel::normalize_p2(p);
    CHECK(game.params.p2.is_identity());
    for (double t : {0.1, 0.4, 0.9}) {
      CHECK(game.params.p1(t) == doctest::Approx(std::pow(t, 3.0)).epsilon(1e-15));
      CHECK(game.back(t) == t);
    }
  }

  TEST_CASE("normalizing a t^2 sniper") {
    duel::DuelParameters p;
    p.p2 = AccuracyFunction::power(2.0);
    const auto game = duel::normalize_p2(p);
    for (double tau : {0.04, 0.25, 0.81}) {
      CHECK(game.params.p1(tau) == doctest::Approx(std::sqrt(tau)).epsilon(1e-12));
      CHECK(game.back(tau) == doctest::Approx(std::sqrt(tau)).epsilon(1e-12));
      CHECK(game.params.p2(tau) == doctest::Approx(tau));
    }
  }
}
