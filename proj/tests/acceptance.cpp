// Acceptance checks, one per criterion id. Prints a single PASS/FAIL line and
// exits nonzero on FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>

#include "duel/oracle.hpp"
#include "duel/payoff.hpp"
#include "duel/solver.hpp"
#include "duel/strategy.hpp"

using duel::AccuracyFunction;
using duel::DuelParameters;
using duel::SolverConfig;
using duel::TTable;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* pattern, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

DuelParameters game(const std::string& p1, const std::string& p2, double a, int m, double A1 = 1.0,
                    double A2 = 1.0) {
  DuelParameters p;
  p.p1 = AccuracyFunction::parse(p1);
  p.p2 = AccuracyFunction::parse(p2);
  p.a = a;
  p.m = m;
  p.A1 = A1;
  p.A2 = A2;
  return p;
}

// The residual sweep: P1 = t^c for c in {0.5, 1, 2}, P2 = t, a = 2, m = 5.
std::vector<TTable> sweep_tables() {
  std::vector<TTable> out;
  for (const char* c : {"power:0.5", "power:1", "power:2"})
    out.push_back(duel::solve_game(game(c, "power:1", 2.0, 5), SolverConfig{}));
  return out;
}

std::vector<double> check_grid(const TTable& t) {
  std::vector<double> xs;
  const double lo = t.grid().front(), hi = t.grid().back();
  for (int i = 0; i < 50; ++i) xs.push_back(lo + (hi - lo) * i / 49.0);
  return xs;
}

Outcome equilibrium_identity() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& t : sweep_tables())
    for (double x : check_grid(t))
      for (int k = 1; k <= t.m(); ++k) worst = std::max(worst, duel::equilibrium_residual(t, x, k));
  const double secs = seconds_since(start);
  return {worst <= 1e-5 && secs <= 60.0,
          fmt("max residual %.3g over 3 x 50 x 5 points (tol 1e-5), %.2f s (limit 60 s)", worst, secs)};
}

Outcome dual_value() {
  double worst = 0.0;
  for (const auto& t : sweep_tables())
    for (double x : check_grid(t))
      for (int k = 1; k <= t.m(); ++k) worst = std::max(worst, duel::value_forms(t, x, k).gap());
  return {worst <= 1e-6, fmt("max |product - exponential| %.3g (tol 1e-6)", worst)};
}

Outcome structure() {
  std::size_t violations = 0, points = 0;
  auto tables = sweep_tables();
  tables.push_back(duel::solve_game(game("power:1", "power:1", 1.0, 3), SolverConfig{}));
  tables.push_back(duel::solve_game(game("power:1", "power:2", 1.0, 3), SolverConfig{}));
  for (const auto& t : tables) {
    violations += duel::structural_violations(t).size();
    points += t.grid().size() * static_cast<std::size_t>(t.m());
  }
  return {violations == 0,
          fmt("%.0f violations over %.0f solved grid values in %.0f tables", double(violations),
              double(points), double(tables.size()))};
}

Outcome bracketing() {
  double min_bracket = 1.0, max_increase = 0.0, max_initial = 0.0;
  const double eps = SolverConfig{}.eps;
  for (const auto& t : sweep_tables()) {
    for (const auto& d : t.diagnostics()) {
      min_bracket = std::min(min_bracket, d.min_bracket);
      max_increase = std::max(max_increase, d.max_gap_increase);
      max_initial = std::max(max_initial, d.initial_gap);
    }
  }
  const bool brackets = min_bracket >= -1e-12;
  const bool shrinks = max_increase <= 1e-12;
  const bool initial = max_initial <= 10.0 * eps;
  auto verdict = [](bool ok) { return ok ? "holds" : "violated"; };
  return {brackets && shrinks && initial,
          std::string("bracketing ") + verdict(brackets) +
              fmt(" (min upper - lower %.3g); gap monotonicity ", min_bracket) + verdict(shrinks) +
              fmt(" (max increase %.3g); initial gap bound ", max_increase) + verdict(initial) +
              fmt(" (max initial gap %.3g vs 10*eps = %.3g)", max_initial, 10.0 * eps)};
}

const TTable& duel_table() {
  static const TTable t = duel::solve_game(game("power:1", "power:1", 1.0, 3), SolverConfig{});
  return t;
}

Outcome payoff_constancy() {
  const auto& t = duel_table();
  const double v = t.value(3);
  double worst = 0.0;
  int t_plays = 0;
  for (int i = 0; i < 100; ++i) {
    const auto r = duel::random_t_play(t, t.params(), 1000 + static_cast<std::uint64_t>(i));
    worst = std::max(worst, std::abs(r.payoff - v));
    t_plays += duel::is_t_play(r.play, t);
  }
  return {worst <= 1e-4 && t_plays == 100,
          fmt("100 random T-plays, %.0f qualify, max |K - v_3(1)| = %.3g (tol 1e-4)", t_plays, worst)};
}

Outcome deviations() {
  const auto start = std::chrono::steady_clock::now();
  const auto& t = duel_table();
  const auto& params = t.params();
  const double v = t.value(3);
  const auto suite = duel::deviation_suite(params, t, 7, 50);
  double sniper_min = 1e300, gunner_max = -1e300;
  for (const auto& d : suite.snipers) {
    const auto r = duel::simulate(duel::TGunner(t), duel::ScriptedSniper(d.schedule, d.label), params, 7);
    sniper_min = std::min(sniper_min, r.payoff - v);
  }
  for (const auto& d : suite.gunners) {
    const auto r = duel::simulate(duel::ScriptedGunner(d.path, d.label), duel::TSniper(t), params, 7);
    gunner_max = std::max(gunner_max, r.payoff - v);
  }
  const double secs = seconds_since(start);
  return {sniper_min >= -1e-4 && gunner_max <= 1e-4 && secs <= 120.0,
          fmt("min K - v over 50 sniper deviations %.3g, max K - v over 50 gunner deviations %.3g, "
              "%.2f s (limit 120 s)",
              sniper_min, gunner_max, secs)};
}

Outcome oracle_convergence() {
  const auto start = std::chrono::steady_clock::now();
  const auto params = game("power:1", "power:1", 1.0, 1);
  const double v = duel::solve_game(params, SolverConfig{}).value(1);
  const auto rows = duel::convergence_sweep(params, {250, 500, 1000, 2000}, v);
  bool shrinking = true;
  for (std::size_t i = 1; i < rows.size(); ++i) shrinking = shrinking && rows[i].gap < rows[i - 1].gap;
  const double rel = rows.back().gap / std::abs(v);
  const double secs = seconds_since(start);
  return {shrinking && rel <= 0.05 && secs <= 300.0,
          fmt("gaps %.3g -> %.3g, monotone, final relative gap %.3g (tol 0.05), %.2f s (limit 300 s)",
              rows.front().gap, rows.back().gap, rel, secs)};
}

Outcome trivial_anchors() {
  const double A1 = 1.5, A2 = 0.7;
  double worst = 0.0;
  for (double a : {0.3, 1.0, 2.0}) {
    const auto t = duel::solve_game(game("power:1", "power:1", a, 0, A1, A2), SolverConfig{});
    worst = std::max(worst, std::abs(t.value(0) - A1));
  }
  const auto t3 = duel::solve_game(game("power:2", "power:1", 1.0, 3, A1, A2), SolverConfig{});
  worst = std::max(worst, std::abs(duel::value_forms(t3, 0.6, 0).product - A1));
  for (int m : {1, 2, 4}) {
    const auto t = duel::solve_game(game("power:1", "power:1", 0.0, m, A1, A2), SolverConfig{});
    worst = std::max(worst, std::abs(t.value(m) + A2));
  }
  for (int k = 1; k <= 3; ++k) {
    const auto f = duel::value_forms(t3, 0.0, k);
    worst = std::max({worst, std::abs(f.product + A2), std::abs(f.exponential + A2)});
  }
  for (int m : {1, 3}) {
    const auto params = game("power:1", "power:1", 1.0, m, A1, A2);
    const duel::Play idle{duel::ConsumptionPath::hold(1.0, false),
                          duel::SniperSchedule(std::vector<double>(static_cast<std::size_t>(m), 1.0))};
    worst = std::max(worst, std::abs(duel::payoff(idle, params) + A2));
  }
  return {worst <= 1e-12, fmt("v_0 = A1 = %.3g, v_m(0) = -A2 = %.3g and the idle-gunner payoff hold with max error %.3g (tol 1e-12)",
              A1, -A2, worst)};
}

Outcome normalization_invariance() {
  struct Pair {
    const char *p1, *p2, *n1;
  };
  double value_gap = 0.0, curve_gap = 0.0;
  for (const Pair& pr : {Pair{"power:2", "power:2", "power:1"}, Pair{"power:1", "power:2", "power:0.5"}}) {
    const auto direct = duel::solve_game(game(pr.p1, pr.p2, 1.0, 3), SolverConfig{});
    const auto normal = duel::solve_game(game(pr.n1, "power:1", 1.0, 3), SolverConfig{});
    const auto back = AccuracyFunction::parse(pr.p2);
    for (int k = 0; k <= 3; ++k) value_gap = std::max(value_gap, std::abs(direct.value(k) - normal.value(k)));
    for (int k = 1; k <= 3; ++k)
      for (std::size_t i = 0; i < direct.grid().size(); ++i)
        curve_gap = std::max(curve_gap, std::abs(direct.curve(k)[i] - back.inverse(normal.curve(k)[i])));
  }
  return {value_gap <= 1e-6 && curve_gap <= 1e-5,
          fmt("max value difference %.3g (tol 1e-6), max curve difference %.3g (tol 1e-5)", value_gap,
              curve_gap)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria{
      {1, {"equilibrium identity", equilibrium_identity}},
      {2, {"dual value agreement", dual_value}},
      {3, {"structural invariants", structure}},
      {4, {"bracketing and gap shrink", bracketing}},
      {5, {"payoff constancy over T-plays", payoff_constancy}},
      {6, {"deviation inequalities", deviations}},
      {7, {"oracle convergence", oracle_convergence}},
      {8, {"trivial anchors", trivial_anchors}},
      {9, {"normalization invariance", normalization_invariance}},
  };
  std::vector<int> ids;
  if (argc < 2 || std::string(argv[1]) == "all") {
    for (const auto& [id, c] : criteria) ids.push_back(id);
  } else {
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  }
  int failed = 0;
  for (int id : ids) {
    const auto it = criteria.find(id);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    Outcome out;
    try {
      out = it->second.second();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s criterion %d (%s): %s\n", out.passed ? "PASS" : "FAIL", id, it->second.first,
                out.detail.c_str());
    std::fflush(stdout);
    failed += !out.passed;
  }
  return failed == 0 ? 0 : 1;
}
