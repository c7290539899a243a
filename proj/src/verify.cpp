#include "duel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "duel/interpolation.hpp"
#include "duel/payoff.hpp"
#include "duel/quadrature.hpp"
#include "duel/strategy.hpp"

namespace duel {
namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// Indices of up to `count` evenly spread grid points.
std::vector<std::size_t> check_points(std::size_t n, int count) {
  std::vector<std::size_t> out;
  if (n == 0) return out;
  const std::size_t want = std::min<std::size_t>(n, static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < want; ++i)
    out.push_back(want == 1 ? n - 1 : i * (n - 1) / (want - 1));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double file_curve_residual(const TableFile& file, const TTable& table, double x, int k) {
  const auto& grid = file.grid;
  const AccuracyFunction& p1 = file.params.p1;
  double log_surv = table.log_survival(k, grid.front());
  if (x > grid.front()) {
    const auto& values = file.curves.at(static_cast<std::size_t>(k - 1));
    const CubicHermite curve = grid.size() > 1 ? monotone_cubic(grid, values)
                                               : CubicHermite(grid, values, {0.0});
    auto integrand = [&](double alpha) {
      return eval_log_p(p1, std::clamp(curve(alpha), 0.0, 1.0));
    };
    log_surv += integrate(integrand, grid.front(), x, {1e-12, 1e-12, 4000}).value;
  }
  const auto i = static_cast<std::size_t>(
      std::lower_bound(grid.begin(), grid.end(), x - 1e-12) - grid.begin());
  double product = 1.0;
  for (int j = 1; j <= k; ++j) {
    const double t = std::clamp(file.curves[static_cast<std::size_t>(j - 1)].at(i), 0.0, 1.0);
    product *= eval_q(file.params.p2, t);
  }
  return std::abs(std::exp(log_surv) + product - 1.0);
}

std::vector<CheckResult> verify_table(const TableFile& file, const VerifyOptions& options) {
  std::vector<CheckResult> out;
  const TTable table = solve_game(file.params, file.config);
  const int m = table.m();

  {
    double worst = 0.0;
    bool shape = file.grid.size() == table.grid().size() && static_cast<int>(file.curves.size()) == m;
    for (std::size_t i = 0; shape && i < file.grid.size(); ++i) {
      worst = std::max(worst, std::abs(file.grid[i] - table.grid()[i]));
      for (int k = 1; k <= m; ++k)
        worst = std::max(worst, std::abs(file.curves[static_cast<std::size_t>(k - 1)][i] -
                                         table.curve(k)[i]));
    }
    out.push_back({"file-matches-solution", shape && worst <= options.file_tol,
                   shape ? fmt("max |file - solved| = %.3g", worst) : "grid or level count differs"});
  }

  if (m == 0 || table.grid().empty()) {
    const double expected = m == 0 ? (file.params.a > 0.0 ? file.params.A1 : 0.0) : -file.params.A2;
    const double got = table.value(m);
    out.push_back({"trivial-value", std::abs(got - expected) <= 1e-12,
                   fmt("v = %.12g, expected %.12g", got, expected)});
    return out;
  }

  {
    double worst = 0.0, at_x = 0.0;
    int at_k = 0;
    for (std::size_t i : check_points(file.grid.size(), 50)) {
      for (int k = 1; k <= m; ++k) {
        const double r = file_curve_residual(file, table, file.grid[i], k);
        if (!(r <= worst)) worst = r, at_x = file.grid[i], at_k = k;
      }
    }
    out.push_back({"equilibrium-residual", worst <= options.residual_tol,
                   fmt("max residual %.3g at x=%.6g, k=%.0f", worst, at_x, at_k)});
  }

  {
    double worst = 0.0;
    for (int k = 1; k <= m; ++k) worst = std::max(worst, value_forms(table, table.a(), k).gap());
    out.push_back({"dual-value", worst <= options.value_tol, fmt("max form gap %.3g", worst)});
  }

  {
    int violations = 0;
    for (std::size_t i = 0; i < file.grid.size(); ++i) {
      double above = 1.0;
      for (int k = 1; k <= m; ++k) {
        const double t = file.curves[static_cast<std::size_t>(k - 1)][i];
        const bool ordered = k == 1 ? (t <= above) : (t < above);
        if (!(t > 0.0) || !ordered) ++violations;
        if (i > 0 && !(t < file.curves[static_cast<std::size_t>(k - 1)][i - 1])) ++violations;
        above = t;
      }
    }
    out.push_back({"structure", violations == 0, fmt("%.0f violations", violations)});
  }

  {
    double min_bracket = 1.0, max_increase = 0.0;
    bool covered = true;
    for (const auto& d : table.diagnostics()) {
      min_bracket = std::min(min_bracket, d.min_bracket);
      max_increase = std::max(max_increase, d.max_gap_increase);
      covered = covered && d.u_star >= d.u_cover;
    }
    const bool ok = min_bracket >= -1e-12 && max_increase <= 1e-12 && covered;
    out.push_back({"bracketing", ok,
                   fmt("min bracket %.3g, max gap increase %.3g, delta %.3g", min_bracket,
                       max_increase, table.delta())});
  }

  const double v = table.value(m);
  const DuelParameters& params = table.params();
  if (std::abs(table.a() - params.a) > 1e-12 * std::max(1.0, params.a)) {
    out.push_back({"plays", true, "skipped: table does not reach the game's resource"});
    return out;
  }

  {
    const auto [first, second] = simplest_t_plays(table, params);
    const double k1 = payoff(first, params), k2 = payoff(second, params);
    const bool ok = std::abs(k1 - v) <= options.play_tol && std::abs(k2 - v) <= options.play_tol &&
                    is_t_play(first, table) && is_t_play(second, table);
    out.push_back({"simplest-t-plays", ok, fmt("K - v = %.3g, %.3g", k1 - v, k2 - v)});
  }

  {
    double worst = 0.0;
    for (int i = 0; i < options.random_plays; ++i) {
      const auto result = random_t_play(table, params, options.seed + static_cast<std::uint64_t>(i));
      worst = std::max(worst, std::abs(result.payoff - v));
    }
    out.push_back({"random-t-plays", worst <= options.play_tol,
                   fmt("%.0f plays, max |K - v| = %.3g", options.random_plays, worst)});
  }

  {
    const auto suite = deviation_suite(params, table, options.seed, options.deviations);
    double sniper_worst = 1e300, gunner_worst = -1e300;
    for (const auto& dev : suite.snipers) {
      Play play{gunner_response(dev.schedule, table, params), dev.schedule};
      sniper_worst = std::min(sniper_worst, payoff(play, params) - v);
    }
    for (const auto& dev : suite.gunners) {
      const ScriptedGunner gunner(dev.path, dev.label);
      const TSniper sniper(table);
      gunner_worst = std::max(gunner_worst, simulate(gunner, sniper, params, options.seed).payoff - v);
    }
    const bool ok = sniper_worst >= -options.play_tol && gunner_worst <= options.play_tol;
    out.push_back({"deviations", ok,
                   fmt("min K - v over sniper deviations %.3g, max over gunner deviations %.3g",
                       sniper_worst, gunner_worst)});
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace duel
