#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "duel/accuracy.hpp"
#include "duel/interpolation.hpp"

namespace duel {

class SolverError : public std::runtime_error {
 public:
  SolverError(int level, const std::string& what)
      : std::runtime_error("level " + std::to_string(level) + ": " + what), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

struct SolverConfig {
  double a0 = 0.05;
  double a = 0.0;  // 0 means "use the game's resource a"
  double h = 0.01;
  double u0 = 1.0 - 1e-3;
  double eps = 1e-6;
  double ode_tol = 1e-9;
  double root_tol = 1e-12;
  int max_delta_halvings = 20;
  // Upper bound on the error that the unresolved strip near u = 1 may
  // contribute to a log-survival integral; larger values trigger halving.
  double boundary_tol = 1e-7;

  // Throws std::invalid_argument; `game_a` resolves a = 0.
  void validate(double game_a) const;
  double resolved_a(double game_a) const { return a > 0.0 ? a : game_a; }
};

// a0, a0 + h, ..., with the end point a appended when it is off the lattice.
std::vector<double> make_grid(const SolverConfig& config, double a);

// Resource spent by the gunner's first curve as a function of its moment:
// x(t) = -int_t^1 dtau / (tau ln(1 - P1(tau))) for a normalized game.
double x_of_t1(double t, const AccuracyFunction& P1);
std::vector<double> tabulate_t1(const SolverConfig& config, const AccuracyFunction& P1,
                                double game_a);

// Right-hand side of the k-th curve equation, k = ts.size() + 1, in original time.
double rhs_phi_k(const std::vector<double>& ts, double t, const AccuracyFunction& P1,
                 const AccuracyFunction& P2 = AccuracyFunction());
// Numerator F_k(t) of the k-th curve equation.
double numerator_fk(const std::vector<double>& ts, double t, const AccuracyFunction& P1,
                    const AccuracyFunction& P2 = AccuracyFunction());
// Root of F_k(., x) on (0, T_{k-1}(x)).
double implicit_boundary_fk(const std::vector<double>& ts, const AccuracyFunction& P1,
                            const AccuracyFunction& P2 = AccuracyFunction(),
                            double root_tol = 1e-12);

// Bijection between the first curve's moment u = T1(x) and the resource x of
// a normalized game, tabulated once and refined by local quadrature.
class ResourceClock {
 public:
  ResourceClock(AccuracyFunction p1, double u_lo);

  double weight(double u) const;  // -dx/du
  double x_of(double u) const;
  double u_of(double x) const;
  double u_lo() const { return u_lo_; }

 private:
  double integral(double lo, double hi) const;

  AccuracyFunction p1_;
  double u_lo_;
  std::vector<double> u_;  // ascending
  std::vector<double> x_;  // x at u_, descending
};

// A normalized curve S_k(u) = T_k(T1^{-1}(u)) on [u_lo, 1].
class LevelCurve {
 public:
  LevelCurve() = default;  // identity, the first curve
  LevelCurve(CubicHermite body, double u_start);

  double operator()(double u) const;
  double derivative(double u) const;
  bool identity() const { return body_.empty(); }
  double u_start() const { return u_start_; }

 private:
  CubicHermite body_;
  double u_start_ = 1.0;
  double s_start_ = 1.0;
};

struct GapSample {
  double u, upper, lower;
};

struct LevelDiagnostics {
  int k = 0;
  double delta = 0.0;
  double u0 = 0.0;
  double u_star = 0.0;
  double u_cover = 0.0;  // u at the first grid point; u_star must reach it
  double initial_gap = 0.0;
  double max_gap_increase = 0.0;
  double min_bracket = 0.0;  // min of upper - lower along the integration
  double boundary_bound = 0.0;
  int halvings = 0;
  long steps = 0;
  std::vector<GapSample> trace;
};

struct LevelSolution {
  LevelCurve curve;
  LevelDiagnostics diagnostics;
};

// Integrates the upper and lower solutions of level k from u0 down to u_lo.
// `lower_levels` holds S_1..S_{k-1}.
LevelSolution integrate_level_k(int k, const std::vector<LevelCurve>& lower_levels,
                                const ResourceClock& clock, const AccuracyFunction& p1,
                                const SolverConfig& config, double u0, double u_cover);

class TTable {
 public:
  const DuelParameters& params() const { return params_; }
  const SolverConfig& config() const { return config_; }
  int m() const { return params_.m; }
  double a() const { return a_; }
  const std::vector<double>& grid() const { return grid_; }
  // Values of T_k on the grid in original time, k = 1..m.
  const std::vector<double>& curve(int k) const { return curves_.at(k - 1); }
  // v_k(a) in product form, k = 0..m.
  double value(int k) const { return values_.at(k); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<LevelDiagnostics>& diagnostics() const { return diagnostics_; }
  double curve_tolerance() const { return curve_tolerance_; }
  double delta() const { return delta_; }
  // Ascending resource levels at which tracking paths are sampled: the grid
  // refined eight times plus a geometric run from a0 towards 0.
  const std::vector<double>& lattice() const { return lattice_; }
  // Below this resource level the bracket of some curve has not closed, so
  // the curves there are only bracket midpoints.
  double resolved_from() const { return resolved_from_; }
  // Moments T_k at the lattice levels.
  std::vector<double> lattice_moments(int k) const;

  // Continuous view on 0 <= x <= a.
  double T(int k, double x) const;
  double dT(int k, double x) const;
  // x with T_k(x) = t; 0 for t >= 1 and a for t <= T_k(a).
  double inverse(int k, double t) const;
  // int_0^x ln(1 - P1(T_k(alpha))) d alpha.
  double log_survival(int k, double x) const;
  // 1 - P2(T_k(x)).
  double sniper_miss(int k, double x) const;

  // Copy whose k-th curve is shifted by `offset` (clamped into (0, 1]).
  TTable perturbed(int k, double offset) const;

 private:
  friend TTable solve_game(const DuelParameters&, const SolverConfig&);
  struct Model;

  DuelParameters params_;
  SolverConfig config_;
  double a_ = 0.0;
  std::vector<double> grid_;
  std::vector<double> lattice_;
  std::vector<std::vector<double>> lattice_t_;
  std::vector<std::vector<double>> curves_;
  std::vector<double> values_;
  std::vector<LevelDiagnostics> diagnostics_;
  std::vector<double> offsets_;
  double curve_tolerance_ = 1e-9;
  double delta_ = 0.0;
  double resolved_from_ = 0.0;
  std::shared_ptr<const Model> model_;
};

TTable solve_game(const DuelParameters& params, const SolverConfig& config);

// Grid points violating 0 < T_m < ... < T_1 <= 1 or strict decrease in x.
std::vector<std::string> structural_violations(const TTable& table);

struct ValueForms {
  double product = 0.0;
  double exponential = 0.0;
  double gap() const;
};

// v_k(x) for 0 <= x <= table.a(), both closed forms.
ValueForms value_forms(const TTable& table, double x, int k);
// Product form; throws SolverError when the two forms differ by more than `tol`.
double game_value(const TTable& table, double x, int k, double tol = 1e-6);

// |exp(int_0^x ln p(T_k)) + prod_{i<=k} q(T_i(x)) - 1|.
double equilibrium_residual(const TTable& table, double x, int k);

}  // namespace duel
