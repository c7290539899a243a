#include "duel/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "duel/ode.hpp"
#include "duel/quadrature.hpp"
#include "duel/roots.hpp"

namespace duel {
namespace {

double log_miss(const AccuracyFunction& p1, double t) {
  return std::log(p1.complement(std::clamp(t, 0.0, 1.0 - kClip)));
}

// F_k for a normalized game (q(t) = 1 - t).
double normalized_fk(double t, double pi, double log_p_prev, const AccuracyFunction& p1) {
  const double q = 1.0 - t;
  return (1.0 - pi * q) * log_miss(p1, t) - (1.0 - pi) * q * log_p_prev;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

}  // namespace

void SolverConfig::validate(double game_a) const {
  const double end = resolved_a(game_a);
  if (!(a0 > 0.0)) throw std::invalid_argument("a0 must be > 0");
  if (!(a0 < end)) throw std::invalid_argument(fmt("need a0 < a (a0=%g, a=%g)", a0, end));
  if (!(h > 0.0) || h > end - a0 + 1e-12)
    throw std::invalid_argument(fmt("need 0 < h <= a - a0 (h=%g)", h));
  if (!(u0 > 0.0 && u0 < 1.0)) throw std::invalid_argument("u0 must lie in (0, 1)");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (!(ode_tol > 0.0)) throw std::invalid_argument("ode_tol must be > 0");
  if (!(root_tol > 0.0)) throw std::invalid_argument("root_tol must be > 0");
  if (max_delta_halvings < 0) throw std::invalid_argument("max_delta_halvings must be >= 0");
  if (!(boundary_tol > 0.0)) throw std::invalid_argument("boundary_tol must be > 0");
}

std::vector<double> make_grid(const SolverConfig& config, double a) {
  const long count = static_cast<long>(std::floor((a - config.a0) / config.h + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count) + 1);
  for (long i = 0; i < count; ++i) grid.push_back(config.a0 + static_cast<double>(i) * config.h);
  if (a - grid.back() > 1e-9 * std::max(1.0, a))
    grid.push_back(a);
  else
    grid.back() = a;
  return grid;
}

double x_of_t1(double t, const AccuracyFunction& P1) {
  if (!(t > 0.0 && t <= 1.0))
    throw std::domain_error(fmt("x_of_t1: t=%g outside (0, 1]", t));
  if (t == 1.0) return 0.0;
  auto w = [&](double tau) { return -1.0 / (tau * log_miss(P1, tau)); };
  return integrate(w, t, 1.0, {1e-14, 1e-14, 20000}).value;
}

std::vector<double> tabulate_t1(const SolverConfig& config, const AccuracyFunction& P1,
                                double game_a) {
  const auto grid = make_grid(config, config.resolved_a(game_a));
  std::vector<double> out;
  out.reserve(grid.size());
  double hi = 1.0;
  for (double x : grid) {
    double lo = hi;
    do {
      lo *= 0.5;
      if (lo < 1e-300) throw BracketError(fmt("tabulate_t1: no root for x=%g", x));
    } while (x_of_t1(lo, P1) < x);
    const double t = newton_bracketed(
        [&](double u) { return x_of_t1(u, P1) - x; },
        [&](double u) { return 1.0 / (u * log_miss(P1, u)); }, lo, hi, 0.5 * (lo + hi),
        config.root_tol * 1e-3);
    out.push_back(t);
    hi = t;
  }
  return out;
}

double numerator_fk(const std::vector<double>& ts, double t, const AccuracyFunction& P1,
                    const AccuracyFunction& P2) {
  double pi = 1.0;
  for (double ti : ts) pi *= P2.complement(ti);
  const double q = P2.complement(t);
  const double prev = ts.empty() ? 0.0 : (1.0 - pi) * q * log_miss(P1, ts.back());
  return (1.0 - pi * q) * log_miss(P1, t) - prev;
}

double rhs_phi_k(const std::vector<double>& ts, double t, const AccuracyFunction& P1,
                 const AccuracyFunction& P2) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error(fmt("rhs_phi_k: t=%g outside (0, 1)", t));
  double pi = 1.0;
  for (double ti : ts) pi *= P2.complement(ti);
  const double dq = -P2.derivative(t);
  return -numerator_fk(ts, t, P1, P2) / (dq * pi);
}

double implicit_boundary_fk(const std::vector<double>& ts, const AccuracyFunction& P1,
                            const AccuracyFunction& P2, double root_tol) {
  if (ts.empty()) throw std::invalid_argument("implicit_boundary_fk needs k >= 2");
  const double hi = ts.back();
  const double lo = kClip;
  const double f_hi = numerator_fk(ts, hi, P1, P2);
  const double f_lo = numerator_fk(ts, lo, P1, P2);
  if (!(f_hi < 0.0))
    throw BracketError(fmt("F_k(T_{k-1}=%.17g) = %g is not negative", hi, f_hi));
  if (!(f_lo > 0.0)) throw BracketError(fmt("F_k(%g) = %g is not positive", lo, f_lo));
  return bisect([&](double t) { return numerator_fk(ts, t, P1, P2); }, lo, hi, root_tol);
}

// ---------------------------------------------------------------------------

ResourceClock::ResourceClock(AccuracyFunction p1, double u_lo) : p1_(std::move(p1)), u_lo_(u_lo) {
  if (!(u_lo > 0.0 && u_lo < 1.0)) throw std::invalid_argument("ResourceClock: u_lo outside (0, 1)");
  // Uniform in u away from 1, geometric in 1 - u near it.
  constexpr double kSwitch = 1e-3;
  u_.push_back(u_lo);
  if (1.0 - u_lo > kSwitch) {
    const double span = (1.0 - kSwitch) - u_lo;
    const int n = std::max(1, static_cast<int>(std::ceil(span / 1e-3)));
    for (int i = 1; i <= n; ++i) u_.push_back(u_lo + span * i / n);
  }
  for (double d = std::min(kSwitch, 1.0 - u_lo) * 0.97; d > 1e-14; d *= 0.97) u_.push_back(1.0 - d);
  u_.push_back(1.0);
  x_.assign(u_.size(), 0.0);
  for (std::size_t j = u_.size() - 1; j-- > 0;) x_[j] = x_[j + 1] + integral(u_[j], u_[j + 1]);
}

double ResourceClock::weight(double u) const { return -1.0 / (u * log_miss(p1_, u)); }

double ResourceClock::integral(double lo, double hi) const {
  return integrate([this](double u) { return weight(u); }, lo, hi, {1e-16, 1e-14, 2000}).value;
}

double ResourceClock::x_of(double u) const {
  if (u >= 1.0) return 0.0;
  if (u <= u_.front()) return x_.front() + integral(u, u_.front());
  auto it = std::upper_bound(u_.begin(), u_.end(), u);
  const std::size_t j = static_cast<std::size_t>(it - u_.begin());  // u_[j-1] <= u < u_[j]
  if (u - u_[j - 1] < u_[j] - u) return x_[j - 1] - integral(u_[j - 1], u);
  return x_[j] + integral(u, u_[j]);
}

double ResourceClock::u_of(double x) const {
  if (x <= 0.0) return 1.0;
  double lo, hi;
  if (x >= x_.front()) {
    hi = u_.front();
    lo = hi;
    do {
      lo *= 0.5;
      if (lo < 1e-300) throw BracketError(fmt("ResourceClock: no moment for x=%g", x));
    } while (x_of(lo) < x);
  } else {
    // x_ is descending; find x_[j] >= x > x_[j+1].
    std::size_t a = 0, b = x_.size() - 1;
    while (b - a > 1) {
      const std::size_t mid = (a + b) / 2;
      (x_[mid] >= x ? a : b) = mid;
    }
    lo = u_[a];
    hi = u_[b];
    if (x_[a] == x) return lo;
  }
  return newton_bracketed([&](double u) { return x_of(u) - x; },
                          [&](double u) { return -weight(u); }, lo, hi, 0.5 * (lo + hi),
                          1e-16);
}

// ---------------------------------------------------------------------------

LevelCurve::LevelCurve(CubicHermite body, double u_start)
    : body_(std::move(body)), u_start_(u_start) {
  s_start_ = body_(u_start_);
}

double LevelCurve::operator()(double u) const {
  if (identity()) return u;
  if (u >= u_start_) return s_start_ + (1.0 - s_start_) * (u - u_start_) / (1.0 - u_start_);
  return body_(u);
}

double LevelCurve::derivative(double u) const {
  if (identity()) return 1.0;
  if (u >= u_start_) return (1.0 - s_start_) / (1.0 - u_start_);
  return body_.derivative(u);
}

LevelSolution integrate_level_k(int k, const std::vector<LevelCurve>& lower_levels,
                                const ResourceClock& clock, const AccuracyFunction& p1,
                                const SolverConfig& config, double u0, double u_cover) {
  if (k < 2 || static_cast<int>(lower_levels.size()) != k - 1)
    throw std::invalid_argument("integrate_level_k: need curves 1..k-1");
  const double u_lo = clock.u_lo();
  if (!(u0 > u_lo)) throw SolverError(k, fmt("start u0=%.17g is below u_lo=%.17g", u0, u_lo));

  struct Frame {
    double pi, log_p_prev, denom;
  };
  auto frame = [&](double u) {
    double pi = 1.0;
    for (const auto& s : lower_levels) pi *= 1.0 - s(u);
    const double prev = lower_levels.back()(u);
    return Frame{pi, log_miss(p1, prev), pi * u * log_miss(p1, u)};
  };

  const Frame start = frame(u0);
  const double upper0 = lower_levels.back()(u0);
  const double lower0 = [&] {
    auto f = [&](double t) { return normalized_fk(t, start.pi, start.log_p_prev, p1); };
    const double f_hi = f(upper0), f_lo = f(kClip);
    if (!(f_hi < 0.0))
      throw SolverError(k, fmt("F_k at the upper bracket end %.17g is %g, expected < 0", upper0, f_hi));
    if (!(f_lo > 0.0))
      throw SolverError(k, fmt("F_k at the lower bracket end is %g, expected > 0", f_lo));
    return bisect(f, kClip, upper0, config.root_tol);
  }();

  auto rhs = [&](double u, const std::array<double, 2>& s) {
    const Frame fr = frame(u);
    return std::array<double, 2>{
        normalized_fk(s[0], fr.pi, fr.log_p_prev, p1) / fr.denom,
        normalized_fk(s[1], fr.pi, fr.log_p_prev, p1) / fr.denom};
  };
  auto admissible = [](double, const std::array<double, 2>& s) {
    return s[0] < 1.0 && s[1] > 0.0 && s[1] <= s[0] + 1e-12;
  };

  OdeOptions opt;
  opt.abs_tol = config.ode_tol;
  opt.rel_tol = config.ode_tol;
  opt.h_init = 1e-3 * (1.0 - u0);
  opt.h_max = 5e-3;
  opt.h_min = 1e-18;
  OdeStats stats;
  std::vector<OdeNode<2>> nodes;
  try {
    nodes = dormand_prince<2>(rhs, u0, {upper0, lower0}, u_lo, opt, admissible, &stats);
  } catch (const OdeError& e) {
    throw SolverError(k, std::string("bracket integration failed: ") + e.what());
  }

  LevelDiagnostics d;
  d.k = k;
  d.delta = 1.0 - u0;
  d.u0 = u0;
  d.u_cover = u_cover;
  d.initial_gap = upper0 - lower0;
  d.min_bracket = d.initial_gap;
  d.u_star = -1.0;
  d.steps = stats.accepted;
  const std::size_t stride = std::max<std::size_t>(1, nodes.size() / 100);
  double previous_gap = d.initial_gap;
  double bound = -std::log(u0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    const double gap = n.y[0] - n.y[1];
    d.max_gap_increase = std::max(d.max_gap_increase, gap - previous_gap);
    d.min_bracket = std::min(d.min_bracket, gap);
    if (d.u_star < 0.0 && gap < config.eps) d.u_star = n.t;
    if (i > 0) {
      const auto& p = nodes[i - 1];
      auto spread = [&](const OdeNode<2>& q) {
        return 0.5 * clock.weight(q.t) * std::abs(log_miss(p1, q.y[0]) - log_miss(p1, q.y[1]));
      };
      bound += 0.5 * (p.t - n.t) * (spread(p) + spread(n));
    }
    if (i % stride == 0 || i + 1 == nodes.size()) d.trace.push_back({n.t, n.y[0], n.y[1]});
    previous_gap = gap;
  }
  d.boundary_bound = bound;

  std::vector<double> u, s, ds;
  u.reserve(nodes.size());
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    u.push_back(it->t);
    s.push_back(0.5 * (it->y[0] + it->y[1]));
    ds.push_back(0.5 * (it->dy[0] + it->dy[1]));
  }
  return {LevelCurve(CubicHermite(std::move(u), std::move(s), std::move(ds)), u0), std::move(d)};
}

// ---------------------------------------------------------------------------

struct TTable::Model {
  NormalizedGame game;
  ResourceClock clock;
  std::vector<LevelCurve> levels;
};

namespace {

void require_level(const TTable& t, int k) {
  if (k < 1 || k > t.m()) throw std::out_of_range("curve index " + std::to_string(k) + " outside 1..m");
}

}  // namespace

double TTable::T(int k, double x) const {
  require_level(*this, k);
  if (!model_ || x <= 0.0) return 1.0;
  const double u = model_->clock.u_of(std::min(x, a_));
  const double t = model_->game.back(model_->levels[k - 1](u));
  return std::clamp(t + offsets_[k - 1], 1e-300, 1.0);
}

double TTable::dT(int k, double x) const {
  require_level(*this, k);
  if (!model_) return 0.0;
  const double u = model_->clock.u_of(std::clamp(x, 0.0, a_));
  if (u >= 1.0) return -HUGE_VAL;
  const auto& level = model_->levels[k - 1];
  return model_->game.back_derivative(level(u)) * level.derivative(u) / -model_->clock.weight(u);
}

double TTable::inverse(int k, double t) const {
  require_level(*this, k);
  if (!model_ || t >= 1.0) return 0.0;
  if (t <= T(k, a_)) return a_;
  const auto& level = model_->levels[k - 1];
  const double target = t - offsets_[k - 1];
  const auto& p2 = model_->game.original_p2;
  // Solve back(S_k(u)) = target in u, where S_k increases with u.
  const double s_target = p2.is_identity() ? target : p2(std::clamp(target, 0.0, 1.0));
  const double u_lo = model_->clock.u_of(a_);
  const double u = bisect([&](double v) { return level(v) - s_target; }, u_lo, 1.0, 1e-16);
  return std::clamp(model_->clock.x_of(u), 0.0, a_);
}

double TTable::log_survival(int k, double x) const {
  require_level(*this, k);
  if (!model_ || x <= 0.0) return 0.0;
  const auto& level = model_->levels[k - 1];
  const auto& clock = model_->clock;
  const double off = offsets_[k - 1];
  const auto& p1n = model_->game.params.p1;
  auto integrand = [&](double u) {
    const double s = level(u);
    const double lp = off == 0.0 ? log_miss(p1n, s)
                                 : log_miss(params_.p1, std::min(1.0, model_->game.back(s) + off));
    return lp * clock.weight(u);
  };
  const double ux = clock.u_of(std::min(x, a_));
  // Split where the curve changes representation and where the integrand steepens.
  std::vector<double> cuts{ux};
  for (double c : {level.u_start(), 1.0 - 1e-3, 1.0 - 1e-6}) {
    if (c > ux && c < 1.0) cuts.push_back(c);
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate(integrand, cuts[i], cuts[i + 1], {1e-14, 1e-13, 4000}).value;
  return total;
}

double TTable::sniper_miss(int k, double x) const {
  require_level(*this, k);
  if (!model_ || x <= 0.0) return 0.0;
  if (offsets_[k - 1] == 0.0) {
    const double u = model_->clock.u_of(std::min(x, a_));
    return 1.0 - model_->levels[k - 1](u);
  }
  return params_.p2.complement(T(k, x));
}

std::vector<double> TTable::lattice_moments(int k) const {
  require_level(*this, k);
  std::vector<double> out = lattice_t_.empty() ? std::vector<double>{} : lattice_t_[k - 1];
  for (double& t : out) t = std::clamp(t + offsets_[k - 1], 1e-300, 1.0);
  return out;
}

TTable TTable::perturbed(int k, double offset) const {
  require_level(*this, k);
  TTable copy = *this;
  copy.offsets_[k - 1] += offset;
  for (double& t : copy.curves_[k - 1]) t = std::clamp(t + offset, 1e-300, 1.0);
  return copy;
}

TTable solve_game(const DuelParameters& params, const SolverConfig& config) {
  params.validate();
  TTable table;
  table.params_ = params;
  table.config_ = config;
  table.a_ = params.a;
  table.offsets_.assign(static_cast<std::size_t>(params.m), 0.0);
  table.values_.assign(static_cast<std::size_t>(params.m) + 1, -params.A2);
  table.values_[0] = params.a > 0.0 ? params.A1 : 0.0;
  if (params.m == 0 || params.a == 0.0) {
    table.curves_.assign(static_cast<std::size_t>(params.m), {});
    return table;
  }

  config.validate(params.a);
  const double a = config.resolved_a(params.a);
  if (a > params.a + 1e-12)
    throw std::invalid_argument(fmt("grid end a=%g exceeds the game's resource %g", a, params.a));
  table.a_ = a;
  table.grid_ = make_grid(config, a);
  NormalizedGame game = normalize_p2(params);
  const auto& p1n = game.params.p1;

  // Moment of the first curve at the far end of the grid, found directly.
  double u_end_lo = 0.5;
  while (x_of_t1(u_end_lo, p1n) < a) {
    u_end_lo *= 0.5;
    if (u_end_lo < 1e-300) throw SolverError(1, fmt("first curve has no moment for x=%g", a));
  }
  const double u_end = bisect([&](double u) { return x_of_t1(u, p1n) - a; }, u_end_lo, 1.0, 1e-15);
  ResourceClock clock(p1n, u_end * (1.0 - 1e-9));
  const double u_cover = clock.u_of(table.grid_.front());

  std::vector<LevelCurve> levels{LevelCurve()};
  std::vector<LevelDiagnostics> diagnostics;
  double delta = 1.0 - config.u0;
  for (int halvings = 0;; ++halvings) {
    levels.resize(1);
    diagnostics.clear();
    const double u0 = 1.0 - delta;
    int failed = 0;
    std::string reason;
    for (int k = 2; k <= params.m && !failed; ++k) {
      if (u0 <= u_cover) {
        failed = k;
        reason = fmt("u0=%.17g does not exceed the first grid moment %.17g", u0, u_cover);
        break;
      }
      LevelSolution sol = integrate_level_k(k, levels, clock, p1n, config, u0, u_cover);
      sol.diagnostics.halvings = halvings;
      if (sol.diagnostics.u_star < u_cover) {
        failed = k;
        reason = fmt("gap stays above eps until u=%.17g, past the grid start %.17g",
                     sol.diagnostics.u_star, u_cover);
      } else if (sol.diagnostics.boundary_bound > config.boundary_tol) {
        failed = k;
        reason = fmt("boundary error bound %g exceeds %g", sol.diagnostics.boundary_bound,
                     config.boundary_tol);
      }
      levels.push_back(std::move(sol.curve));
      diagnostics.push_back(std::move(sol.diagnostics));
    }
    if (!failed) break;
    if (halvings >= config.max_delta_halvings)
      throw SolverError(failed, reason + fmt(" after %g halvings of delta", halvings));
    delta *= 0.5;
  }
  table.delta_ = delta;

  auto model = std::make_shared<TTable::Model>(TTable::Model{game, std::move(clock), std::move(levels)});
  table.model_ = model;
  table.diagnostics_ = std::move(diagnostics);

  table.curves_.assign(static_cast<std::size_t>(params.m), std::vector<double>(table.grid_.size()));
  for (std::size_t i = 0; i < table.grid_.size(); ++i) {
    const double u = model->clock.u_of(table.grid_[i]);
    for (int k = 1; k <= params.m; ++k)
      table.curves_[k - 1][i] = model->game.back(model->levels[k - 1](u));
  }

  const double u_a = model->clock.u_of(a);
  double survive = 1.0;
  for (int k = 1; k <= params.m; ++k) {
    survive *= 1.0 - model->levels[k - 1](u_a);
    table.values_[k] = (params.A1 + params.A2) * survive - params.A2;
  }

  for (const auto& d : table.diagnostics_)
    table.resolved_from_ = std::max(table.resolved_from_, model->clock.x_of(d.u_star));
  for (double x = table.grid_.front() * 0.95; x > 1e-12; x *= 0.95) table.lattice_.push_back(x);
  std::reverse(table.lattice_.begin(), table.lattice_.end());
  for (std::size_t i = 0; i < table.grid_.size(); ++i) {
    table.lattice_.push_back(table.grid_[i]);
    if (i + 1 == table.grid_.size()) break;
    for (int j = 1; j < 8; ++j)
      table.lattice_.push_back(table.grid_[i] + (table.grid_[i + 1] - table.grid_[i]) * j / 8.0);
  }
  table.lattice_t_.assign(static_cast<std::size_t>(params.m), {});
  double chord = 0.0;
  for (int k = 1; k <= params.m; ++k) {
    auto& ts = table.lattice_t_[k - 1];
    for (double x : table.lattice_) ts.push_back(table.T(k, x));
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      if (table.lattice_[i] < table.resolved_from_) continue;
      const double mid = table.T(k, 0.5 * (table.lattice_[i] + table.lattice_[i + 1]));
      chord = std::max(chord, std::abs(mid - 0.5 * (ts[i] + ts[i + 1])));
    }
  }
  table.curve_tolerance_ = std::max(1e-9, 2.0 * chord);
  return table;
}

std::vector<std::string> structural_violations(const TTable& table) {
  std::vector<std::string> out;
  const auto& grid = table.grid();
  for (int k = 1; k <= table.m(); ++k) {
    const auto& c = table.curve(k);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!(c[i] > 0.0 && c[i] <= 1.0))
        out.push_back(fmt("T_%g(%g) = %.17g outside (0, 1]", k, grid[i], c[i]));
      if (k > 1 && !(c[i] < table.curve(k - 1)[i]))
        out.push_back(fmt("T_%g(%g) = %.17g is not below the previous curve", k, grid[i], c[i]));
      if (i > 0 && !(c[i] < c[i - 1]))
        out.push_back(fmt("T_%g not strictly decreasing at x=%g (%.17g)", k, grid[i], c[i]));
    }
  }
  return out;
}

double ValueForms::gap() const { return std::abs(product - exponential); }

ValueForms value_forms(const TTable& table, double x, int k) {
  const auto& p = table.params();
  if (k < 0 || k > table.m()) throw std::out_of_range("value index outside 0..m");
  if (x < 0.0 || x > table.a() + 1e-12) throw std::out_of_range(fmt("x=%g outside [0, a]", x));
  if (k == 0) {
    const double v = x > 0.0 ? p.A1 : 0.0;
    return {v, v};
  }
  if (x == 0.0) return {-p.A2, -p.A2};
  double survive = 1.0;
  for (int i = 1; i <= k; ++i) survive *= table.sniper_miss(i, x);
  ValueForms forms;
  forms.product = (p.A1 + p.A2) * survive - p.A2;
  forms.exponential = p.A1 - (p.A1 + p.A2) * std::exp(table.log_survival(k, x));
  return forms;
}

double game_value(const TTable& table, double x, int k, double tol) {
  const ValueForms forms = value_forms(table, x, k);
  if (forms.gap() > tol)
    throw SolverError(k, fmt("value forms disagree at x=%g: product %.12g vs exponential %.12g",
                             x, forms.product, forms.exponential));
  return forms.product;
}

double equilibrium_residual(const TTable& table, double x, int k) {
  if (k < 1 || k > table.m()) throw std::out_of_range("residual index outside 1..m");
  double survive = 1.0;
  for (int i = 1; i <= k; ++i) survive *= table.sniper_miss(i, x);
  return std::abs(std::exp(table.log_survival(k, x)) + survive - 1.0);
}

}  // namespace duel
