#include "duel/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "duel/quadrature.hpp"

namespace duel {

ConsumptionPath::ConsumptionPath(std::vector<Breakpoint> points, bool terminal_burst)
    : points_(std::move(points)), burst_(terminal_burst) {
  if (points_.empty()) throw std::invalid_argument("consumption path needs at least one breakpoint");
  if (points_.front().t != 0.0) throw std::invalid_argument("consumption path must start at t=0");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha))
      throw std::invalid_argument("consumption path has a negative resource level");
    if (p.t > 1.0) throw std::invalid_argument("consumption path extends past t=1");
    if (i > 0) {
      if (!(p.t > points_[i - 1].t))
        throw std::invalid_argument("consumption path times must strictly increase");
      if (p.alpha > points_[i - 1].alpha)
        throw std::invalid_argument("consumption path resource must not increase");
    }
  }
}

ConsumptionPath ConsumptionPath::hold(double a, bool terminal_burst) {
  return ConsumptionPath({{0.0, a}}, terminal_burst);
}

double ConsumptionPath::alpha(double t) const {
  if (t <= points_.front().t) return points_.front().alpha;
  if (t >= points_.back().t) return points_.back().alpha;
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](double v, const Breakpoint& b) { return v < b.t; });
  const Breakpoint& hi = *it;
  const Breakpoint& lo = *(it - 1);
  const double s = (t - lo.t) / (hi.t - lo.t);
  return lo.alpha + s * (hi.alpha - lo.alpha);
}

SniperSchedule::SniperSchedule(std::vector<double> m) : moments(std::move(m)) {
  for (std::size_t i = 0; i < moments.size(); ++i) {
    if (!(moments[i] >= 0.0 && moments[i] <= 1.0))
      throw std::invalid_argument("shot moment outside [0, 1]");
    if (i > 0 && moments[i] < moments[i - 1])
      throw std::invalid_argument("shot moments must be chronological");
  }
}

int Play::n(double t) const {
  const auto fired = std::lower_bound(schedule.moments.begin(), schedule.moments.end(), t) -
                     schedule.moments.begin();
  return schedule.size() - static_cast<int>(fired);
}

double single_shot_success(const AccuracyFunction& P, double t, double dgamma) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("single_shot_success: t outside [0, 1]");
  if (!(dgamma >= 0.0)) throw std::invalid_argument("single_shot_success: negative dgamma");
  if (dgamma == 0.0) return 0.0;
  const double miss = P.complement(t);
  if (miss <= 0.0) return 1.0;
  return -std::expm1(dgamma * std::log(miss));
}

double log_escape(const ConsumptionPath& path, const AccuracyFunction& P1, double t1, double t2) {
  if (!(0.0 <= t1 && t1 <= t2 && t2 <= 1.0))
    throw std::domain_error("success interval must satisfy 0 <= t1 <= t2 <= 1");
  const auto& pts = path.points();
  auto log_p = [&](double tau) { return eval_log_p(P1, std::clamp(tau, 0.0, 1.0)); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double drop = pts[i].alpha - pts[i + 1].alpha;
    if (drop == 0.0) continue;
    const double lo = std::max(t1, pts[i].t);
    const double hi = std::min(t2, pts[i + 1].t);
    if (!(hi > lo)) continue;
    const double xi = drop / (pts[i + 1].t - pts[i].t);
    total += xi * integrate(log_p, lo, hi, {1e-10 / std::max(1.0, xi), 1e-12, 4000}).value;
  }
  return total;
}

double continuous_success_prob(const ConsumptionPath& path, const AccuracyFunction& P1, double t1,
                               double t2) {
  const double escape = log_escape(path, P1, t1, t2);
  if (path.bursts() && t2 >= 1.0) return 1.0;
  return -std::expm1(escape);
}

double payoff(const Play& play, const DuelParameters& params) {
  const double a = play.path.initial();
  if (std::abs(a - params.a) > 1e-12 * std::max(1.0, params.a))
    throw std::invalid_argument("play starts with resource " + std::to_string(a) +
                                " but the game has a=" + std::to_string(params.a));
  if (play.schedule.size() != params.m)
    throw std::invalid_argument("play has " + std::to_string(play.schedule.size()) +
                                " shots but the game has m=" + std::to_string(params.m));
  const auto& path = play.path;
  double total = 0.0;
  double survive = 1.0;  // neither side has succeeded so far
  double previous = 0.0;
  for (double s : play.schedule.moments) {
    const double phi = -std::expm1(log_escape(path, params.p1, previous, s));
    const double burst = (s >= 1.0 && path.bursts()) ? 1.0 : 0.0;
    const double hit = params.p2(s);
    total += survive * (params.A1 * phi + (1.0 - phi) * (params.A1 * burst * (1.0 - hit) -
                                                         params.A2 * hit * (1.0 - burst)));
    survive *= (1.0 - phi) * (1.0 - burst) * (1.0 - hit);
    previous = s;
  }
  // With the sniper disarmed, any resource left guarantees the gunner's success.
  if (path.alpha(previous) > 0.0) total += survive * params.A1;
  return total;
}

std::vector<std::string> t_play_violations(const Play& play, const TTable& table) {
  std::vector<std::string> out;
  const double tol = table.curve_tolerance() + 1e-9;
  const auto& path = play.path;
  char buf[200];
  auto report = [&](const char* what, double t, int n, double alpha, double T) {
    std::snprintf(buf, sizeof buf, "%s at t=%.12g (n=%d, alpha=%.12g, T=%.12g)", what, t, n, alpha, T);
    out.emplace_back(buf);
  };

  std::vector<double> events{1.0};
  for (const auto& p : path.points()) events.push_back(p.t);
  for (double s : play.schedule.moments) events.push_back(s);
  const auto& pts = path.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].alpha == pts[i + 1].alpha) continue;
    for (int j = 1; j < 8; ++j) events.push_back(pts[i].t + (pts[i + 1].t - pts[i].t) * j / 8.0);
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  for (double t : events) {
    const int n = play.n(t);
    const double alpha = path.alpha(t);
    if (n <= 0 || alpha <= table.resolved_from()) continue;
    const double T = table.T(n, alpha);
    if (t > T + tol) report("moment past the curve", t, n, alpha, T);
  }

  // Spending happens on the curve.
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].alpha == pts[i + 1].alpha) continue;
    for (int j = 0; j <= 8; ++j) {
      const double t = pts[i].t + (pts[i + 1].t - pts[i].t) * j / 8.0;
      const int n = play.n(t);
      const double alpha = path.alpha(t);
      if (n <= 0 || alpha <= table.resolved_from()) continue;
      const double T = table.T(n, alpha);
      if (std::abs(t - T) > tol) report("gunner spends off the curve", t, n, alpha, T);
    }
  }
  if (path.bursts()) {
    const int n = play.n(1.0);
    if (n > 0 && path.final() > table.resolved_from()) {
      const double T = table.T(n, path.final());
      if (std::abs(1.0 - T) > tol) report("burst off the curve", 1.0, n, path.final(), T);
    }
  }

  const int m = play.schedule.size();
  for (int j = 0; j < m; ++j) {
    const double s = play.schedule.moments[static_cast<std::size_t>(j)];
    const double alpha = path.alpha(s);
    if (alpha <= table.resolved_from()) continue;
    const double T = table.T(m - j, alpha);
    if (std::abs(s - T) > tol) report("shot off the curve", s, m - j, alpha, T);
  }
  return out;
}

bool is_t_play(const Play& play, const TTable& table) {
  return t_play_violations(play, table).empty();
}

std::vector<Breakpoint> tracking_points(const TTable& table, int k, double alpha_from) {
  const auto& levels = table.lattice();
  const auto moments = table.lattice_moments(k);
  double last_t = table.T(k, alpha_from);
  std::vector<Breakpoint> out;
  for (std::size_t i = levels.size(); i-- > 0;) {
    if (!(levels[i] < alpha_from)) continue;
    const double t = moments[i];
    if (!(t > last_t) || !(t < 1.0)) continue;
    out.push_back({t, levels[i]});
    last_t = t;
  }
  out.push_back({1.0, 0.0});
  return out;
}

std::pair<Play, Play> simplest_t_plays(const TTable& table, const DuelParameters& params) {
  if (table.m() != params.m || std::abs(table.a() - params.a) > 1e-12 * std::max(1.0, params.a))
    throw std::invalid_argument("table was not solved for this game");
  const int m = params.m;
  const double a = params.a;
  if (m == 0 || a == 0.0) {
    Play idle{ConsumptionPath::hold(a, true), SniperSchedule(std::vector<double>(m, 1.0))};
    return {idle, idle};
  }
  std::vector<double> moments;
  for (int k = m; k >= 1; --k) moments.push_back(table.T(k, a));
  Play first{ConsumptionPath::hold(a, true), SniperSchedule(moments)};

  std::vector<Breakpoint> pts{{0.0, a}, {table.T(m, a), a}};
  const auto track = tracking_points(table, m, a);
  pts.insert(pts.end(), track.begin(), track.end());
  Play second{ConsumptionPath(std::move(pts), false), SniperSchedule(std::vector<double>(m, 1.0))};
  return {first, second};
}

nlohmann::json to_json(const Play& play) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : play.path.points()) pts.push_back({p.t, p.alpha});
  return {{"breakpoints", pts},
          {"terminal_burst", play.path.terminal_burst()},
          {"shots", play.schedule.moments}};
}

Play play_from_json(const nlohmann::json& j) {
  std::vector<Breakpoint> pts;
  for (const auto& p : j.at("breakpoints")) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return {ConsumptionPath(std::move(pts), j.at("terminal_burst").get<bool>()),
          SniperSchedule(j.at("shots").get<std::vector<double>>())};
}

}  // namespace duel
