#include "duel/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "duel/roots.hpp"

namespace duel {
namespace {

std::string describe_state(double t, double alpha, int n, double T) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "t=%.12g is past T_%d(%.12g)=%.12g", t, n, alpha, T);
  return buf;
}

void append(std::vector<Breakpoint>& pts, Breakpoint bp) {
  if (pts.empty() || bp.t > pts.back().t) pts.push_back(bp);
}

}  // namespace

TieBreak parse_tie_break(const std::string& name) {
  if (name == "gunner-first") return TieBreak::GunnerFirst;
  if (name == "sniper-first") return TieBreak::SniperFirst;
  if (name == "both") return TieBreak::Both;
  if (name == "random") return TieBreak::Random;
  throw std::invalid_argument("unknown tie-break '" + name +
                              "' (expected gunner-first, sniper-first, both or random)");
}

std::string to_string(TieBreak tie) {
  switch (tie) {
    case TieBreak::GunnerFirst: return "gunner-first";
    case TieBreak::SniperFirst: return "sniper-first";
    case TieBreak::Both: return "both";
    case TieBreak::Random: return "random";
  }
  return "both";
}

Action next_action(const TStrategy& strategy, double t, double alpha, int n) {
  if (!strategy.table) throw std::invalid_argument("T-strategy without a table");
  const TTable& table = *strategy.table;
  Action act;
  if (alpha * n <= 0.0) {
    // Terminal phase: a lone gunner bursts, a lone sniper waits for certainty.
    if (strategy.role == Role::Gunner) {
      act.kind = alpha > 0.0 ? Action::Kind::Burst : Action::Kind::Hold;
    } else if (n > 0) {
      act.kind = t >= 1.0 ? Action::Kind::Fire : Action::Kind::Hold;
    }
    act.moment = 1.0;
    return act;
  }
  const double T = table.T(n, alpha);
  const double tol = table.curve_tolerance();
  if (t > T + tol) throw ProtocolViolation(describe_state(t, alpha, n, T));
  act.moment = std::max(t, T);
  if (t < T - tol) return act;
  if (strategy.role == Role::Gunner) {
    act.kind = Action::Kind::Spend;
    act.intensity = -1.0 / table.dT(n, alpha);
  } else {
    act.kind = Action::Kind::Fire;
  }
  return act;
}

double GunnerPlan::alpha(double t) const {
  if (t <= points.front().t) return points.front().alpha;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (t <= points[i + 1].t) {
      const auto& lo = points[i];
      const auto& hi = points[i + 1];
      return lo.alpha + (hi.alpha - lo.alpha) * (t - lo.t) / (hi.t - lo.t);
    }
  }
  return points.back().alpha;
}

GunnerPlan TGunner::plan(double t, double alpha, int n) const {
  GunnerPlan p;
  p.points.push_back({t, alpha});
  if (alpha <= 0.0) return p;
  if (n <= 0) {
    p.terminal_burst = true;
    return p;
  }
  const double T = table_.T(n, alpha);
  if (t > T + table_.curve_tolerance()) throw ProtocolViolation(describe_state(t, alpha, n, T));
  p.track_start = std::max(t, T);
  p.track_level = n;
  append(p.points, {p.track_start, alpha});
  for (const auto& bp : tracking_points(table_, n, alpha)) append(p.points, bp);
  return p;
}

double TSniper::next_shot(double t, int n, const GunnerPlan& gunner, std::mt19937_64& rng) const {
  if (n <= 0) return 1.0;
  if (gunner.track_start >= 0.0 && gunner.track_level == n) {
    // Both players reach the same curve at once.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (tie_) {
      case TieBreak::SniperFirst:
      case TieBreak::Both:
        return gunner.track_start;
      case TieBreak::GunnerFirst:
        return 1.0;
      case TieBreak::Random: {
        const double r = unit(rng);
        if (r < 0.2) return gunner.track_start;
        if (r < 0.3) return 1.0;
        const double level = gunner.alpha(gunner.track_start) * unit(rng);
        return std::clamp(table_.T(n, level), gunner.track_start, 1.0);
      }
    }
  }
  // First moment the gunner's plan reaches the sniper's curve.
  auto behind = [&](double tau) { return tau - table_.T(n, gunner.alpha(tau)); };
  if (behind(t) >= 0.0) return t;
  std::vector<double> knots;
  for (const auto& bp : gunner.points)
    if (bp.t > t) knots.push_back(bp.t);
  if (knots.empty() || knots.back() < 1.0) knots.push_back(1.0);
  double lo = t;
  for (double hi : knots) {
    for (int j = 1; j <= 16; ++j) {
      const double tau = lo + (hi - lo) * j / 16.0;
      if (behind(tau) >= 0.0) {
        const double prev = lo + (hi - lo) * (j - 1) / 16.0;
        return bisect(behind, prev, tau, 1e-13);
      }
    }
    lo = hi;
  }
  return 1.0;
}

GunnerPlan ScriptedGunner::plan(double t, double, int) const {
  GunnerPlan p;
  p.points.push_back({t, path_.alpha(t)});
  for (const auto& bp : path_.points()) append(p.points, bp);
  p.terminal_burst = path_.terminal_burst();
  return p;
}

double ScriptedSniper::next_shot(double t, int n, const GunnerPlan&, std::mt19937_64&) const {
  const int fired = schedule_.size() - n;
  if (fired < 0 || fired >= schedule_.size())
    throw std::logic_error("scripted sniper asked for a shot it does not have");
  return std::max(t, schedule_.moments[static_cast<std::size_t>(fired)]);
}

SimulationResult simulate(const GunnerPolicy& gunner, const SniperPolicy& sniper,
                          const DuelParameters& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SimulationResult result{Play{ConsumptionPath::hold(params.a, false), SniperSchedule()}, 0.0, {}, seed};
  std::vector<Breakpoint> committed{{0.0, params.a}};
  std::vector<double> shots;
  double t = 0.0, alpha = params.a;
  int n = params.m;
  bool burst = false;
  bool finished = false;
  for (int cycle = 0; cycle < params.m + 2 && !finished; ++cycle) {
    const GunnerPlan plan = gunner.plan(t, alpha, n);
    if (n == 0) {
      for (const auto& bp : plan.points) append(committed, bp);
      burst = plan.terminal_burst;
      finished = true;
      break;
    }
    const double s = std::clamp(sniper.next_shot(t, n, plan, rng), t, 1.0);
    for (const auto& bp : plan.points)
      if (bp.t < s) append(committed, bp);
    const double alpha_s = plan.alpha(s);
    append(committed, {s, alpha_s});
    shots.push_back(s);
    result.events.push_back({s, "sniper", "shot", static_cast<double>(n), static_cast<double>(n - 1)});
    t = s;
    alpha = alpha_s;
    --n;
  }
  if (!finished)
    throw std::runtime_error("simulation made no progress within m + 2 decision cycles (" +
                             gunner.name() + " vs " + sniper.name() + ")");

  // One event per maximal run of spending.
  for (std::size_t i = 0; i + 1 < committed.size();) {
    if (committed[i].alpha == committed[i + 1].alpha) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j + 1 < committed.size() && committed[j + 1].alpha < committed[j].alpha) ++j;
    result.events.push_back({committed[i].t, "gunner", "spend", committed[i].alpha, committed[j].alpha});
    i = j;
  }
  if (burst && committed.back().alpha > 0.0)
    result.events.push_back({1.0, "gunner", "burst", committed.back().alpha, 0.0});
  std::stable_sort(result.events.begin(), result.events.end(),
                   [](const SimulationEvent& x, const SimulationEvent& y) { return x.t < y.t; });

  result.play = Play{ConsumptionPath(std::move(committed), burst), SniperSchedule(std::move(shots))};
  result.payoff = payoff(result.play, params);
  return result;
}

ConsumptionPath gunner_response(const SniperSchedule& schedule, const TTable& table,
                                const DuelParameters& params) {
  return simulate(TGunner(table), ScriptedSniper(schedule), params, 0).play.path;
}

SimulationResult random_t_play(const TTable& table, const DuelParameters& params,
                               std::uint64_t seed) {
  return simulate(TGunner(table), TSniper(table, TieBreak::Random), params, seed);
}

DeviationSuite deviation_suite(const DuelParameters& params, const TTable& table,
                               std::uint64_t seed, int count) {
  if (count < 1) throw std::invalid_argument("deviation_suite needs count >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  const int m = params.m;
  const double a = params.a;
  const bool solved = m > 0 && a > 0.0;
  const double first = solved ? table.T(m, a) : 0.5;
  const double last = solved ? table.T(1, a) : 0.5;

  DeviationSuite suite;
  for (int i = 0; i < count; ++i) {
    std::vector<double> moments(static_cast<std::size_t>(m));
    std::string label;
    switch (i % 7) {
      case 0:
        label = "all-at-zero";
        std::fill(moments.begin(), moments.end(), 0.0);
        break;
      case 1:
        label = "all-at-one";
        std::fill(moments.begin(), moments.end(), 1.0);
        break;
      case 2:
        label = "early";
        for (double& s : moments) s = uniform(0.0, first);
        break;
      case 3: {
        label = "clustered";
        std::fill(moments.begin(), moments.end(), unit(rng));
        break;
      }
      case 4:
        label = "random";
        for (double& s : moments) s = unit(rng);
        break;
      case 5:
        label = "late";
        for (double& s : moments) s = uniform(last, 1.0);
        break;
      default: {
        label = "jittered";
        std::normal_distribution<double> jitter(0.0, 0.05);
        for (int k = 0; k < m; ++k)
          moments[static_cast<std::size_t>(k)] =
              std::clamp((solved ? table.T(m - k, a) : 0.5) + jitter(rng), 0.0, 1.0);
        break;
      }
    }
    std::sort(moments.begin(), moments.end());
    suite.snipers.push_back({label + "-" + std::to_string(i), SniperSchedule(std::move(moments))});
  }

  for (int i = 0; i < count; ++i) {
    std::vector<Breakpoint> pts{{0.0, a}};
    bool burst = false;
    std::string label;
    if (a <= 0.0) {
      label = "idle";
    } else {
      switch (i % 6) {
        case 0:
          label = "dump-early";
          pts.push_back({uniform(1e-3, 1e-2), 0.0});
          break;
        case 1: {
          label = "early-linear";
          const double ts = uniform(0.0, 0.8 * first);
          pts.push_back({std::max(ts, 1e-6), a});
          pts.push_back({uniform(std::max(ts, 1e-6) + 1e-6, first), 0.0});
          break;
        }
        case 2: {
          label = "delayed-burst";
          const double td = uniform(0.05, 0.95);
          const double w = uniform(0.0, 1.0 - td) * 0.5 + 1e-6;
          pts.push_back({td, a});
          pts.push_back({td + w, a * (1.0 - unit(rng))});
          burst = true;
          break;
        }
        case 3: {
          label = "partial-freeze";
          const double ts = uniform(0.0, 0.9);
          pts.push_back({std::max(ts, 1e-6), a});
          pts.push_back({std::max(ts, 1e-6) + uniform(1e-3, 0.1), a * uniform(0.05, 0.95)});
          break;
        }
        case 4: {
          label = "random-walk";
          const int knots = 2 + static_cast<int>(unit(rng) * 4.0);
          std::vector<double> times(static_cast<std::size_t>(knots)), levels(times.size());
          for (double& x : times) x = uniform(1e-6, 1.0);
          for (double& x : levels) x = a * unit(rng);
          std::sort(times.begin(), times.end());
          std::sort(levels.rbegin(), levels.rend());
          for (std::size_t k = 0; k < times.size(); ++k)
            if (times[k] > pts.back().t) pts.push_back({times[k], levels[k]});
          burst = unit(rng) < 0.5;
          break;
        }
        default: {
          label = "early-tracking";
          const int level = std::max(1, m);
          const double d = std::min(uniform(0.01, 0.2), 0.5 * (solved ? table.T(level, a) : 0.5));
          if (solved) {
            append(pts, {table.T(level, a) - d, a});
            for (const auto& bp : tracking_points(table, level, a))
              if (bp.t - d > pts.back().t) pts.push_back({bp.t - d, bp.alpha});
          } else {
            pts.push_back({1.0 - d, 0.0});
          }
          break;
        }
      }
    }
    suite.gunners.push_back({label + "-" + std::to_string(i), ConsumptionPath(std::move(pts), burst)});
  }
  return suite;
}

nlohmann::json to_json(const SimulationResult& result) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : result.events)
    events.push_back({{"t", e.t}, {"actor", e.actor}, {"what", e.what}, {"before", e.before},
                      {"after", e.after}});
  return {{"play", to_json(result.play)},
          {"payoff", result.payoff},
          {"seed", result.seed},
          {"events", events}};
}

}  // namespace duel
