#pragma once

#include <utility>
#include <vector>

#include "duel/accuracy.hpp"
#include "duel/solver.hpp"
#include "json.hpp"

namespace duel {

struct Breakpoint {
  double t;
  double alpha;
};

// The gunner's remaining resource alpha(t): piecewise linear between
// breakpoints, constant after the last one. With `terminal_burst` set, whatever
// remains at t = 1 is spent there and succeeds with certainty.
class ConsumptionPath {
 public:
  ConsumptionPath(std::vector<Breakpoint> points, bool terminal_burst);
  // Holds a until t = 1, bursting there.
  static ConsumptionPath hold(double a, bool terminal_burst = true);

  double alpha(double t) const;
  double initial() const { return points_.front().alpha; }
  // Resource left at t = 1 before any burst.
  double final() const { return points_.back().alpha; }
  const std::vector<Breakpoint>& points() const { return points_; }
  bool terminal_burst() const { return burst_; }
  bool bursts() const { return burst_ && final() > 0.0; }

 private:
  std::vector<Breakpoint> points_;
  bool burst_;
};

// Shot moments in chronological order. Index k counts from
// the last shot: eta(k) = moments[m - k].
struct SniperSchedule {
  std::vector<double> moments;

  explicit SniperSchedule(std::vector<double> moments = {});
  int size() const { return static_cast<int>(moments.size()); }
  double eta(int k) const { return moments.at(moments.size() - static_cast<std::size_t>(k)); }
};

struct Play {
  ConsumptionPath path;
  SniperSchedule schedule;

  // Shots left at t, not counting a shot fired exactly at t.
  int n(double t) const;
};

double single_shot_success(const AccuracyFunction& P, double t, double dgamma);

// int_{t1}^{t2} ln(1 - P1) d(-alpha) over the linear segments; the burst is excluded.
double log_escape(const ConsumptionPath& path, const AccuracyFunction& P1, double t1, double t2);
// 1 - exp(log_escape), or 1 when the burst falls inside [t1, t2].
double continuous_success_prob(const ConsumptionPath& path, const AccuracyFunction& P1, double t1,
                               double t2);

// Expected payoff of the gunner.
double payoff(const Play& play, const DuelParameters& params);

// Diagnostic form of the T-play test: empty when the play qualifies.
std::vector<std::string> t_play_violations(const Play& play, const TTable& table);
bool is_t_play(const Play& play, const TTable& table);

// Breakpoints tracking T_k from resource level `alpha_from` down to 0 at t = 1,
// excluding the starting point itself.
std::vector<Breakpoint> tracking_points(const TTable& table, int k, double alpha_from);

std::pair<Play, Play> simplest_t_plays(const TTable& table, const DuelParameters& params);

nlohmann::json to_json(const Play& play);
Play play_from_json(const nlohmann::json& j);

}  // namespace duel
