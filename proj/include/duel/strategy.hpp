#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "duel/payoff.hpp"
#include "duel/solver.hpp"

namespace duel {

class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Role { Gunner, Sniper };

// Who acts first when both players reach the same curve at the same moment.
// Random also varies where on the gunner's tracking stretch the shot lands.
enum class TieBreak { GunnerFirst, SniperFirst, Both, Random };

TieBreak parse_tie_break(const std::string& name);
std::string to_string(TieBreak tie);

struct TStrategy {
  const TTable* table = nullptr;
  Role role = Role::Gunner;
  TieBreak tie = TieBreak::Both;
};

struct Action {
  enum class Kind { Hold, Spend, Fire, Burst };
  Kind kind = Kind::Hold;
  double moment = 1.0;     // when the next action is due
  double intensity = 0.0;  // gunner spend rate while on the curve
};

Action next_action(const TStrategy& strategy, double t, double alpha, int n);

// What the gunner will do from (t, alpha) if nothing else happens.
struct GunnerPlan {
  std::vector<Breakpoint> points;  // starts at the current state
  bool terminal_burst = false;
  double track_start = -1.0;  // moment the gunner starts following a curve
  int track_level = 0;        // which curve it follows

  double alpha(double t) const;
};

class GunnerPolicy {
 public:
  virtual ~GunnerPolicy() = default;
  virtual GunnerPlan plan(double t, double alpha, int n) const = 0;
  virtual std::string name() const = 0;
};

class SniperPolicy {
 public:
  virtual ~SniperPolicy() = default;
  // Moment of the next shot, given n shots left and the gunner's plan.
  virtual double next_shot(double t, int n, const GunnerPlan& gunner,
                           std::mt19937_64& rng) const = 0;
  virtual std::string name() const = 0;
};

class TGunner final : public GunnerPolicy {
 public:
  explicit TGunner(const TTable& table) : table_(table) {}
  GunnerPlan plan(double t, double alpha, int n) const override;
  std::string name() const override { return "T"; }

 private:
  const TTable& table_;
};

class TSniper final : public SniperPolicy {
 public:
  TSniper(const TTable& table, TieBreak tie = TieBreak::Both) : table_(table), tie_(tie) {}
  double next_shot(double t, int n, const GunnerPlan& gunner, std::mt19937_64& rng) const override;
  std::string name() const override { return "T"; }

 private:
  const TTable& table_;
  TieBreak tie_;
};

class ScriptedGunner final : public GunnerPolicy {
 public:
  ScriptedGunner(ConsumptionPath path, std::string label = "scripted")
      : path_(std::move(path)), label_(std::move(label)) {}
  GunnerPlan plan(double t, double alpha, int n) const override;
  std::string name() const override { return label_; }

 private:
  ConsumptionPath path_;
  std::string label_;
};

class ScriptedSniper final : public SniperPolicy {
 public:
  ScriptedSniper(SniperSchedule schedule, std::string label = "scripted")
      : schedule_(std::move(schedule)), label_(std::move(label)) {}
  double next_shot(double t, int n, const GunnerPlan& gunner, std::mt19937_64& rng) const override;
  std::string name() const override { return label_; }

 private:
  SniperSchedule schedule_;
  std::string label_;
};

struct SimulationEvent {
  double t;
  std::string actor;  // "gunner" or "sniper"
  std::string what;
  double before;  // resource before the event
  double after;
};

struct SimulationResult {
  Play play;
  double payoff = 0.0;
  std::vector<SimulationEvent> events;
  std::uint64_t seed = 0;
};

SimulationResult simulate(const GunnerPolicy& gunner, const SniperPolicy& sniper,
                          const DuelParameters& params, std::uint64_t seed);

// The gunner's T-strategy realized against a fixed shot schedule.
ConsumptionPath gunner_response(const SniperSchedule& schedule, const TTable& table,
                                const DuelParameters& params);

// Both players on T-strategies, with a random tie-break at every shared moment.
SimulationResult random_t_play(const TTable& table, const DuelParameters& params,
                               std::uint64_t seed);

struct SniperDeviation {
  std::string label;
  SniperSchedule schedule;
};

struct GunnerDeviation {
  std::string label;
  ConsumptionPath path;
};

struct DeviationSuite {
  std::vector<SniperDeviation> snipers;
  std::vector<GunnerDeviation> gunners;
};

// `count` scripted deviations for each side, deterministic in `seed`.
DeviationSuite deviation_suite(const DuelParameters& params, const TTable& table,
                               std::uint64_t seed, int count);

nlohmann::json to_json(const SimulationResult& result);

}  // namespace duel
