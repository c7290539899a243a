// Command-line front end: solve, value, simulate, verify, oracle-compare.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "duel/io.hpp"
#include "duel/ode.hpp"
#include "duel/oracle.hpp"
#include "duel/payoff.hpp"
#include "duel/roots.hpp"
#include "duel/solver.hpp"
#include "duel/strategy.hpp"
#include "duel/verify.hpp"

#ifndef DUEL_VERSION
#define DUEL_VERSION "dev"
#endif

namespace {

using duel::DuelParameters;
using duel::SolverConfig;
using nlohmann::json;

enum Exit { kOk = 0, kBadInput = 2, kSolverFailure = 3, kVerifyFailure = 4 };

struct GameFlags {
  std::string p1 = "power:1";
  std::string p2 = "power:1";
  double a = 1.0;
  int m = 1;
  double A1 = 1.0;
  double A2 = 1.0;
  SolverConfig config;
  std::vector<CLI::Option*> options;

  void add(CLI::App* app) {
    options = {
        app->add_option("--p1", p1, "gunner accuracy: power:<c> or csv:<path>")->capture_default_str(),
        app->add_option("--p2", p2, "sniper accuracy: power:<c> or csv:<path>")->capture_default_str(),
        app->add_option("--a", a, "initial resource")->capture_default_str(),
        app->add_option("--m", m, "number of sniper shots")->capture_default_str(),
        app->add_option("--A1", A1, "payoff when the gunner succeeds")->capture_default_str(),
        app->add_option("--A2", A2, "loss when the sniper succeeds")->capture_default_str(),
        app->add_option("--a0", config.a0, "first grid point")->capture_default_str(),
        app->add_option("--grid-end", config.a, "last grid point (0: the game's a)")->capture_default_str(),
        app->add_option("--h", config.h, "grid step")->capture_default_str(),
        app->add_option("--u0", config.u0, "starting moment of the upper and lower solutions")
            ->capture_default_str(),
        app->add_option("--eps", config.eps, "bracket width that counts as closed")->capture_default_str(),
        app->add_option("--ode-tol", config.ode_tol)->capture_default_str(),
        app->add_option("--root-tol", config.root_tol)->capture_default_str(),
        app->add_option("--max-halvings", config.max_delta_halvings)->capture_default_str(),
        app->add_option("--boundary-tol", config.boundary_tol)->capture_default_str(),
    };
  }

  bool any_set() const {
    for (const auto* o : options)
      if (o->count() > 0) return true;
    return false;
  }

  DuelParameters params() const {
    DuelParameters p;
    p.p1 = duel::AccuracyFunction::parse(p1);
    p.p2 = duel::AccuracyFunction::parse(p2);
    p.a = a;
    p.m = m;
    p.A1 = A1;
    p.A2 = A2;
    p.validate();
    config.validate(a);
    return p;
  }
};

struct Game {
  DuelParameters params;
  SolverConfig config;
};

// Game from either a sidecar or the game flags, never both.
Game resolve_game(const GameFlags& flags, const std::string& table_path) {
  if (table_path.empty()) return {flags.params(), flags.config};
  if (flags.any_set()) throw std::invalid_argument("--table cannot be combined with game flags");
  const duel::TableFile file = duel::read_table(table_path);
  file.config.validate(file.params.a);
  return {file.params, file.config};
}

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

std::string manifest_path(const std::string& output) {
  std::filesystem::path p(output);
  return (p.parent_path() / (p.stem().string() + ".manifest.json")).string();
}

class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv)
      : command_(std::move(command)), argv_(std::move(argv)),
        start_(std::chrono::steady_clock::now()) {}

  void set_game(const Game& game) {
    params_ = duel::to_json(game.params);
    config_ = duel::to_json(game.config);
  }
  void add_file(const std::string& path) { files_.push_back(path); }

  void write(const std::string& path) const {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json files = json::array();
    for (const auto& f : files_)
      files.push_back({{"path", std::filesystem::path(f).filename().string()},
                       {"sha256", duel::sha256_file(f)}});
    const json j = {{"command", command_},
                    {"argv", argv_},
                    {"parameters", params_},
                    {"config", config_},
                    {"tool_version", DUEL_VERSION},
                    {"wall_time_s", duel::round12(wall)},
                    {"files", files}};
    duel::write_text(path, j.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::chrono::steady_clock::time_point start_;
  json params_ = json::object();
  json config_ = json::object();
  std::vector<std::string> files_;
};

void print_values(const duel::TTable& table, double x) {
  std::printf("v_0 = %s\n", g12(duel::value_forms(table, x, 0).product).c_str());
  for (int k = 1; k <= table.m(); ++k) {
    const auto f = duel::value_forms(table, x, k);
    std::printf("v_%d = %s  (exponential %s, gap %s)\n", k, g12(f.product).c_str(),
                g12(f.exponential).c_str(), g12(f.gap()).c_str());
  }
}

int cmd_solve(const GameFlags& flags, const std::string& out, Manifest& manifest) {
  const Game game{flags.params(), flags.config};
  manifest.set_game(game);
  const duel::TTable table = duel::solve_game(game.params, game.config);
  const std::filesystem::path base(out);
  const std::string csv = base.string() + ".csv";
  const std::string sidecar = base.string() + ".json";
  duel::write_text(csv, duel::table_csv(table));
  duel::write_text(sidecar, duel::table_sidecar(table, base.filename().string() + ".csv").dump(2) + "\n");
  manifest.add_file(csv);
  manifest.add_file(sidecar);
  manifest.write(base.string() + ".manifest.json");
  print_values(table, table.a());
  std::printf("wrote %s, %s\n", csv.c_str(), sidecar.c_str());
  return kOk;
}

int cmd_value(const GameFlags& flags, const std::string& table_path, double x) {
  const Game game = resolve_game(flags, table_path);
  const duel::TTable table = duel::solve_game(game.params, game.config);
  if (x < 0.0) x = table.a();
  if (x > table.a()) throw std::invalid_argument("--x exceeds the tabulated resource " + g12(table.a()));
  std::printf("x = %s\n", g12(x).c_str());
  print_values(table, x);
  return kOk;
}

std::unique_ptr<duel::GunnerPolicy> make_gunner(const std::string& spec, const duel::TTable& table,
                                                const duel::DeviationSuite& suite) {
  if (spec == "T") return std::make_unique<duel::TGunner>(table);
  if (spec.rfind("dev:", 0) == 0) {
    const std::string label = spec.substr(4);
    for (const auto& d : suite.gunners)
      if (d.label == label) return std::make_unique<duel::ScriptedGunner>(d.path, d.label);
    throw std::invalid_argument("unknown gunner deviation '" + label + "'");
  }
  throw std::invalid_argument("--gunner must be T or dev:<label>, got '" + spec + "'");
}

std::unique_ptr<duel::SniperPolicy> make_sniper(const std::string& spec, const duel::TTable& table,
                                                duel::TieBreak tie,
                                                const duel::DeviationSuite& suite) {
  if (spec == "T") return std::make_unique<duel::TSniper>(table, tie);
  if (spec.rfind("dev:", 0) == 0) {
    const std::string label = spec.substr(4);
    for (const auto& d : suite.snipers)
      if (d.label == label) return std::make_unique<duel::ScriptedSniper>(d.schedule, d.label);
    throw std::invalid_argument("unknown sniper deviation '" + label + "'");
  }
  if (spec.rfind("at:", 0) == 0) {
    std::vector<double> moments;
    for (const auto& part : split(spec.substr(3), ',')) {
      std::size_t used = 0;
      double t = 0.0;
      try {
        t = std::stod(part, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != part.size()) throw std::invalid_argument("bad shot moment '" + part + "'");
      moments.push_back(t);
    }
    return std::make_unique<duel::ScriptedSniper>(duel::SniperSchedule(moments), "at");
  }
  throw std::invalid_argument("--sniper must be T, at:<t,...> or dev:<label>, got '" + spec + "'");
}

struct SimulateFlags {
  std::string gunner = "T";
  std::string sniper = "T";
  std::string tie = "both";
  std::uint64_t seed = 1;
  int suite_size = 50;
  std::string out = "simulate.json";
};

int cmd_simulate(const GameFlags& flags, const std::string& table_path, const SimulateFlags& sim,
                 Manifest& manifest) {
  const duel::TieBreak tie = duel::parse_tie_break(sim.tie);
  const Game game = resolve_game(flags, table_path);
  manifest.set_game(game);
  const duel::TTable table = duel::solve_game(game.params, game.config);
  const bool scripted = sim.gunner.rfind("dev:", 0) == 0 || sim.sniper.rfind("dev:", 0) == 0;
  const duel::DeviationSuite suite =
      scripted ? duel::deviation_suite(game.params, table, sim.seed, sim.suite_size)
               : duel::DeviationSuite{};
  const auto gunner = make_gunner(sim.gunner, table, suite);
  const auto sniper = make_sniper(sim.sniper, table, tie, suite);
  const auto result = duel::simulate(*gunner, *sniper, game.params, sim.seed);
  const double v = table.value(game.params.m);

  json transcript = duel::to_json(result);
  transcript["gunner"] = gunner->name();
  transcript["sniper"] = sniper->name();
  transcript["tie"] = duel::to_string(tie);
  transcript["value"] = v;
  duel::write_text(sim.out, duel::rounded(transcript).dump(2) + "\n");
  manifest.add_file(sim.out);
  manifest.write(manifest_path(sim.out));
  std::printf("payoff = %s\nv_%d(a) = %s\nwrote %s\n", g12(result.payoff).c_str(), game.params.m,
              g12(v).c_str(), sim.out.c_str());
  return kOk;
}

int cmd_verify(const std::string& table_path, const duel::VerifyOptions& options,
               const std::string& report) {
  const duel::TableFile file = duel::read_table(table_path);
  const auto results = duel::verify_table(file, options);
  json items = json::array();
  for (const auto& r : results) {
    std::printf("%s %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    items.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  if (!report.empty()) duel::write_text(report, json{{"table", table_path}, {"checks", items}}.dump(2) + "\n");
  return duel::all_passed(results) ? kOk : kVerifyFailure;
}

int cmd_oracle_compare(const GameFlags& flags, const std::vector<int>& sizes, int packets_per_step,
                       const std::string& out, Manifest& manifest) {
  const Game game{flags.params(), flags.config};
  if (sizes.empty()) throw std::invalid_argument("--sizes is empty");
  for (int n : sizes)
    duel::DiscreteGameSpec{game.params, n, n, packets_per_step}.validate();
  manifest.set_game(game);
  const duel::TTable table = duel::solve_game(game.params, game.config);
  const auto rows =
      duel::convergence_sweep(game.params, sizes, table.value(game.params.m), packets_per_step);
  const std::string csv = duel::convergence_csv(rows);
  duel::write_text(out, csv);
  manifest.add_file(out);
  manifest.write(manifest_path(out));
  std::fputs(csv.c_str(), stdout);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for the continuous-versus-discrete noisy duel"};
  app.set_help_flag("--help", "print help");  // -h is taken by the grid step --h
  app.set_version_flag("--version", DUEL_VERSION);
  app.require_subcommand(1);

  GameFlags solve_flags, value_flags, sim_flags, oracle_flags;
  std::string solve_out = "table";
  auto* solve = app.add_subcommand("solve", "tabulate T_1..T_m and write CSV, sidecar and manifest");
  solve_flags.add(solve);
  solve->add_option("--out", solve_out, "output prefix for <prefix>.csv and <prefix>.json")
      ->capture_default_str();

  std::string value_table;
  double value_x = -1.0;
  auto* value = app.add_subcommand("value", "print v_0..v_m in both closed forms");
  value_flags.add(value);
  value->add_option("--table", value_table, "sidecar JSON of a solved table");
  value->add_option("--x", value_x, "resource level (default: a)");

  std::string sim_table;
  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "play two strategies and write a JSON transcript");
  sim_flags.add(simulate);
  simulate->add_option("--table", sim_table, "sidecar JSON of a solved table");
  simulate->add_option("--gunner", sim.gunner, "T or dev:<label>")->capture_default_str();
  simulate->add_option("--sniper", sim.sniper, "T, at:<t1,...,tm> or dev:<label>")->capture_default_str();
  simulate->add_option("--tie", sim.tie, "gunner-first, sniper-first, both or random")
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed)->capture_default_str();
  simulate->add_option("--suite-size", sim.suite_size, "deviations generated per side for dev:<label>")
      ->capture_default_str();
  simulate->add_option("--out", sim.out)->capture_default_str();

  std::string verify_table;
  std::string verify_report;
  duel::VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "re-solve a table and run the verification suites");
  verify->add_option("--table", verify_table, "sidecar JSON of a solved table")->required();
  verify->add_option("--plays", verify_options.random_plays, "random T-plays")->capture_default_str();
  verify->add_option("--deviations", verify_options.deviations, "deviations per side")
      ->capture_default_str();
  verify->add_option("--seed", verify_options.seed)->capture_default_str();
  verify->add_option("--report", verify_report, "also write the checks as JSON");

  std::vector<int> sizes{250, 500, 1000, 2000};
  int packets_per_step = 16;
  std::string oracle_out = "convergence.csv";
  auto* oracle = app.add_subcommand("oracle-compare", "compare against the discrete game");
  oracle_flags.add(oracle);
  oracle->add_option("--sizes", sizes, "N = Q values")->delimiter(',')->capture_default_str();
  oracle->add_option("--packets-per-step", packets_per_step)->capture_default_str();
  oracle->add_option("--out", oracle_out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (*solve) {
      Manifest manifest("solve", args);
      return cmd_solve(solve_flags, solve_out, manifest);
    }
    if (*value) return cmd_value(value_flags, value_table, value_x);
    if (*simulate) {
      Manifest manifest("simulate", args);
      return cmd_simulate(sim_flags, sim_table, sim, manifest);
    }
    if (*verify) return cmd_verify(verify_table, verify_options, verify_report);
    if (*oracle) {
      Manifest manifest("oracle-compare", args);
      return cmd_oracle_compare(oracle_flags, sizes, packets_per_step, oracle_out, manifest);
    }
  } catch (const duel::SolverError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kSolverFailure;
  } catch (const duel::OdeError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kSolverFailure;
  } catch (const duel::BracketError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSolverFailure;
  }
  return kOk;
}
