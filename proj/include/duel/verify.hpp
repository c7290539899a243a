#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "duel/io.hpp"
#include "duel/solver.hpp"

namespace duel {

struct VerifyOptions {
  double residual_tol = 1e-5;
  double value_tol = 1e-6;
  double play_tol = 1e-4;
  double file_tol = 1e-9;  // file curves against the re-solved table
  int random_plays = 20;
  int deviations = 20;  // per side
  std::uint64_t seed = 7;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Equilibrium residual of tabulated curves: the integral on [0, a0] comes
// from the solved table, the rest from a monotone cubic through the file values.
double file_curve_residual(const TableFile& file, const TTable& table, double x, int k);

// Re-solves the game described by the sidecar and checks the file against it.
std::vector<CheckResult> verify_table(const TableFile& file, const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace duel
