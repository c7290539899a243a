#pragma once

#include <string>
#include <vector>

#include "duel/accuracy.hpp"

namespace duel {

// Discrete-time version of the duel: N steps on [0, 1], the gunner's resource
// split into Q equal packets. Both sides move simultaneously at each step.
struct DiscreteGameSpec {
  DuelParameters params;
  int steps = 100;
  int packets = 100;
  // Packets the gunner may release in one step (1 gives the plain 2x2 stage game).
  int max_packets_per_step = 16;

  void validate() const;
};

// Value of a zero-sum game whose row player picks one of the given rows and
// whose column player chooses between two columns.
double two_column_value(const std::vector<double>& col0, const std::vector<double>& col1);

double discrete_value(const DiscreteGameSpec& spec);

struct ConvergenceRow {
  int steps;
  int packets;
  double discrete;
  double solver;
  double gap;
};

// Runs N = Q = size for each size, in parallel.
std::vector<ConvergenceRow> convergence_sweep(const DuelParameters& params,
                                              const std::vector<int>& sizes, double solver_value,
                                              int max_packets_per_step = 16);

std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace duel
