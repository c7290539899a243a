#include "duel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <stdexcept>

namespace duel {
namespace {

constexpr double kMaxStates = 2e9;

double value_2x2(double a, double b, double c, double d) {
  const double lower = std::max(std::min(a, b), std::min(c, d));
  const double upper = std::min(std::max(a, c), std::max(b, d));
  if (lower >= upper) return lower;
  return (a * d - b * c) / (a + d - b - c);
}

// An optimal row mixture needs at most two rows.
double two_column_value(const double* col0, const double* col1, std::size_t rows) {
  double best = -HUGE_VAL;
  for (std::size_t i = 0; i < rows; ++i) {
    best = std::max(best, std::min(col0[i], col1[i]));
    for (std::size_t j = i + 1; j < rows; ++j)
      best = std::max(best, value_2x2(col0[i], col1[i], col0[j], col1[j]));
  }
  return best;
}

}  // namespace

void DiscreteGameSpec::validate() const {
  params.validate();
  if (steps < 1) throw std::invalid_argument("discrete game needs N >= 1 steps");
  if (packets < 0) throw std::invalid_argument("discrete game needs Q >= 0 packets");
  if (max_packets_per_step < 1) throw std::invalid_argument("max packets per step must be >= 1");
  const double states = (steps + 1.0) * (packets + 1.0) * (params.m + 1.0);
  if (states > kMaxStates) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "discrete game with %.3g states exceeds the cap of %.3g",
                  states, kMaxStates);
    throw std::length_error(buf);
  }
}

double two_column_value(const std::vector<double>& col0, const std::vector<double>& col1) {
  if (col0.size() != col1.size() || col0.empty())
    throw std::invalid_argument("two_column_value: columns must be nonempty and equally long");
  return two_column_value(col0.data(), col1.data(), col0.size());
}

double discrete_value(const DiscreteGameSpec& spec) {
  spec.validate();
  const auto& p = spec.params;
  const int N = spec.steps;
  const int Q = p.a > 0.0 ? spec.packets : 0;
  const int m = p.m;
  const double packet = Q > 0 ? p.a / Q : 0.0;
  const auto idx = [m](int q, int n) { return static_cast<std::size_t>(q) * (m + 1) + n; };

  // Final step: leftover packets are spent where P1 = 1, leftover shots fired where P2 = 1.
  std::vector<double> next((Q + 1) * static_cast<std::size_t>(m + 1));
  std::vector<double> cur(next.size());
  for (int q = 0; q <= Q; ++q)
    for (int n = 0; n <= m; ++n) {
      double v = 0.0;  // both succeed, or nobody had anything left
      if (q > 0 && n == 0) v = p.A1;
      if (q == 0 && n > 0) v = -p.A2;
      next[idx(q, n)] = v;
    }

  const int K = spec.max_packets_per_step;
  std::vector<double> hold(static_cast<std::size_t>(K) + 1), fire(hold.size()), success(hold.size());
  for (int i = N - 1; i >= 0; --i) {
    const double t = static_cast<double>(i) / N;
    const double log_miss = std::log(p.p1.complement(t));
    const double hit = p.p2(t);
    for (int j = 0; j <= K; ++j) success[j] = -std::expm1(j * packet * log_miss);
    for (int q = 0; q <= Q; ++q) {
      const int rows = std::min(K, q) + 1;
      for (int n = 0; n <= m; ++n) {
        double best = -HUGE_VAL;
        for (int j = 0; j < rows; ++j) {
          const double g = success[j];
          const double idle = next[idx(q - j, n)];
          hold[j] = g * p.A1 + (1.0 - g) * idle;
          if (n > 0) {
            const double after = next[idx(q - j, n - 1)];
            fire[j] = g * (1.0 - hit) * p.A1 - (1.0 - g) * hit * p.A2 + (1.0 - g) * (1.0 - hit) * after;
          }
          best = std::max(best, hold[j]);
        }
        if (n > 0) best = two_column_value(hold.data(), fire.data(), static_cast<std::size_t>(rows));
        cur[idx(q, n)] = best;
      }
    }
    std::swap(cur, next);
  }
  return next[idx(Q, m)];
}

std::vector<ConvergenceRow> convergence_sweep(const DuelParameters& params,
                                              const std::vector<int>& sizes, double solver_value,
                                              int max_packets_per_step) {
  std::vector<std::future<double>> jobs;
  for (int size : sizes) {
    DiscreteGameSpec spec{params, size, size, max_packets_per_step};
    spec.validate();
    jobs.push_back(std::async(std::launch::async, [spec] { return discrete_value(spec); }));
  }
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double v = jobs[i].get();
    rows.push_back({sizes[i], sizes[i], v, solver_value, std::abs(v - solver_value)});
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "N,Q,discrete,solver,gap\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.12g,%.12g,%.12g\n", r.steps, r.packets, r.discrete,
                  r.solver, r.gap);
    out += buf;
  }
  return out;
}

}  // namespace duel
