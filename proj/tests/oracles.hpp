#pragma once

// Reference values computed outside this code base and frozen here.

#include <cmath>
#include <vector>

namespace oracle {

// P1(t) = t, quadrature at 30 digits (mpmath).
inline constexpr double kX05 = 0.571498743652464668;  // x(0.5) = -int_0.5^1 dt / (t ln(1-t))
inline constexpr double kT1At1 = 0.389865414707390386;  // T_1(1)
inline constexpr double kV1At1 = 0.220269170585219228;  // v_1(1) = 2(1 - T_1(1)) - 1
// Root f_2 of the second level's numerator at x = 1e-4.
inline constexpr double kF2At1em4 = 0.784529237394684;

struct Segment {
  double t0, t1, a0, a1;  // linear alpha from a0 at t0 to a1 at t1
};

// int_{lo}^{hi} ln(1 - tau) d(-alpha) for P1(t) = t on piecewise-linear alpha,
// via the antiderivative -(1 - tau) ln(1 - tau) - tau.
inline double log_escape_linear(const std::vector<Segment>& path, double lo, double hi) {
  auto F = [](double t) { return t >= 1.0 ? -1.0 : -(1.0 - t) * std::log1p(-t) - t; };
  double total = 0.0;
  for (const auto& s : path) {
    const double a = std::max(lo, s.t0), b = std::min(hi, s.t1);
    if (!(b > a)) continue;
    const double xi = (s.a0 - s.a1) / (s.t1 - s.t0);
    total += xi * (F(b) - F(a));
  }
  return total;
}

inline double alpha_at(const std::vector<Segment>& path, double t) {
  for (const auto& s : path)
    if (t <= s.t1) return t <= s.t0 ? s.a0 : s.a0 + (s.a1 - s.a0) * (t - s.t0) / (s.t1 - s.t0);
  return path.back().a1;
}

// The payoff written as its recursion over the earliest remaining shot, for
// P1(t) = t, P2(t) = t^c and no burst. `shots` are chronological.
inline double recursive_payoff(const std::vector<Segment>& path, std::vector<double> shots,
                               double c, double A1, double A2, double from = 0.0) {
  if (shots.empty()) return alpha_at(path, from) > 0.0 ? A1 : 0.0;
  const double eta = shots.front();
  shots.erase(shots.begin());
  const double phi = 1.0 - std::exp(log_escape_linear(path, from, eta));
  const double hit = std::pow(eta, c);
  return A1 * phi - A2 * (1.0 - phi) * hit +
         (1.0 - hit) * (1.0 - phi) * recursive_payoff(path, shots, c, A1, A2, eta);
}

}  // namespace oracle
