#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace duel {

class OdeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OdeOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double h_init = 1e-6;
  double h_max = 1e-2;
  double h_min = 1e-15;
  long max_steps = 2'000'000;
};

template <std::size_t N>
struct OdeNode {
  double t;
  std::array<double, N> y;
  std::array<double, N> dy;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
  long vetoed = 0;
};

// Dormand-Prince 5(4) with FSAL and a standard step-size controller.
// Integrates from t0 towards t1 in either direction; returns every accepted
// node with its derivative so callers can build a Hermite interpolant.
// `accept(t, y)` may veto a step that is numerically fine but leaves the
// admissible region; the step is then retried at half size.
template <std::size_t N, class Rhs, class Accept>
std::vector<OdeNode<N>> dormand_prince(Rhs&& f, double t0, const std::array<double, N>& y0,
                                       double t1, const OdeOptions& opt, Accept&& accept,
                                       OdeStats* stats = nullptr) {
  using State = std::array<double, N>;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double dir = t1 >= t0 ? 1.0 : -1.0;
  std::vector<OdeNode<N>> nodes;
  State y = y0;
  State k1 = f(t0, y);
  nodes.push_back({t0, y, k1});
  if (t0 == t1) return nodes;

  double t = t0;
  double h = std::min(std::abs(opt.h_init), opt.h_max);
  OdeStats local;
  State k2, k3, k4, k5, k6, k7, tmp, ynew;

  auto stage = [&](State& out, std::initializer_list<std::pair<double, const State*>> terms,
                   double tc, double step) {
    for (std::size_t i = 0; i < N; ++i) {
      double acc = y[i];
      for (const auto& [coef, k] : terms) acc += step * coef * (*k)[i];
      tmp[i] = acc;
    }
    out = f(tc, tmp);
  };

  for (long n = 0; n < opt.max_steps; ++n) {
    const double remaining = std::abs(t1 - t);
    if (remaining <= 0.0) break;
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    const double s = dir * h;
    stage(k2, {{a21, &k1}}, t + c2 * s, s);
    stage(k3, {{a31, &k1}, {a32, &k2}}, t + c3 * s, s);
    stage(k4, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, t + c4 * s, s);
    stage(k5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, t + c5 * s, s);
    stage(k6, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, t + s, s);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + s * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const double tnew = last ? t1 : t + s;
    k7 = f(tnew, ynew);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double e =
          s * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(e) / scale);
      if (!std::isfinite(ynew[i]) || !std::isfinite(k7[i])) finite = false;
    }
    if (!finite) err = HUGE_VAL;

    if (err <= 1.0 && !accept(tnew, ynew)) {
      ++local.vetoed;
      h *= 0.5;
    } else if (err <= 1.0) {
      ++local.accepted;
      t = tnew;
      y = ynew;
      k1 = k7;
      nodes.push_back({t, y, k1});
      if (last) break;
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * factor, opt.h_max);
    } else {
      ++local.rejected;
      const double factor = std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.1;
      h *= factor;
    }
    if (h < opt.h_min) {
      std::ostringstream msg;
      msg << "step size underflow at t=" << t << " (h=" << h << ")";
      throw OdeError(msg.str());
    }
  }
  if (t != t1) {
    std::ostringstream msg;
    msg << "step budget exhausted at t=" << t << " before reaching " << t1;
    throw OdeError(msg.str());
  }
  if (stats) *stats = local;
  return nodes;
}

}  // namespace duel
