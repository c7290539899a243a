#pragma once

#include <functional>

namespace duel {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (7/15) quadrature on [lo, hi]. The
// integrand is never evaluated at the endpoints, so integrable endpoint
// singularities (e.g. ln(1 - t) at t = 1) are tolerated.
QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, const QuadratureOptions& options = {});

}  // namespace duel
