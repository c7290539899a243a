#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace duel {

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bisection for a function with a sign change on [lo, hi]. Stops when the
// bracket is narrower than `tol` or cannot be split further in floating point.
template <class F>
double bisect(F&& f, double lo, double hi, double tol, int max_iter = 400) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]: f(lo)=" << flo << ", f(hi)=" << fhi;
    throw BracketError(msg.str());
  }
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Newton iteration safeguarded by a shrinking bracket; falls back to a
// bisection step whenever the Newton update leaves the bracket.
template <class F, class DF>
double newton_bracketed(F&& f, DF&& df, double lo, double hi, double guess, double tol,
                        int max_iter = 100) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]";
    throw BracketError(msg.str());
  }
  const bool rising = fhi > 0;
  double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
  for (int i = 0; i < max_iter; ++i) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0) == rising) {
      hi = x;
    } else {
      lo = x;
    }
    const double d = df(x);
    double next = (d != 0.0 && std::isfinite(d)) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= tol || hi - lo <= tol) return next;
    x = next;
  }
  return x;
}

}  // namespace duel
