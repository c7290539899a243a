#pragma once

#include <cstddef>
#include <vector>

namespace duel {

// Piecewise cubic Hermite interpolant through (x_i, y_i) with prescribed
// slopes. Knots must be strictly increasing. Outside [x_0, x_n] the end
// polynomials are extended.
class CubicHermite {
 public:
  CubicHermite() = default;
  CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> dy);

  double operator()(double x) const;
  double derivative(double x) const;

  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& slopes() const { return dy_; }
  bool empty() const { return x_.empty(); }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_, y_, dy_;
};

// Fritsch-Carlson monotone slopes; monotone data gives a monotone interpolant.
std::vector<double> monotone_slopes(const std::vector<double>& x, const std::vector<double>& y);

inline CubicHermite monotone_cubic(std::vector<double> x, std::vector<double> y) {
  auto dy = monotone_slopes(x, y);
  return CubicHermite(std::move(x), std::move(y), std::move(dy));
}

}  // namespace duel
