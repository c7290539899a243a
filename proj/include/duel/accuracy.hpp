#pragma once

#include <memory>
#include <string>
#include <vector>

namespace duel {

// Probabilities within this distance of t = 1 are evaluated at 1 - kClip
// whenever a logarithm of 1 - P(t) is taken.
inline constexpr double kClip = 1e-12;

class AccuracyFunction {
 public:
  enum class Kind { Power, Tabulated, Composed };

  struct Curve;

  // Identity accuracy P(t) = t.
  AccuracyFunction();

  static AccuracyFunction power(double c);
  static AccuracyFunction tabulated(std::vector<double> t, std::vector<double> p,
                                    std::string source = "");
  static AccuracyFunction from_csv(const std::string& path);
  // Accepts "power:<c>" or "csv:<path>".
  static AccuracyFunction parse(const std::string& spec);

  double operator()(double t) const;
  // 1 - P(t), computed without cancellation where the family allows it.
  double complement(double t) const;
  double derivative(double t) const;
  // Smallest t with P(t) = y.
  double inverse(double y) const;

  Kind kind() const;
  std::string spec() const;
  bool is_identity() const;
  bool strictly_increasing() const;

 private:
  explicit AccuracyFunction(std::shared_ptr<const Curve> curve) : curve_(std::move(curve)) {}
  friend AccuracyFunction compose_with_inverse(const AccuracyFunction&, const AccuracyFunction&);

  std::shared_ptr<const Curve> curve_;
};

// t -> outer(inner^{-1}(t)). `inner` must be strictly increasing.
AccuracyFunction compose_with_inverse(const AccuracyFunction& outer, const AccuracyFunction& inner);

struct DuelParameters {
  AccuracyFunction p1;
  AccuracyFunction p2;
  double a = 1.0;
  int m = 1;
  double A1 = 1.0;
  double A2 = 1.0;

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

// p(t) = 1 - P(t) and q(t) = 1 - P(t); both reject t outside [0, 1].
double eval_p(const AccuracyFunction& P, double t);
double eval_q(const AccuracyFunction& P, double t);
// ln(1 - P(t)) with t clamped to 1 - kClip.
double eval_log_p(const AccuracyFunction& P, double t);

// The game re-timed so that the sniper's accuracy becomes the identity.
struct NormalizedGame {
  DuelParameters params;
  AccuracyFunction original_p2;

  // Pulls a normalized moment back to original time.
  double back(double tau) const;
  double back_derivative(double tau) const;
};

NormalizedGame normalize_p2(const DuelParameters& params);

}  // namespace duel
