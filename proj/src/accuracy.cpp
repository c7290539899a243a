#include "duel/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "duel/interpolation.hpp"
#include "duel/roots.hpp"

namespace duel {

struct AccuracyFunction::Curve {
  virtual ~Curve() = default;
  virtual double value(double t) const = 0;
  virtual double complement(double t) const { return 1.0 - value(t); }
  virtual double derivative(double t) const = 0;
  virtual double inverse(double y) const = 0;
  virtual Kind kind() const = 0;
  virtual std::string spec() const = 0;
  virtual bool strictly_increasing() const = 0;
  virtual bool is_identity() const { return false; }
};

namespace {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct PowerCurve final : AccuracyFunction::Curve {
  double c;
  explicit PowerCurve(double c) : c(c) {}

  double value(double t) const override { return c == 1.0 ? t : std::pow(t, c); }
  double complement(double t) const override {
    if (c == 1.0) return 1.0 - t;
    if (t <= 0.0) return 1.0;
    return -std::expm1(c * std::log(t));
  }
  double derivative(double t) const override {
    if (c == 1.0) return 1.0;
    if (t <= 0.0) return c < 1.0 ? HUGE_VAL : 0.0;
    return c * std::pow(t, c - 1.0);
  }
  double inverse(double y) const override { return c == 1.0 ? y : std::pow(y, 1.0 / c); }
  AccuracyFunction::Kind kind() const override { return AccuracyFunction::Kind::Power; }
  std::string spec() const override { return "power:" + format_g17(c); }
  bool strictly_increasing() const override { return true; }
  bool is_identity() const override { return c == 1.0; }
};

struct TabulatedCurve final : AccuracyFunction::Curve {
  CubicHermite interp;
  std::string source;
  bool strict = true;

  TabulatedCurve(std::vector<double> t, std::vector<double> p, std::string src)
      : source(std::move(src)) {
    for (std::size_t i = 1; i < p.size(); ++i)
      if (!(p[i] > p[i - 1])) strict = false;
    interp = monotone_cubic(std::move(t), std::move(p));
  }

  double value(double t) const override {
    return std::clamp(interp(std::clamp(t, 0.0, 1.0)), 0.0, 1.0);
  }
  double derivative(double t) const override {
    return std::max(0.0, interp.derivative(std::clamp(t, 0.0, 1.0)));
  }
  double inverse(double y) const override {
    const auto& ys = interp.values();
    const auto& xs = interp.knots();
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    // First knot whose value reaches y; the root lies in the segment before it.
    auto it = std::lower_bound(ys.begin(), ys.end(), y);
    std::size_t i = static_cast<std::size_t>(it - ys.begin());
    if (ys[i] == y) {
      while (i > 0 && ys[i - 1] == y) --i;
      return xs[i];
    }
    const double lo = xs[i - 1], hi = xs[i];
    return newton_bracketed([&](double t) { return interp(t) - y; },
                            [&](double t) { return interp.derivative(t); }, lo, hi,
                            0.5 * (lo + hi), 1e-15);
  }
  AccuracyFunction::Kind kind() const override { return AccuracyFunction::Kind::Tabulated; }
  std::string spec() const override { return "csv:" + source; }
  bool strictly_increasing() const override { return strict; }
};

struct ComposedCurve final : AccuracyFunction::Curve {
  AccuracyFunction outer, inner;
  ComposedCurve(AccuracyFunction o, AccuracyFunction i) : outer(std::move(o)), inner(std::move(i)) {}

  double value(double t) const override { return outer(inner.inverse(t)); }
  double complement(double t) const override { return outer.complement(inner.inverse(t)); }
  double derivative(double t) const override {
    const double s = inner.inverse(t);
    const double di = inner.derivative(s);
    if (di == 0.0) return HUGE_VAL;
    return outer.derivative(s) / di;
  }
  double inverse(double y) const override { return inner(outer.inverse(y)); }
  AccuracyFunction::Kind kind() const override { return AccuracyFunction::Kind::Composed; }
  std::string spec() const override {
    return "compose(" + outer.spec() + "," + inner.spec() + ")";
  }
  bool strictly_increasing() const override { return outer.strictly_increasing(); }
};

void check_unit(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": t=" << t << " outside [0, 1]";
    throw std::domain_error(msg.str());
  }
}

}  // namespace

AccuracyFunction::AccuracyFunction() : curve_(std::make_shared<PowerCurve>(1.0)) {}

AccuracyFunction AccuracyFunction::power(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("power accuracy needs a finite exponent c > 0, got " +
                                format_g17(c));
  return AccuracyFunction(std::make_shared<PowerCurve>(c));
}

AccuracyFunction AccuracyFunction::tabulated(std::vector<double> t, std::vector<double> p,
                                             std::string source) {
  if (t.size() < 2 || t.size() != p.size())
    throw std::invalid_argument("tabulated accuracy needs >= 2 (t, P) samples");
  if (t.front() != 0.0 || t.back() != 1.0)
    throw std::invalid_argument("tabulated accuracy must start at t=0 and end at t=1");
  if (p.front() != 0.0 || p.back() != 1.0)
    throw std::invalid_argument("tabulated accuracy must satisfy P(0)=0 and P(1)=1");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw std::invalid_argument("tabulated t must be strictly increasing");
    if (p[i] < p[i - 1]) throw std::invalid_argument("tabulated P must be nondecreasing");
    if (i + 1 < t.size() && !(p[i] < 1.0))
      throw std::invalid_argument("tabulated P must stay below 1 for t < 1");
  }
  return AccuracyFunction(
      std::make_shared<TabulatedCurve>(std::move(t), std::move(p), std::move(source)));
}

AccuracyFunction AccuracyFunction::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open accuracy table " + path);
  std::vector<double> t, p;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double ti, pi;
    if (!(fields >> ti >> pi)) {
      if (t.empty()) continue;  // header row
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected two numbers");
    }
    t.push_back(ti);
    p.push_back(pi);
  }
  return tabulated(std::move(t), std::move(p), path);
}

AccuracyFunction AccuracyFunction::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("accuracy spec '" + spec + "' must be power:<c> or csv:<path>");
  const std::string family = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (family == "power") {
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size())
      throw std::invalid_argument("bad power exponent in '" + spec + "'");
    return power(c);
  }
  if (family == "csv") {
    if (arg.empty()) throw std::invalid_argument("empty path in '" + spec + "'");
    return from_csv(arg);
  }
  throw std::invalid_argument("unknown accuracy family '" + family + "'");
}

double AccuracyFunction::operator()(double t) const { return curve_->value(t); }
double AccuracyFunction::complement(double t) const { return curve_->complement(t); }
double AccuracyFunction::derivative(double t) const { return curve_->derivative(t); }
double AccuracyFunction::inverse(double y) const { return curve_->inverse(y); }
AccuracyFunction::Kind AccuracyFunction::kind() const { return curve_->kind(); }
std::string AccuracyFunction::spec() const { return curve_->spec(); }
bool AccuracyFunction::is_identity() const { return curve_->is_identity(); }
bool AccuracyFunction::strictly_increasing() const { return curve_->strictly_increasing(); }

AccuracyFunction compose_with_inverse(const AccuracyFunction& outer, const AccuracyFunction& inner) {
  if (!inner.strictly_increasing())
    throw std::invalid_argument("cannot invert non-strictly-increasing accuracy " + inner.spec());
  if (inner.is_identity()) return outer;
  return AccuracyFunction(std::make_shared<ComposedCurve>(outer, inner));
}

void DuelParameters::validate() const {
  if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("resource a must be >= 0");
  if (m < 0) throw std::invalid_argument("shot count m must be >= 0");
  if (!(A1 > 0.0) || !std::isfinite(A1)) throw std::invalid_argument("prize A1 must be > 0");
  if (!(A2 > 0.0) || !std::isfinite(A2)) throw std::invalid_argument("prize A2 must be > 0");
  if (!p2.strictly_increasing())
    throw std::invalid_argument("sniper accuracy " + p2.spec() + " must be strictly increasing");
}

double eval_p(const AccuracyFunction& P, double t) {
  check_unit(t, "eval_p");
  return P.complement(t);
}

double eval_q(const AccuracyFunction& P, double t) {
  check_unit(t, "eval_q");
  return P.complement(t);
}

double eval_log_p(const AccuracyFunction& P, double t) {
  check_unit(t, "eval_log_p");
  return std::log(P.complement(std::min(t, 1.0 - kClip)));
}

double NormalizedGame::back(double tau) const {
  return original_p2.is_identity() ? tau : original_p2.inverse(tau);
}

double NormalizedGame::back_derivative(double tau) const {
  if (original_p2.is_identity()) return 1.0;
  const double d = original_p2.derivative(original_p2.inverse(tau));
  return d > 0.0 ? 1.0 / d : HUGE_VAL;
}

NormalizedGame normalize_p2(const DuelParameters& params) {
  params.validate();
  NormalizedGame game{params, params.p2};
  game.params.p1 = compose_with_inverse(params.p1, params.p2);
  game.params.p2 = AccuracyFunction();
  return game;
}

}  // namespace duel
