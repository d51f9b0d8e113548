#pragma once

// Test-only oracles, independent of the library's integration and
// rearrangement paths: fixed-panel quadrature (linear and log spacing),
// rearrangement by distribution-function inversion, and the closed-form
// threshold table for power-law isocapacitary functions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

using Fn = std::function<double(double)>;

// plain composite midpoint rule with n equal panels
inline double midpoint_fixed(const Fn& f, double a, double b, long n) {
  const double h = (b - a) / n;
  double acc = 0.0;
  for (long i = 0; i < n; ++i) acc += f(a + (i + 0.5) * h);
  return acc * h;
}

// composite midpoint rule with n log-spaced panels on (a, b), a > 0
inline double midpoint_fixed_log(const Fn& f, double a, double b, long n) {
  const double la = std::log(a), lb = std::log(b);
  const double h = (lb - la) / n;
  double acc = 0.0;
  for (long i = 0; i < n; ++i) {
    const double x = std::exp(la + (i + 0.5) * h);
    acc += f(x) * x;  // dx = x dy under x = e^y
  }
  return acc * h;
}

// decreasing rearrangement by inversion of the distribution function:
// mu(t) = sum of masses with |v| >= t, then u*(s) = sup{t : mu(t) >= s},
// evaluated by scanning the distinct levels (independent of the sorting
// route used by the library)
inline double rearrangement_by_inversion(const std::vector<double>& values,
                                         const std::vector<double>& masses,
                                         double s) {
  std::vector<double> levels;
  levels.reserve(values.size());
  for (double v : values) levels.push_back(std::abs(v));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  auto mu = [&](double t) {
    double m = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
      if (std::abs(values[i]) >= t) m += masses[i];
    }
    return m;
  };
  double best = 0.0;
  for (double t : levels) {
    if (mu(t) >= s) best = std::max(best, t);
  }
  return best;
}

// Closed-form criterion verdicts for nu_p(s) = s^theta; true means the
// criterion holds. Derived by elementary power-integral comparison at 0.
struct PowerLawOracle {
  double p, theta;

  static bool power_integral_converges(double exponent) {
    return exponent > -1.0;
  }
  double qprime(double q) const {
    return std::isinf(q) ? 1.0 : q / (q - 1.0);
  }
  bool wp_401(double q) const {
    return power_integral_converges((1.0 - theta) * qprime(q) / p);
  }
  bool wp_402() const {
    return power_integral_converges((1.0 - theta) / p - 1.0);
  }
  bool sol_ci(double q, double sigma) const {
    return (p - 1.0) / sigma + 1.0 / qprime(q) - theta >= 0.0;
  }
  bool sol_cii(double q, double sigma) const {
    return power_integral_converges((1.0 - theta) * sigma * q /
                                    (q * (p - 1.0) - sigma));
  }
  bool sol_ciii(double sigma) const {
    return power_integral_converges((1.0 - theta) * sigma / (p - 1.0));
  }
  bool grad_5teri(double q, double sigma) const {
    return 1.0 + p * (p - 1.0) / sigma - p / q - theta >= 0.0;
  }
  bool grad_5terii(double q, double sigma) const {
    return power_integral_converges((1.0 - theta) * sigma * q /
                                    (p * (q * (p - 1.0) - sigma)));
  }
  bool grad_5teriii(double sigma) const {
    return power_integral_converges((1.0 - theta) * sigma / (p * (p - 1.0)));
  }
  bool grad_5teriv(double sigma) const {
    return power_integral_converges(
        (1.0 - theta) * sigma / (p * (p - 1.0)) - sigma / (p - 1.0));
  }
  bool lor_625(double q, double sigma, double rho, double gamma) const {
    const double e0 = 1.0 + p * (p - 1.0) / sigma - p / q - theta;
    const double e = rho * gamma / (p * (gamma - rho) * (p - 1.0));
    return power_integral_converges(e0 * e - 1.0);
  }
  bool emb_2002(double sigma) const { return p / sigma - theta >= 0.0; }
  bool emb_2002p(double sigma) const {
    return power_integral_converges((p / sigma - theta) * sigma / (p - sigma) -
                                    1.0);
  }
};

}  // namespace oracles
