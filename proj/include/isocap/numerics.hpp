#pragma once

// Quadrature, improper-integral classification, Stieltjes integration and
// generalized inverses shared by the rest of the library. All functions are
// pure; inputs are never mutated.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isocap {

using Fn = std::function<double(double)>;

// Default tolerances: proper integrals are cheap, improper ones are classified
// first and integrated with a looser target.
inline constexpr double kRelTolProper = 1e-8;
inline constexpr double kRelTolImproper = 1e-6;

// Exponent margins for the convergence classifier. A fitted power within
// kPowerMargin of the integrability threshold falls through to the log-factor
// test; a fitted log exponent within kLogMargin of its threshold is reported
// indeterminate instead of guessed.
inline constexpr double kPowerMargin = 0.02;
inline constexpr double kLogMargin = 0.1;

// Thrown when the subdivision budget is exhausted before the tolerance is
// met. Carries the best estimate obtained so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best, double err)
      : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
  double best_estimate;
  double error_estimate;
};

struct QuadratureOptions {
  double rel_tol = kRelTolProper;
  int max_panels = 30000;
};

// Adaptive Gauss-Kronrod 7-15 on (a, b). Endpoints are never evaluated, so
// integrable endpoint singularities of power/log type are handled by
// geometric refinement toward the offending end.
// Throws std::domain_error on a non-finite integrand sample and
// QuadratureError when the panel budget runs out.
double integrate_adaptive(const Fn& f, double a, double b,
                          double rel_tol = kRelTolProper);
double integrate_adaptive(const Fn& f, double a, double b,
                          const QuadratureOptions& opts);

// Semi-infinite integral over (a, inf) via the substitution x = a + t/(1-t).
double integrate_to_infinity(const Fn& f, double a,
                             double rel_tol = kRelTolImproper);

enum class Convergence { kConverges, kDiverges, kIndeterminate };

// Local behaviour f(r) ~ C r^power (log 1/r)^log_power near the singular end,
// r being the distance from it.
struct DivergenceRate {
  double power = 0.0;
  std::optional<double> log_power;
  std::string str() const;
};

struct IntegralVerdict {
  Convergence verdict = Convergence::kIndeterminate;
  double value = 0.0;  // finite when verdict == kConverges
  std::optional<DivergenceRate> divergence_rate;
  double tolerance_used = kRelTolImproper;
  bool converges() const { return verdict == Convergence::kConverges; }
  bool diverges() const { return verdict == Convergence::kDiverges; }
};

enum class SingularEnd { kLower, kUpper };

// Decides finiteness of int_a^b f for nonnegative integrands of power-log
// type near the singular endpoint. The local exponents are fitted on the
// geometric points r_k = (b-a) 2^{-k}, k = 10..40; see kPowerMargin and
// kLogMargin for the decision bands. Oscillating signs near the singular end
// are rejected (std::invalid_argument).
IntegralVerdict classify_improper(const Fn& f, double a, double b,
                                  SingularEnd end,
                                  double rel_tol = kRelTolImproper);

// classify_improper through the map x = 1/t for integrals over (a, inf),
// a > 0. The singular end is infinity.
IntegralVerdict classify_improper_at_infinity(const Fn& f, double a,
                                              double rel_tol = kRelTolImproper);

// Result of the two-regressor least-squares fit
//   log f(r_k) ~ log_amplitude + power log r_k + log_power log log(1/r_k)
// on r_k = scale 2^{-k}, k = k_lo..k_hi, with r measured from the singular
// end. residual_rms is in log space.
struct PowerLogFit {
  double power = 0.0;
  double log_power = 0.0;
  double log_amplitude = 0.0;
  double residual_rms = 0.0;
  bool valid = false;       // false when samples are nonpositive/nonfinite
  bool sign_change = false; // integrand changed sign among the samples
};

PowerLogFit fit_power_log(const Fn& f, double scale, int k_lo = 10,
                          int k_hi = 40);

// Nonnegative density w(r) representing the measure w(r) dr. The library
// only supports absolutely continuous Stieltjes weights; an atom shows up as
// a density blowing up at an interior point and is reported as an error by
// the consumers.
struct StieltjesWeight {
  Fn density;
};

// int_a^b g(r) w(r) dr. Throws std::invalid_argument on a genuinely negative
// weight sample.
double stieltjes_integrate(const Fn& g, const StieltjesWeight& w, double a,
                           double b, double rel_tol = kRelTolProper);

struct InverseResult {
  double s = 0.0;
  bool clipped_low = false;   // y below inf F over the interval
  bool clipped_high = false;  // y above sup F over the interval
};

// Generalized left-continuous inverse of a non-decreasing F on [lo, hi]:
// sup{ s : F(s) < y }, clamped to the interval.
InverseResult generalized_left_inverse(const Fn& F, double lo, double hi,
                                       double y);

// Strictly increasing abscissas in (0, mass) with sampled values; shared grid
// carrier for tabulated curves.
struct Grid {
  std::vector<double> nodes;
  std::vector<double> values;
  double mass = 0.0;

  // node count >= 2, strictly increasing, all inside (0, mass)
  void validate() const;

  static std::vector<double> log_spaced(double lo, double hi, int n);
  static std::vector<double> uniform(double lo, double hi, int n);
};

}  // namespace isocap
