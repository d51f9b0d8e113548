#pragma once

// Numerical evaluation of the well-posedness and norm-estimate applicability
// conditions: each operation classifies an improper integral or a sup of a
// power-log quantity built from nu_p (or lambda) and returns a verdict with
// the computed value. Verdicts never overclaim: a "fails" only means the
// criterion fails, and one-sided (lower-bound) inputs can only certify the
// convergent direction.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "isocap/domains.hpp"

namespace isocap {

enum class Verdict { kHolds, kFails, kInconclusive };

std::string verdict_name(Verdict v);

struct CriterionReport {
  std::string criterion_id;
  // parameters in play; quiet NaN when not applicable
  double p = std::numeric_limits<double>::quiet_NaN();
  double q = std::numeric_limits<double>::quiet_NaN();
  double sigma = std::numeric_limits<double>::quiet_NaN();
  double rho = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::kInconclusive;
  std::optional<double> quantity;  // finite integral/sup value when holds
  std::vector<std::string> notes;
};

// q' with the conventions q' = 1 for q = inf; q = 1 is rejected here because
// the q = 1 conditions take a different form.
double conjugate_exponent(double q);

// Unique solvability conditions: for q > 1 the integral of (s/nu_p)^{q'/p}
// over (0, M/2) must be finite (WP_401); for q = 1 the integrand carries an
// extra 1/s (WP_402).
CriterionReport wellposedness(const IsocapFn& nu, double measure, double p,
                              double q);

// ||u||_{L^sigma} <= C ||f||_q^{1/(p-1)} applicability, cases (i)-(iii):
// SOL_Ci (sup), SOL_Cii, SOL_Ciii. (q, sigma) pairs outside the case table
// are rejected.
CriterionReport solution_norm_condition(const IsocapFn& nu, double measure,
                                        double p, double q, double sigma);

// ||grad u||_{L^sigma} applicability, cases (i)-(iv): GRAD_5teri (sup),
// GRAD_5terii, GRAD_5teriii (q = inf), GRAD_5teriv (q = 1).
CriterionReport gradient_norm_condition(const IsocapFn& nu, double measure,
                                        double p, double q, double sigma);

// Lorentz gradient estimate applicability: LOR_624 (sup, gamma <= rho) and
// LOR_625 (integral, gamma > rho).
CriterionReport lorentz_gradient_condition(const IsocapFn& nu, double measure,
                                           double p, double q, double sigma,
                                           double rho, double gamma);

// Isoperimetric route: ISO_301 / ISO_302 evaluate the lambda-based criteria
// directly; equivalent to composing nu_from_lambda with wellposedness.
CriterionReport wellposedness_via_lambda(const IsoperFn& lam, double measure,
                                         double p, double q);

// V^{1,p} -> L^sigma embedding dichotomy: EMB_2002 (sup, sigma >= p) and
// EMB_2002p (integral, sigma < p).
CriterionReport embedding_condition(const IsocapFn& nu, double measure,
                                    double p, double sigma);

}  // namespace isocap
