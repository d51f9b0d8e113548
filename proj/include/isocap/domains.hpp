#pragma once

// Catalog of domain families with their isocapacitary functions nu_p,
// isoperimetric functions lambda, volume transforms, and the exact weighted
// one-dimensional condenser capacity used as ground truth.
//
// Catalog formulas known only up to multiplicative constants are implemented
// with constant 1 and flagged kTwoSided (or kLowerBoundOnly when only a lower
// bound is available). Profile-reducible families (ball, cusp, funnel) carry
// the exact end-anchored capacity of their weighted 1D model instead, which
// removes unknown constants from verification.

#include <optional>
#include <string>

#include "isocap/numerics.hpp"

namespace isocap {

enum class Family {
  kLipschitzBall,
  kHolder,
  kGammaJohn,
  kCusp,
  kFunnel,
  kCouhilComb,
  kNikodymComb,
  kCustom,
};

enum class Exactness { kExact, kTwoSided, kLowerBoundOnly };

std::string family_name(Family f);
std::string exactness_name(Exactness e);

// One-dimensional profile (cusp theta, funnel zeta, comb delta).
struct Profile {
  enum class Kind { kPower, kExp, kCustom };
  Kind kind = Kind::kPower;
  double exponent = 1.0;  // power: r^exponent (cusp/comb) or (1+r)^-exponent
                          // (funnel); exp: exp(-r^exponent) (funnel)
  Fn fn;                  // custom profile
  double operator()(double r) const;
};

struct DomainSpec {
  Family family = Family::kCustom;
  int dimension = 2;
  double c0 = 1.0;       // cross-section normalization constant
  double measure = 1.0;  // |Omega|; computed from profiles where applicable

  // family parameters
  double holder_alpha = 0.5;
  double john_gamma = 1.0;
  Profile cusp_theta;
  double cusp_length = 1.0;
  Profile funnel_zeta;
  Profile comb_delta;
  Fn custom_nu;               // nu_p(s) for the Custom family
  Fn custom_lambda;           // optional
  Exactness custom_exactness = Exactness::kExact;
  std::optional<double> custom_exponent;

  static DomainSpec lipschitz_ball(int n, double measure = 1.0,
                                   double c0 = 1.0);
  static DomainSpec holder(int n, double alpha, double measure = 1.0);
  static DomainSpec gamma_john(int n, double gamma, double measure = 1.0);
  static DomainSpec cusp_power(int n, double kappa, double length = 1.0,
                               double c0 = 1.0);
  static DomainSpec cusp_custom(int n, Fn theta, double length,
                                double c0 = 1.0);
  static DomainSpec funnel_power(int n, double beta, double c0 = 1.0);
  static DomainSpec funnel_exp(int n, double alpha, double c0 = 1.0);
  static DomainSpec couhil_power(double alpha, double measure = 1.0);
  static DomainSpec nikodym_power(double alpha, double measure = 1.0);
  static DomainSpec custom(Fn nu, double measure,
                           Exactness exactness = Exactness::kExact,
                           std::optional<double> exponent = std::nullopt);
};

// s -> nu_p(s) on (0, |Omega|/2) together with the density of the Stieltjes
// measure d(-D nu_p^{1/(1-p)}).
struct IsocapFn {
  double p = 2.0;
  double measure = 1.0;
  Fn evaluate;
  StieltjesWeight weight;
  Exactness exactness = Exactness::kTwoSided;
  std::optional<double> asymptotic_exponent;      // nu_p(s) ~ s^theta
  std::optional<double> asymptotic_log_exponent;  // ... (log 1/s)^L
  bool lower_bound_only() const {
    return exactness == Exactness::kLowerBoundOnly;
  }
};

struct IsoperFn {
  double measure = 1.0;
  Fn evaluate;
  Exactness exactness = Exactness::kTwoSided;
  std::optional<double> asymptotic_exponent;
};

// Model isocapacitary function of the family; throws std::invalid_argument
// when p (or a family parameter) violates the validity range of the catalog
// formula, naming the violated condition.
IsocapFn nu_p(const DomainSpec& domain, double p);

// Model isoperimetric function.
IsoperFn lambda_iso(const DomainSpec& domain);

// Lower bound (int_s^{M/2} lambda(r)^{-p'} dr)^{1-p} induced by lambda.
// A divergent inner integral yields value 0, flagged by the zero value.
IsocapFn nu_from_lambda(const IsoperFn& lam, double p, double measure);

// Cumulative cross-section mass Theta(rho) = c0 int_0^rho theta^{n-1}.
double theta_transform(const DomainSpec& cusp, double rho);
double theta_inverse(const DomainSpec& cusp, double s);

// Tail mass Upsilon(rho) = c0 int_rho^inf zeta^{n-1}; throws when the
// profile's tail integral is not finite (infinite-volume funnel).
double upsilon_transform(const DomainSpec& funnel, double rho);
double upsilon_inverse(const DomainSpec& funnel, double s);

struct Capacity1D {
  double value = 0.0;
  bool zero_capacity = false;  // divergent resistance integral
};

// Exact capacity of the interval condenser ([0,a],[0,g]) for the weighted
// energy int_0^T A |u'|^p: (int_a^g A^{-1/(p-1)})^{1-p}.
Capacity1D condenser_capacity_1d(const Fn& A, double p, double a, double g);

// Radial condenser capacity between concentric balls of radii r < R, via the
// weight A(tau) = c0 tau^{n-1}. Requires 1 < p <= n; the p = n branch
// produces the logarithmic form.
double condenser_capacity_radial(int n, double p, double r, double R,
                                 double c0 = 1.0);

// Weighted one-dimensional reduction shared with the solver: weight A on
// (0, T) carrying total mass `measure`.
struct WeightedModel {
  Fn A;
  double T = 1.0;
  double measure = 1.0;
  double c0 = 1.0;
  std::string name;
  Fn mass_at;        // coordinate -> cumulative mass
  Fn coord_at_mass;  // inverse of mass_at
};

WeightedModel interval_model(double length = 1.0);
WeightedModel ball_model(int n, double measure = 1.0, double c0 = 1.0);
WeightedModel cusp_model(const DomainSpec& cusp);

// Exact end-anchored isocapacitary function of a weighted model:
// nu_p(s) = capacity([0, x(s)], [0, x(M/2)]).
IsocapFn profile_exact_nu(const WeightedModel& model, double p);

// Closed form of profile_exact_nu for the interval model:
// nu_p(s) = (M/2 - s)^{1-p}.
IsocapFn interval_exact_nu(double p, double length = 1.0);

// Power-law model nu_p(s) = s^theta (constant 1); test and sweep helper.
IsocapFn power_isocap(double p, double theta, double measure,
                      Exactness exactness = Exactness::kExact);
IsocapFn constant_isocap(double p, double c, double measure);

}  // namespace isocap
