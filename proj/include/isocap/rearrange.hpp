#pragma once

// Rearrangement toolkit on sampled functions: distribution function,
// decreasing/increasing rearrangement, median, positive/negative parts,
// Hardy-Littlewood checks, Lorentz and Marcinkiewicz norms. Supports a
// non-uniform weight density so profile-reduced models can reuse it.

#include <optional>
#include <utility>
#include <vector>

#include "isocap/numerics.hpp"

namespace isocap {

// Piecewise-constant function of one cell value per grid cell; the carrier
// for measurable functions on a weighted interval.
struct SampledFn {
  std::vector<double> edges;    // size N+1, 0 = edges[0] < ... < edges[N] = T
  std::vector<double> values;   // size N, one value per cell
  std::vector<double> weights;  // size N, weight density A_i >= 0

  int cells() const { return static_cast<int>(values.size()); }
  double cell_mass(int i) const {
    return weights[i] * (edges[i + 1] - edges[i]);
  }
  double total_mass() const;
  void validate() const;

  // Uniform grid, u (and optionally A) sampled at cell midpoints.
  static SampledFn sample(const Fn& u, double T, int cells,
                          const Fn& A = nullptr);
  static SampledFn from_cells(std::vector<double> edges,
                              std::vector<double> values,
                              std::vector<double> weights = {});
};

// Right-closed step function on the mass axis: value vals[k] on
// (cuts[k-1], cuts[k]], with cuts[-1] = 0. Queries beyond the last cut
// return 0. This is the left-continuous representative used for
// rearrangements.
struct StepFunction {
  std::vector<double> cuts;  // ascending, cuts.back() == total mass
  std::vector<double> vals;

  double operator()(double s) const;
  double mass() const { return cuts.empty() ? 0.0 : cuts.back(); }
  double integral() const;
  double integral_upto(double s) const;  // exact on pieces
  double max_value() const;
};

// Exact piecewise-linear antiderivative s -> int_0^s f, for a step f.
struct CumulativeStep {
  std::vector<double> x;  // 0 = x[0] < ... ; breakpoints
  std::vector<double> y;  // cumulative values, y[0] = 0
  double operator()(double s) const;  // clamped linear interpolation
  static CumulativeStep of(const StepFunction& f);
};

// Weighted measure of {|u| >= t}; non-increasing and right-continuous in t.
double distribution_function(const SampledFn& u, double t);

// u*(s) = sup{ t >= 0 : mu_u(t) >= s }; equimeasurable with |u| by
// construction (exact cell masses, no interpolation).
StepFunction decreasing_rearrangement(const SampledFn& u);

// u_*(s) = u*(M - s).
StepFunction increasing_rearrangement(const SampledFn& u);

// med(u) = sup{ t : |{u > t}| >= M/2 } over the discrete distribution.
double median(const SampledFn& u);

// u = plus - minus with both parts nonnegative.
std::pair<SampledFn, SampledFn> pos_neg_split(const SampledFn& u);

// Weighted L^q norm; q = inf gives max |u_i|.
double lq_norm(const SampledFn& u, double q);

// ( int_0^M (s^{1/sigma} u*(s))^rho ds/s )^{1/rho}, computed exactly on the
// pieces of u*.
double lorentz_norm(const SampledFn& u, double sigma, double rho);
double lorentz_norm(const StepFunction& ustar, double sigma, double rho);

// sup_s omega(s) u*(s) for a bounded non-decreasing omega.
double marcinkiewicz_norm(const SampledFn& u, const Fn& omega);
double marcinkiewicz_norm(const StepFunction& ustar, const Fn& omega);

struct HardyLittlewoodReport {
  double lower = 0.0;   // int u* v_*
  double middle = 0.0;  // int |u v|
  double upper = 0.0;   // int u* v*
  bool ok(double slack = 1e-10) const {
    return lower <= middle + slack && middle <= upper + slack;
  }
};
HardyLittlewoodReport check_hardy_littlewood(const SampledFn& u,
                                             const SampledFn& v);

struct SubadditivityReport {
  double worst_sum_gap = 0.0;   // min over s of u*(s/2)+v*(s/2)-(u+v)*(s)
  double worst_prod_gap = 0.0;  // min over s of u*(s/2)v*(s/2)-(uv)*(s)
  bool ok(double slack = 1e-10) const {
    return worst_sum_gap >= -slack && worst_prod_gap >= -slack;
  }
};
SubadditivityReport check_subadditivity_surrogates(const SampledFn& u,
                                                   const SampledFn& v);

// A Neumann datum in rearranged form: f*, f+*, f-* on (0, M) with the
// integrability exponent and norm it was measured in.
struct RearrangedDatum {
  StepFunction f_star;
  StepFunction f_plus_star;
  StepFunction f_minus_star;
  double q = 1.0;       // may be inf
  double norm_q = 0.0;
  double mass = 0.0;
  double compatibility_residual = 0.0;

  const StepFunction& part(bool plus) const {
    return plus ? f_plus_star : f_minus_star;
  }
  double l1_part(bool plus) const { return part(plus).integral(); }

  // Builds from samples; requires int A f = 0 within 1e-10 relative.
  static RearrangedDatum from_sampled(const SampledFn& f, double q);
  // Builds from explicit rearranged parts with disjoint supports.
  static RearrangedDatum from_star_pair(StepFunction plus, StepFunction minus,
                                        double q, double mass);
};

}  // namespace isocap
