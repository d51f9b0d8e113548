#pragma once

// Exact oracle: the weighted one-dimensional p-Laplace Neumann problem
//   -(A |u'|^{p-2} u')' = A f   on (0, T),   A |u'|^{p-1} -> 0 at both ends,
// to which balls, cusps and rectangles reduce, plus verification of the
// pointwise a-priori inequalities against it. Integrating the equation once
// with zero flux at 0 gives A |u'|^{p-2} u' = -F with F(t) = int_0^t A f, so
// u' = -sign(F) |F/A|^{1/(p-1)} and u follows by one more integration and a
// median shift.

#include <optional>

#include "isocap/bounds.hpp"
#include "isocap/domains.hpp"
#include "isocap/rearrange.hpp"

namespace isocap {

struct NeumannSolution {
  double p = 2.0;
  double T = 1.0;
  double mass = 1.0;  // int_0^T A dt
  double h = 0.0;
  std::vector<double> t;    // cell edges, size N+1
  std::vector<double> u;    // at edges, median-normalized
  std::vector<double> du;   // at edges
  std::vector<double> F;    // cumulative int_0^t A f at edges
  std::vector<double> tm;   // cell midpoints, size N
  std::vector<double> um;   // u at midpoints
  std::vector<double> dum;  // u' at midpoints
  std::vector<double> Fm;   // F at midpoints
  std::vector<double> Am;   // weight at midpoints
  double compatibility_residual = 0.0;
  bool median_normalized = true;

  int cells() const { return static_cast<int>(tm.size()); }
  // u (or u±) as a sampled function with the model weights
  SampledFn solution_samples(std::optional<Sign> sign = std::nullopt) const;
  // |u'| restricted to {±u > 0} (or everywhere), with the model weights
  SampledFn gradient_samples(std::optional<Sign> sign = std::nullopt) const;
  double max_part(Sign sign) const;  // max of u± over midpoints
  // weighted measure of { ±u >= level } with in-cell linear interpolation
  double mass_above(Sign sign, double level) const;
};

// Solves the weighted problem on a uniform grid of `cells` cells. The datum
// must satisfy the compatibility condition int_0^T A f = 0 within 1e-10
// relative; A must be positive in the interior (it may vanish at 0).
NeumannSolution solve_weighted_neumann(const Fn& A, double p, const Fn& f,
                                       int cells, double T);

// Decreasing rearrangement of |u'| restricted to {±u > 0} (or all of (0,T))
// with respect to the measure A dt.
StepFunction weighted_gradient_rearrangement(const NeumannSolution& sol,
                                             std::optional<Sign> sign);

// psi(t) = int_0^t ( sum_{x: u±(x)=tau} A |u'|^{p-1} )^{-1/(p-1)} dtau,
// evaluated at the requested levels. In this model A |u'|^{p-1} = |F| at
// every level crossing.
std::vector<double> psi_function(const NeumannSolution& sol, Sign sign,
                                 const std::vector<double>& levels);

enum class VerifyMode { kStrict, kFittedConstant };

struct VerifyReport {
  bool pass = true;
  double worst_ratio = 0.0;  // max LHS/RHS over checked points
  double worst_at = 0.0;     // abscissa (mass or level) of the worst point
  int checked = 0;
  int skipped = 0;
  double fitted_constant = 0.0;  // kFittedConstant mode: sup LHS/RHS
  std::string detail;
};

// u±*(s) <= B(s) (THM_A curves) or |grad u±|*(s) <= B(s) (THM_CONFRGRAD).
// Strict mode allows a relative slack of 1e-3 plus the grid resolution of
// the left-hand side.
VerifyReport verify_bound(const NeumannSolution& sol, Sign sign,
                          const BoundCurve& curve,
                          VerifyMode mode = VerifyMode::kStrict);

// Level-set flux inequality: sum of A |u'|^{p-1} over {u± = t} is at most
// int_0^{mu(t)} f±*(r) dr at a.e. level t.
VerifyReport verify_flux_inequality(const NeumannSolution& sol,
                                    const RearrangedDatum& f, Sign sign,
                                    const std::vector<double>& levels);

// Isocapacitary level-set inequality: nu_p(|{u± >= t}|) <= psi(t)^{1-p}.
VerifyReport verify_isocap_levelset(const NeumannSolution& sol,
                                    const IsocapFn& nu, Sign sign,
                                    const std::vector<double>& levels);

// Coarea identity in the discrete model: the energy of u± below level t
// equals the integral over levels of the crossing sums. The two sides are
// computed by independent traversals and must agree to 1e-6.
VerifyReport verify_coarea(const NeumannSolution& sol, Sign sign,
                           const std::vector<double>& levels);

struct StabilityReport {
  double lhs = 0.0;       // ||grad u - grad v||_{L^{p-1}}
  double rhs = 0.0;       // ||f-g||_q^{1/r} (||f||_q + ||g||_q)^{1/(p-1)-1/r}
  double fitted_k = 0.0;  // lhs / rhs
  double norm_fg = 0.0;   // ||f - g||_q
};

// Evaluates both sides of the continuous-dependence estimate with
// r = max{p, 2} and reports the fitted constant.
StabilityReport verify_stability(const Fn& A, double p, const Fn& f,
                                 const Fn& g, double q, int cells, double T);

// Levels suitable for level-set checks: interior quantiles of (0, max u±),
// avoiding the degenerate top and bottom.
std::vector<double> level_grid(const NeumannSolution& sol, Sign sign,
                               int count);

}  // namespace isocap
