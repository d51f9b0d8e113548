#pragma once

// A-priori bound curves for the rearrangements of the solution and of its
// gradient, the pointwise Marcinkiewicz gradient bound, and the stability
// estimate exponents. Norm-level estimates whose constants are
// non-constructive are exposed only through criterion verdicts plus the
// homogeneity exponent 1/(p-1); the curves here are constant-explicit.

#include <cstdint>
#include <vector>

#include "isocap/domains.hpp"
#include "isocap/rearrange.hpp"

namespace isocap {

enum class Provenance { kThmA, kThmConfrgrad, kProp540 };
enum class Sign { kPlus, kMinus };

std::string provenance_name(Provenance p);

struct BoundCurve {
  std::vector<double> s;
  std::vector<double> value;
  // per-point flags: 0 finite, 1 divergent integral (value inf),
  // 2 empty integration range (value 0 by convention)
  std::vector<uint8_t> flags;
  Provenance provenance = Provenance::kThmA;
  bool constants_known = false;  // true when the IsocapFn is exact
};

// B(s) = int_s^{M/2} ( int_0^r f±*(rho) drho )^{1/(p-1)} d(-D nu^{1/(1-p)})(r)
// on s_grid in (0, M/2); non-increasing in s.
BoundCurve solution_rearrangement_bound(const IsocapFn& nu,
                                        const RearrangedDatum& f, Sign sign,
                                        std::vector<double> s_grid);

// B(s) = ( (2/s) int_{s/2}^{M/2} (int_0^r f±*)^{p'} d(-D nu^{1/(1-p)})(r) )^{1/p}
// on s_grid in (0, M); for s/2 >= M/2 the range is empty and B = 0 (flag 2).
BoundCurve gradient_rearrangement_bound(const IsocapFn& nu,
                                        const RearrangedDatum& f, Sign sign,
                                        std::vector<double> s_grid);

// Pointwise form 2^{1/p} ||f±||_1^{1/(p-1)} ( nu^{1/(1-p)}(s/2) / s )^{1/p}.
double marcinkiewicz_gradient_bound(const IsocapFn& nu,
                                    const RearrangedDatum& f, Sign sign,
                                    double s);

// omega_p(s) = ( s nu^{1/(p-1)}(s/2) )^{1/p}, the weight of the gradient's
// Marcinkiewicz space.
Fn marcinkiewicz_weight(const IsocapFn& nu);

struct StabilityExponents {
  double r = 2.0;         // max{p, 2}
  double exp_diff = 0.5;  // 1/r
  double exp_sum = 0.5;   // 1/(p-1) - 1/r
};
StabilityExponents stability_exponents(double p);

// int_0^mass f±*(rho) drho, the level-set flux majorant.
double flux_majorant(const RearrangedDatum& f, Sign sign, double mass);

}  // namespace isocap
