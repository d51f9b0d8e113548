#include "isocap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace isocap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Accumulates int_{lo}^{hi} g w dr over the segments of an ascending grid,
// top-down, so a whole curve costs one sweep of small smooth quadratures.
// Returns partial integrals I[k] = int_{grid[k]}^{hi} g w dr.
std::vector<double> cumulative_tail_integrals(const Fn& g,
                                              const StieltjesWeight& w,
                                              const std::vector<double>& grid,
                                              double hi) {
  std::vector<double> I(grid.size(), 0.0);
  double acc = 0.0;
  double upper = hi;
  for (size_t k = grid.size(); k-- > 0;) {
    if (grid[k] < upper) {
      acc += stieltjes_integrate(g, w, grid[k], upper);
      upper = grid[k];
    }
    I[k] = acc;
  }
  return I;
}

bool sorted_interior(const std::vector<double>& s, double lo, double hi) {
  double prev = lo;
  for (double x : s) {
    if (!(x > prev && x < hi)) return false;
    prev = x;
  }
  return true;
}

}  // namespace

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kThmA: return "THM_A";
    case Provenance::kThmConfrgrad: return "THM_CONFRGRAD";
    case Provenance::kProp540: return "PROP_540";
  }
  return "?";
}

BoundCurve solution_rearrangement_bound(const IsocapFn& nu,
                                        const RearrangedDatum& f, Sign sign,
                                        std::vector<double> s_grid) {
  const double half = 0.5 * nu.measure;
  if (!sorted_interior(s_grid, 0.0, half)) {
    throw std::invalid_argument(
        "solution_rearrangement_bound: s_grid must be ascending inside "
        "(0, measure/2)");
  }
  const CumulativeStep cum =
      CumulativeStep::of(f.part(sign == Sign::kPlus));
  const double e = 1.0 / (nu.p - 1.0);
  auto g = [cum, e](double r) { return std::pow(cum(r), e); };

  BoundCurve curve;
  curve.provenance = Provenance::kThmA;
  curve.constants_known = (nu.exactness == Exactness::kExact);
  curve.flags.assign(s_grid.size(), 0);
  try {
    curve.value = cumulative_tail_integrals(g, nu.weight, s_grid, half);
  } catch (const QuadratureError&) {
    curve.value.assign(s_grid.size(), kInf);
    std::fill(curve.flags.begin(), curve.flags.end(), uint8_t{1});
  }
  curve.s = std::move(s_grid);
  return curve;
}

BoundCurve gradient_rearrangement_bound(const IsocapFn& nu,
                                        const RearrangedDatum& f, Sign sign,
                                        std::vector<double> s_grid) {
  const double half = 0.5 * nu.measure;
  if (!sorted_interior(s_grid, 0.0, nu.measure)) {
    throw std::invalid_argument(
        "gradient_rearrangement_bound: s_grid must be ascending inside "
        "(0, measure)");
  }
  const CumulativeStep cum =
      CumulativeStep::of(f.part(sign == Sign::kPlus));
  const double pp = nu.p / (nu.p - 1.0);
  auto g = [cum, pp](double r) { return std::pow(cum(r), pp); };

  BoundCurve curve;
  curve.provenance = Provenance::kThmConfrgrad;
  curve.constants_known = (nu.exactness == Exactness::kExact);
  curve.flags.assign(s_grid.size(), 0);
  curve.value.assign(s_grid.size(), 0.0);

  std::vector<double> halves;
  halves.reserve(s_grid.size());
  for (double s : s_grid) {
    if (0.5 * s < half) halves.push_back(0.5 * s);
  }
  std::vector<double> tails;
  try {
    tails = cumulative_tail_integrals(g, nu.weight, halves, half);
  } catch (const QuadratureError&) {
    for (size_t k = 0; k < s_grid.size(); ++k) {
      curve.value[k] = kInf;
      curve.flags[k] = 1;
    }
    curve.s = std::move(s_grid);
    return curve;
  }
  for (size_t k = 0; k < s_grid.size(); ++k) {
    const double s = s_grid[k];
    if (0.5 * s >= half) {
      curve.value[k] = 0.0;  // empty range for s >= measure
      curve.flags[k] = 2;
      continue;
    }
    curve.value[k] = std::pow(2.0 / s * tails[k], 1.0 / nu.p);
  }
  curve.s = std::move(s_grid);
  return curve;
}

double marcinkiewicz_gradient_bound(const IsocapFn& nu,
                                    const RearrangedDatum& f, Sign sign,
                                    double s) {
  if (!(s > 0.0 && s < nu.measure)) {
    throw std::invalid_argument(
        "marcinkiewicz_gradient_bound: s must be in (0, measure)");
  }
  const double l1 = f.l1_part(sign == Sign::kPlus);
  const double nu_half = nu.evaluate(0.5 * s);
  const double transformed = std::pow(nu_half, 1.0 / (1.0 - nu.p));
  return std::pow(2.0, 1.0 / nu.p) * std::pow(l1, 1.0 / (nu.p - 1.0)) *
         std::pow(transformed / s, 1.0 / nu.p);
}

Fn marcinkiewicz_weight(const IsocapFn& nu) {
  const Fn eval = nu.evaluate;
  const double p = nu.p;
  return [eval, p](double s) {
    return std::pow(s * std::pow(eval(0.5 * s), 1.0 / (p - 1.0)), 1.0 / p);
  };
}

StabilityExponents stability_exponents(double p) {
  if (!(p > 1.0)) {
    throw std::invalid_argument("stability_exponents: requires p > 1");
  }
  StabilityExponents e;
  e.r = std::max(p, 2.0);
  e.exp_diff = 1.0 / e.r;
  e.exp_sum = 1.0 / (p - 1.0) - 1.0 / e.r;
  return e;
}

double flux_majorant(const RearrangedDatum& f, Sign sign, double mass) {
  if (!(mass >= 0.0 && mass <= f.mass + 1e-12 * f.mass)) {
    throw std::invalid_argument("flux_majorant: mass outside [0, |Omega|]");
  }
  return f.part(sign == Sign::kPlus).integral_upto(mass);
}

}  // namespace isocap
