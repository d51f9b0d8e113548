#include "isocap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace isocap {

namespace {

double signed_root(double xi, double p) {
  // -sign(xi) |xi|^{1/(p-1)}
  if (xi == 0.0) return 0.0;
  const double mag = std::pow(std::abs(xi), 1.0 / (p - 1.0));
  return xi > 0.0 ? -mag : mag;
}

// weighted measure of {x : v(x) > level} for the piecewise-linear v given at
// edges, constant weight per cell
double interp_mass_above(const std::vector<double>& v,
                         const std::vector<double>& Am, double h,
                         double level, bool strict_ge) {
  double m = 0.0;
  const int n = static_cast<int>(Am.size());
  for (int i = 0; i < n; ++i) {
    const double a = v[i], b = v[i + 1];
    const double lo = std::min(a, b), hi = std::max(a, b);
    double frac;
    if (strict_ge ? (lo >= level) : (lo > level)) {
      frac = 1.0;
    } else if (strict_ge ? (hi < level) : (hi <= level)) {
      frac = 0.0;
    } else {
      frac = (hi - level) / (hi - lo);
    }
    m += Am[i] * h * frac;
  }
  return m;
}

// median of the piecewise-linear interpretation: the root of
// mass{u > t} = M/2; resolves the median below grid resolution
double interpolated_median(const std::vector<double>& u,
                           const std::vector<double>& Am, double h,
                           double total_mass) {
  double lo = *std::min_element(u.begin(), u.end());
  double hi = *std::max_element(u.begin(), u.end());
  if (lo == hi) return lo;
  const double half = 0.5 * total_mass;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (interp_mass_above(u, Am, h, mid, /*strict_ge=*/false) >= half) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Crossing {
  double x;
  double flux;  // A |u'|^{p-1} = |F| at the crossing
};

// crossings of the piecewise-linear u± with a level tau > 0; flux from the
// linear interpolant of F
void scan_crossings(const NeumannSolution& sol, Sign sign, double tau,
                    std::vector<Crossing>& out) {
  out.clear();
  const double sg = (sign == Sign::kPlus) ? 1.0 : -1.0;
  const int n = sol.cells();
  for (int i = 0; i < n; ++i) {
    const double a = sg * sol.u[i] - tau;
    const double b = sg * sol.u[i + 1] - tau;
    if (a == 0.0 && b == 0.0) continue;  // plateau: excluded (a.e. statement)
    if ((a < 0.0 && b < 0.0) || (a > 0.0 && b > 0.0)) continue;
    double w = (a == b) ? 0.5 : a / (a - b);
    w = std::clamp(w, 0.0, 1.0);
    const double x = sol.t[i] + w * sol.h;
    const double Fx = sol.F[i] + w * (sol.F[i + 1] - sol.F[i]);
    out.push_back({x, std::abs(Fx)});
  }
}

double crossing_flux_sum(const NeumannSolution& sol, Sign sign, double tau) {
  std::vector<Crossing> cr;
  scan_crossings(sol, sign, tau, cr);
  double s = 0.0;
  for (const Crossing& c : cr) s += c.flux;
  return s;
}

}  // namespace

SampledFn NeumannSolution::solution_samples(std::optional<Sign> sign) const {
  std::vector<double> vals(um.size());
  for (size_t i = 0; i < um.size(); ++i) {
    if (!sign) {
      vals[i] = um[i];
    } else if (*sign == Sign::kPlus) {
      vals[i] = std::max(um[i], 0.0);
    } else {
      vals[i] = std::max(-um[i], 0.0);
    }
  }
  return SampledFn::from_cells(t, std::move(vals), Am);
}

SampledFn NeumannSolution::gradient_samples(std::optional<Sign> sign) const {
  std::vector<double> vals(dum.size());
  for (size_t i = 0; i < dum.size(); ++i) {
    const bool keep = !sign || (*sign == Sign::kPlus ? um[i] > 0.0
                                                     : um[i] < 0.0);
    vals[i] = keep ? std::abs(dum[i]) : 0.0;
  }
  return SampledFn::from_cells(t, std::move(vals), Am);
}

double NeumannSolution::max_part(Sign sign) const {
  double m = 0.0;
  for (double v : um) {
    m = std::max(m, sign == Sign::kPlus ? v : -v);
  }
  return std::max(m, 0.0);
}

double NeumannSolution::mass_above(Sign sign, double level) const {
  std::vector<double> v(u.size());
  const double sg = (sign == Sign::kPlus) ? 1.0 : -1.0;
  for (size_t i = 0; i < u.size(); ++i) v[i] = sg * u[i];
  return interp_mass_above(v, Am, h, level, /*strict_ge=*/true);
}

NeumannSolution solve_weighted_neumann(const Fn& A, double p, const Fn& f,
                                       int cells, double T) {
  if (!(p > 1.0)) {
    throw std::invalid_argument("solve_weighted_neumann: requires p > 1");
  }
  if (cells < 4 || !(T > 0.0)) {
    throw std::invalid_argument("solve_weighted_neumann: bad grid");
  }
  NeumannSolution sol;
  sol.p = p;
  sol.T = T;
  sol.h = T / cells;
  const int n = cells;
  const double h = sol.h;

  sol.t.resize(n + 1);
  for (int i = 0; i <= n; ++i) sol.t[i] = T * i / cells;
  sol.tm.resize(n);
  sol.Am.resize(n);
  std::vector<double> fm(n), g_q1(n), g_q3(n);
  double abs_int = 0.0;
  for (int i = 0; i < n; ++i) {
    const double m = sol.t[i] + 0.5 * h;
    sol.tm[i] = m;
    const double am = A(m);
    if (!(am > 0.0)) {
      throw std::invalid_argument(
          "solve_weighted_neumann: A vanishes in the interior "
          "(disconnected-domain surrogate)");
    }
    sol.Am[i] = am;
    fm[i] = f(m);
    // quarter-point samples keep the cumulative midpoint rule at h/2
    // resolution and never touch cell edges (A may vanish at t = 0)
    const double q1 = sol.t[i] + 0.25 * h, q3 = sol.t[i] + 0.75 * h;
    g_q1[i] = A(q1) * f(q1);
    g_q3[i] = A(q3) * f(q3);
    abs_int += am * std::abs(fm[i]) * h;
  }

  // F at edges and midpoints, composite midpoint rule at half-cell steps
  sol.F.resize(n + 1);
  sol.Fm.resize(n);
  sol.F[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    sol.Fm[i] = sol.F[i] + 0.5 * h * g_q1[i];
    sol.F[i + 1] = sol.Fm[i] + 0.5 * h * g_q3[i];
  }
  sol.compatibility_residual =
      (abs_int > 0.0) ? std::abs(sol.F[n]) / abs_int : 0.0;
  if (sol.compatibility_residual > 1e-10) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "solve_weighted_neumann: datum violates the compatibility "
                  "condition int A f = 0 (relative residual %.3g)",
                  sol.compatibility_residual);
    throw std::invalid_argument(buf);
  }
  sol.F[n] = 0.0;  // exact zero flux at the far end

  sol.dum.resize(n);
  for (int i = 0; i < n; ++i) {
    sol.dum[i] = signed_root(sol.Fm[i] / sol.Am[i], p);
  }
  sol.du.resize(n + 1);
  for (int i = 1; i < n; ++i) {
    const double Ai = A(sol.t[i]);
    sol.du[i] = signed_root(sol.F[i] / Ai, p);
  }
  // endpoints: zero measure; one-sided values from the nearest interior data
  sol.du[0] = sol.dum.front();
  sol.du[n] = sol.dum.back();

  sol.u.resize(n + 1);
  sol.u[0] = 0.0;
  for (int i = 0; i < n; ++i) sol.u[i + 1] = sol.u[i] + h * sol.dum[i];

  sol.mass = 0.0;
  for (int i = 0; i < n; ++i) sol.mass += sol.Am[i] * h;

  const double med = interpolated_median(sol.u, sol.Am, h, sol.mass);
  for (double& v : sol.u) v -= med;
  sol.um.resize(n);
  for (int i = 0; i < n; ++i) sol.um[i] = 0.5 * (sol.u[i] + sol.u[i + 1]);
  sol.median_normalized = true;
  return sol;
}

StepFunction weighted_gradient_rearrangement(const NeumannSolution& sol,
                                             std::optional<Sign> sign) {
  return decreasing_rearrangement(sol.gradient_samples(sign));
}

std::vector<double> psi_function(const NeumannSolution& sol, Sign sign,
                                 const std::vector<double>& levels) {
  if (levels.empty()) return {};
  const double top = *std::max_element(levels.begin(), levels.end());
  const double vmax = sol.max_part(sign);
  if (!(top < vmax)) {
    throw std::invalid_argument(
        "psi_function: levels must stay below max u± (the crossing sum "
        "degenerates at the top)");
  }
  // fine trapezoid in the level variable, then interpolate at the requests
  const int fine = 4000;
  std::vector<double> tau(fine + 1), psi(fine + 1);
  psi[0] = 0.0;
  tau[0] = 0.0;
  double prev_integrand = 0.0;
  {
    // integrand at tau=0+: crossing sum at the median level; use a tiny
    // positive level to stay off the plateau
    const double s0 = crossing_flux_sum(sol, sign, top * 1e-9);
    prev_integrand =
        (s0 > 0.0) ? std::pow(s0, -1.0 / (sol.p - 1.0)) : 0.0;
  }
  for (int j = 1; j <= fine; ++j) {
    tau[j] = top * j / fine;
    const double s = crossing_flux_sum(sol, sign, tau[j]);
    const double integrand =
        (s > 0.0) ? std::pow(s, -1.0 / (sol.p - 1.0)) : prev_integrand;
    psi[j] = psi[j - 1] + 0.5 * (prev_integrand + integrand) * (top / fine);
    prev_integrand = integrand;
  }
  std::vector<double> out(levels.size());
  for (size_t k = 0; k < levels.size(); ++k) {
    const double x = levels[k] / top * fine;
    const int j = std::clamp(static_cast<int>(x), 0, fine - 1);
    const double w = x - j;
    out[k] = psi[j] + w * (psi[j + 1] - psi[j]);
  }
  return out;
}

VerifyReport verify_bound(const NeumannSolution& sol, Sign sign,
                          const BoundCurve& curve, VerifyMode mode) {
  VerifyReport rep;
  const bool solution_curve = (curve.provenance == Provenance::kThmA);
  const StepFunction lhs =
      solution_curve
          ? decreasing_rearrangement(sol.solution_samples(sign))
          : weighted_gradient_rearrangement(sol, sign);

  // resolution of the step-function left side: one cell of oscillation
  double osc = 0.0;
  const std::vector<double>& samples = solution_curve ? sol.um : sol.dum;
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    osc = std::max(osc, std::abs(samples[i + 1] - samples[i]));
  }
  const double abs_slack = 2.0 * osc;

  if (mode == VerifyMode::kStrict && !curve.constants_known) {
    throw std::invalid_argument(
        "verify_bound: strict mode requires a constant-explicit bound "
        "(exact nu_p)");
  }
  rep.worst_ratio = 0.0;
  for (size_t k = 0; k < curve.s.size(); ++k) {
    if (curve.flags[k] == 1) {
      ++rep.skipped;  // infinite bound holds trivially
      continue;
    }
    const double L = lhs(curve.s[k]);
    const double B = curve.value[k];
    ++rep.checked;
    if (mode == VerifyMode::kStrict) {
      const double allowance = 1e-3 * B + abs_slack;
      const double ratio = (B > 0.0) ? L / B : (L > allowance ? 2.0 : 0.0);
      if (ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_at = curve.s[k];
      }
      if (L > B + allowance) {
        rep.pass = false;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "violation at s = %.6g: lhs %.6g > bound %.6g", curve.s[k],
                      L, B);
        rep.detail = buf;
      }
    } else {
      if (B > 1e-12) {
        const double ratio = L / B;
        if (ratio > rep.fitted_constant) {
          rep.fitted_constant = ratio;
          rep.worst_at = curve.s[k];
        }
      }
    }
  }
  if (mode == VerifyMode::kFittedConstant) rep.worst_ratio = rep.fitted_constant;
  return rep;
}

VerifyReport verify_flux_inequality(const NeumannSolution& sol,
                                    const RearrangedDatum& f, Sign sign,
                                    const std::vector<double>& levels) {
  VerifyReport rep;
  // slack: the crossing mass is resolved within one cell
  double fmax = f.part(sign == Sign::kPlus).max_value();
  double cell_mass = 0.0;
  for (int i = 0; i < sol.cells(); ++i) {
    cell_mass = std::max(cell_mass, sol.Am[i] * sol.h);
  }
  const double abs_slack = 2.0 * fmax * cell_mass;
  for (double t : levels) {
    const double flux = crossing_flux_sum(sol, sign, t);
    const double mu = sol.mass_above(sign, t);
    const double maj = flux_majorant(f, sign, std::min(mu, f.mass));
    ++rep.checked;
    const double ratio = (maj > 0.0) ? flux / maj : (flux > 0.0 ? 2.0 : 0.0);
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_at = t;
    }
    if (flux > maj * (1.0 + 1e-3) + abs_slack) {
      rep.pass = false;
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "flux violation at level %.6g: %.6g > %.6g", t, flux, maj);
      rep.detail = buf;
    }
  }
  return rep;
}

VerifyReport verify_isocap_levelset(const NeumannSolution& sol,
                                    const IsocapFn& nu, Sign sign,
                                    const std::vector<double>& levels) {
  VerifyReport rep;
  const std::vector<double> psi = psi_function(sol, sign, levels);
  double cell_mass = 0.0;
  for (int i = 0; i < sol.cells(); ++i) {
    cell_mass = std::max(cell_mass, sol.Am[i] * sol.h);
  }
  const double half = 0.5 * nu.measure;
  for (size_t k = 0; k < levels.size(); ++k) {
    const double m_raw = sol.mass_above(sign, levels[k]);
    // the level-set mass is resolved within one cell; media normalization
    // guarantees m <= M/2 only up to that resolution
    const double m = std::min(m_raw, half * (1.0 - 1e-9));
    if (m <= 0.0 || psi[k] <= 0.0) {
      ++rep.skipped;
      continue;
    }
    const double lhs = nu.evaluate(m);
    const double rhs = std::pow(psi[k], 1.0 - sol.p);
    ++rep.checked;
    const double ratio = lhs / rhs;
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_at = levels[k];
    }
    const double mass_slack_ratio =
        1e-3 + 4.0 * cell_mass / std::max(half - m, cell_mass);
    if (lhs > rhs * (1.0 + mass_slack_ratio)) {
      rep.pass = false;
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "level-set violation at t = %.6g: nu(%.6g) = %.6g > "
                    "psi^{1-p} = %.6g",
                    levels[k], m, lhs, rhs);
      rep.detail = buf;
    }
  }
  return rep;
}

VerifyReport verify_coarea(const NeumannSolution& sol, Sign sign,
                           const std::vector<double>& levels) {
  VerifyReport rep;
  const double sg = (sign == Sign::kPlus) ? 1.0 : -1.0;
  const int n = sol.cells();
  for (double t : levels) {
    if (!(t > 0.0)) continue;
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = sg * sol.u[i], b = sg * sol.u[i + 1];
      const double slope = (b - a) / sol.h;
      const double lo = std::min(a, b), hi = std::max(a, b);
      const double rlo = std::max(lo, 0.0), rhi = std::min(hi, t);
      if (rhi <= rlo) continue;
      // coordinate length of {x in cell : 0 < u±(x) <= t}
      const double len =
          (slope == 0.0) ? 0.0 : (rhi - rlo) / std::abs(slope);
      lhs += sol.Am[i] * std::pow(std::abs(slope), sol.p) * len;
      // level range swept by the cell inside (0, t]
      rhs += sol.Am[i] * std::pow(std::abs(slope), sol.p - 1.0) * (rhi - rlo);
    }
    ++rep.checked;
    const double scale = std::max({lhs, rhs, 1e-300});
    const double err = std::abs(lhs - rhs) / scale;
    if (err > rep.worst_ratio) {
      rep.worst_ratio = err;
      rep.worst_at = t;
    }
    if (err > 1e-6) {
      rep.pass = false;
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "coarea mismatch at t = %.6g: lhs %.9g vs rhs %.9g", t,
                    lhs, rhs);
      rep.detail = buf;
    }
  }
  return rep;
}

StabilityReport verify_stability(const Fn& A, double p, const Fn& f,
                                 const Fn& g, double q, int cells, double T) {
  const NeumannSolution su = solve_weighted_neumann(A, p, f, cells, T);
  const NeumannSolution sv = solve_weighted_neumann(A, p, g, cells, T);
  StabilityReport rep;
  const double h = su.h;
  double acc = 0.0;
  for (int i = 0; i < su.cells(); ++i) {
    acc += su.Am[i] * std::pow(std::abs(su.dum[i] - sv.dum[i]), p - 1.0) * h;
  }
  rep.lhs = std::pow(acc, 1.0 / (p - 1.0));

  auto lq = [&](const Fn& w) {
    if (std::isinf(q)) {
      double m = 0.0;
      for (int i = 0; i < su.cells(); ++i) {
        m = std::max(m, std::abs(w(su.tm[i])));
      }
      return m;
    }
    double s = 0.0;
    for (int i = 0; i < su.cells(); ++i) {
      s += su.Am[i] * std::pow(std::abs(w(su.tm[i])), q) * h;
    }
    return std::pow(s, 1.0 / q);
  };
  auto diff = [&f, &g](double x) { return f(x) - g(x); };
  rep.norm_fg = lq(diff);
  const StabilityExponents ex = stability_exponents(p);
  rep.rhs = std::pow(rep.norm_fg, ex.exp_diff) *
            std::pow(lq(f) + lq(g), ex.exp_sum);
  rep.fitted_k = (rep.rhs > 0.0) ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

std::vector<double> level_grid(const NeumannSolution& sol, Sign sign,
                               int count) {
  const double vmax = sol.max_part(sign);
  std::vector<double> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    // irrational-ish offsets keep the levels off the sampled values
    out.push_back(vmax * (0.02 + 0.93 * (k + 0.371) / count));
  }
  return out;
}

}  // namespace isocap
