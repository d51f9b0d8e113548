#include "isocap/criteria.hpp"

#include <cmath>

namespace isocap {

namespace {

constexpr bool is_inf(double x) { return std::isinf(x); }

void stamp(CriterionReport& rep, double p, double q, double sigma = NAN,
           double rho = NAN, double gamma = NAN) {
  rep.p = p;
  rep.q = q;
  rep.sigma = sigma;
  rep.rho = rho;
  rep.gamma = gamma;
}

void note_exactness(CriterionReport& rep, Exactness ex) {
  if (ex == Exactness::kLowerBoundOnly) {
    rep.notes.push_back(
        "nu_p is a lower bound only: a divergent/unbounded test is "
        "inconclusive, not a failure");
  } else if (ex == Exactness::kTwoSided) {
    rep.notes.push_back(
        "nu_p known up to multiplicative constants: the verdict is the "
        "convergence class, the quantity is for the constant-1 model");
  }
}

// Classification of int_0^{M/2} h(s) ds, singular end 0.
CriterionReport integral_criterion(std::string id, const Fn& h, double measure,
                                   Exactness ex) {
  CriterionReport rep;
  rep.criterion_id = std::move(id);
  note_exactness(rep, ex);
  IntegralVerdict v;
  try {
    v = classify_improper(h, 0.0, 0.5 * measure, SingularEnd::kLower);
  } catch (const QuadratureError& e) {
    rep.verdict = Verdict::kHolds;
    rep.quantity = e.best_estimate;
    rep.notes.push_back(
        "quadrature budget exhausted while evaluating a convergent "
        "integral; quantity is the best estimate");
    return rep;
  }
  switch (v.verdict) {
    case Convergence::kConverges:
      rep.verdict = Verdict::kHolds;
      rep.quantity = v.value;
      break;
    case Convergence::kDiverges:
      rep.verdict = (ex == Exactness::kLowerBoundOnly)
                        ? Verdict::kInconclusive
                        : Verdict::kFails;
      if (v.divergence_rate) {
        rep.notes.push_back("divergence rate " + v.divergence_rate->str());
      }
      break;
    case Convergence::kIndeterminate:
      rep.verdict = Verdict::kInconclusive;
      rep.notes.push_back("near-threshold exponent: not decided numerically");
      break;
  }
  return rep;
}

// Finiteness of sup_{0<s<M/2} h(s); the only suspect end is s -> 0 for the
// catalog inputs (nu_p is non-decreasing).
CriterionReport sup_criterion(std::string id, const Fn& h, double measure,
                              Exactness ex) {
  CriterionReport rep;
  rep.criterion_id = std::move(id);
  note_exactness(rep, ex);
  const double half = 0.5 * measure;
  const PowerLogFit fit = fit_power_log(h, half);
  bool finite;
  if (!fit.valid || fit.residual_rms > 0.3) {
    rep.verdict = Verdict::kInconclusive;
    rep.notes.push_back("sup test: local behaviour not of power-log type");
    return rep;
  }
  if (fit.power > kPowerMargin) {
    finite = true;
  } else if (fit.power < -kPowerMargin) {
    finite = false;
  } else if (fit.log_power <= kLogMargin) {
    finite = true;  // bounded or log-decaying at a flat power
  } else {
    finite = false;
  }
  if (finite) {
    rep.verdict = Verdict::kHolds;
    double sup = 0.0;
    for (double s : Grid::log_spaced(half * 1e-9, half * (1.0 - 1e-9), 200)) {
      const double hs = h(s);
      if (std::isfinite(hs)) sup = std::max(sup, hs);
    }
    rep.quantity = sup;
  } else {
    rep.verdict = (ex == Exactness::kLowerBoundOnly) ? Verdict::kInconclusive
                                                     : Verdict::kFails;
    char buf[80];
    std::snprintf(buf, sizeof(buf), "sup grows like s^%.4g (log s)^%.4g",
                  fit.power, fit.log_power);
    rep.notes.push_back(buf);
  }
  return rep;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kFails: return "criterion fails";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

double conjugate_exponent(double q) {
  if (is_inf(q)) return 1.0;
  if (!(q > 1.0)) {
    throw std::invalid_argument(
        "conjugate_exponent: q must be > 1 (q = 1 takes the separate "
        "logarithmic form)");
  }
  return q / (q - 1.0);
}

CriterionReport wellposedness(const IsocapFn& nu, double measure, double p,
                              double q) {
  if (!(p > 1.0)) throw std::invalid_argument("wellposedness: requires p > 1");
  if (!(q >= 1.0)) {
    throw std::invalid_argument("wellposedness: requires q in [1, inf]");
  }
  const Fn eval = nu.evaluate;
  CriterionReport rep;
  if (q == 1.0) {
    auto h = [eval, p](double s) {
      return std::pow(s / eval(s), 1.0 / p) / s;
    };
    rep = integral_criterion("WP_402", h, measure, nu.exactness);
  } else {
    const double e = conjugate_exponent(q) / p;
    auto h = [eval, e](double s) { return std::pow(s / eval(s), e); };
    rep = integral_criterion("WP_401", h, measure, nu.exactness);
  }
  stamp(rep, p, q);
  return rep;
}

CriterionReport solution_norm_condition(const IsocapFn& nu, double measure,
                                        double p, double q, double sigma) {
  if (!(p > 1.0) || !(sigma > 0.0)) {
    throw std::invalid_argument(
        "solution_norm_condition: requires p > 1 and sigma > 0");
  }
  const Fn eval = nu.evaluate;
  CriterionReport rep;
  if (q > 1.0 && !is_inf(q) && sigma >= q * (p - 1.0)) {
    const double e = (p - 1.0) / sigma + 1.0 / conjugate_exponent(q);
    auto h = [eval, e](double s) { return std::pow(s, e) / eval(s); };
    rep = sup_criterion("SOL_Ci", h, measure, nu.exactness);
  } else if (q > 1.0 && !is_inf(q) && sigma < q * (p - 1.0)) {
    const double e = sigma * q / (q * (p - 1.0) - sigma);
    auto h = [eval, e](double s) { return std::pow(s / eval(s), e); };
    rep = integral_criterion("SOL_Cii", h, measure, nu.exactness);
  } else if (is_inf(q) && sigma <= 1.0) {
    const double e = sigma / (p - 1.0);
    auto h = [eval, e](double s) { return std::pow(s / eval(s), e); };
    rep = integral_criterion("SOL_Ciii", h, measure, nu.exactness);
  } else {
    throw std::invalid_argument(
        "solution_norm_condition: (q, sigma) outside cases (i)-(iii): "
        "needs 1 < q < inf, or q = inf with 0 < sigma <= 1");
  }
  stamp(rep, p, q, sigma);
  return rep;
}

CriterionReport gradient_norm_condition(const IsocapFn& nu, double measure,
                                        double p, double q, double sigma) {
  if (!(p > 1.0) || !(sigma > 0.0 && sigma <= p)) {
    throw std::invalid_argument(
        "gradient_norm_condition: requires p > 1 and 0 < sigma <= p");
  }
  const Fn eval = nu.evaluate;
  CriterionReport rep;
  if (q == 1.0) {
    const double e = sigma / (p * (p - 1.0));
    const double extra = sigma / (p - 1.0);
    auto h = [eval, e, extra](double s) {
      return std::pow(s / eval(s), e) * std::pow(s, -extra);
    };
    rep = integral_criterion("GRAD_5teriv", h, measure, nu.exactness);
  } else if (is_inf(q)) {
    const double e = sigma / (p * (p - 1.0));
    auto h = [eval, e](double s) { return std::pow(s / eval(s), e); };
    rep = integral_criterion("GRAD_5teriii", h, measure, nu.exactness);
  } else if (sigma >= q * (p - 1.0)) {
    const double e = 1.0 + p * (p - 1.0) / sigma - p / q;
    auto h = [eval, e](double s) { return std::pow(s, e) / eval(s); };
    rep = sup_criterion("GRAD_5teri", h, measure, nu.exactness);
  } else {
    const double e = sigma * q / (p * (q * (p - 1.0) - sigma));
    auto h = [eval, e](double s) { return std::pow(s / eval(s), e); };
    rep = integral_criterion("GRAD_5terii", h, measure, nu.exactness);
  }
  stamp(rep, p, q, sigma);
  return rep;
}

CriterionReport lorentz_gradient_condition(const IsocapFn& nu, double measure,
                                           double p, double q, double sigma,
                                           double rho, double gamma) {
  if (!(p > 1.0) || !(sigma > 0.0 && sigma < p)) {
    throw std::invalid_argument(
        "lorentz_gradient_condition: requires p > 1 and 0 < sigma < p");
  }
  if (!(q > 1.0) || is_inf(q)) {
    throw std::invalid_argument(
        "lorentz_gradient_condition: requires 1 < q < inf");
  }
  if (!(rho > 0.0 && gamma > 0.0)) {
    throw std::invalid_argument(
        "lorentz_gradient_condition: requires rho, gamma > 0");
  }
  const Fn eval = nu.evaluate;
  const double e0 = 1.0 + p * (p - 1.0) / sigma - p / q;
  CriterionReport rep;
  if (gamma <= rho) {
    auto h = [eval, e0](double s) { return std::pow(s, e0) / eval(s); };
    rep = sup_criterion("LOR_624", h, measure, nu.exactness);
  } else {
    const double e = rho * gamma / (p * (gamma - rho) * (p - 1.0));
    auto h = [eval, e0, e](double s) {
      return std::pow(std::pow(s, e0) / eval(s), e) / s;
    };
    rep = integral_criterion("LOR_625", h, measure, nu.exactness);
  }
  stamp(rep, p, q, sigma, rho, gamma);
  return rep;
}

CriterionReport wellposedness_via_lambda(const IsoperFn& lam, double measure,
                                         double p, double q) {
  if (!(p > 1.0)) {
    throw std::invalid_argument("wellposedness_via_lambda: requires p > 1");
  }
  if (!(q >= 1.0)) {
    throw std::invalid_argument(
        "wellposedness_via_lambda: requires q in [1, inf]");
  }
  const Fn l = lam.evaluate;
  const double pp = p / (p - 1.0);
  const double half = 0.5 * measure;
  auto inner = [l, pp, half](double s) {
    auto integrand = [&](double r) { return std::pow(l(r), -pp); };
    return integrate_adaptive(integrand, s, half, kRelTolProper);
  };
  CriterionReport rep;
  if (q == 1.0) {
    auto h = [inner, p, pp](double s) {
      return std::pow(s, 1.0 / p) * std::pow(inner(s), 1.0 / pp) / s;
    };
    rep = integral_criterion("ISO_302", h, measure, lam.exactness);
  } else {
    const double qp = conjugate_exponent(q);
    auto h = [inner, p, pp, qp](double s) {
      return std::pow(s, qp / p) * std::pow(inner(s), qp / pp);
    };
    rep = integral_criterion("ISO_301", h, measure, lam.exactness);
  }
  stamp(rep, p, q);
  return rep;
}

CriterionReport embedding_condition(const IsocapFn& nu, double measure,
                                    double p, double sigma) {
  if (!(p > 1.0) || !(sigma >= 1.0)) {
    throw std::invalid_argument(
        "embedding_condition: requires p > 1 and sigma >= 1");
  }
  const Fn eval = nu.evaluate;
  CriterionReport rep;
  if (sigma >= p) {
    const double e = p / sigma;
    auto h = [eval, e](double s) { return std::pow(s, e) / eval(s); };
    rep = sup_criterion("EMB_2002", h, measure, nu.exactness);
  } else {
    const double e = sigma / (p - sigma);
    const double e0 = p / sigma;
    auto h = [eval, e, e0](double s) {
      return std::pow(std::pow(s, e0) / eval(s), e) / s;
    };
    rep = integral_criterion("EMB_2002p", h, measure, nu.exactness);
  }
  stamp(rep, p, NAN, sigma);
  return rep;
}

}  // namespace isocap
