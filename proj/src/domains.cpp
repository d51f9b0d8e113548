#include "isocap/domains.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace isocap {

namespace {

double pprime(double p) { return p / (p - 1.0); }

// weight density of d(-D nu^{1/(1-p)}) for nu(s) = C s^theta
StieltjesWeight power_weight(double C, double theta, double p) {
  if (theta == 0.0) {
    return {[](double) { return 0.0; }};
  }
  const double amp = std::pow(C, 1.0 / (1.0 - p)) * theta / (p - 1.0);
  const double e = theta / (1.0 - p) - 1.0;
  return {[amp, e](double r) { return amp * std::pow(r, e); }};
}

// centered finite differences with step h = r * 1e-6 (catalog nu are C^1)
StieltjesWeight fd_weight(Fn nu, double p) {
  return {[nu = std::move(nu), p](double r) {
    const double h = r * 1e-6;
    auto g = [&](double x) { return std::pow(nu(x), 1.0 / (1.0 - p)); };
    return (g(r - h) - g(r + h)) / (2.0 * h);
  }};
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double power_int(double e, double a, double b) {
  // int_a^b r^e dr, a >= 0 allowed when e > -1
  if (e == -1.0) return std::log(b / a);
  return (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::kLipschitzBall: return "lipschitz_ball";
    case Family::kHolder: return "holder";
    case Family::kGammaJohn: return "gamma_john";
    case Family::kCusp: return "cusp";
    case Family::kFunnel: return "funnel";
    case Family::kCouhilComb: return "couhil";
    case Family::kNikodymComb: return "nikodym";
    case Family::kCustom: return "custom";
  }
  return "?";
}

std::string exactness_name(Exactness e) {
  switch (e) {
    case Exactness::kExact: return "exact";
    case Exactness::kTwoSided: return "two_sided";
    case Exactness::kLowerBoundOnly: return "lower_bound_only";
  }
  return "?";
}

double Profile::operator()(double r) const {
  switch (kind) {
    case Kind::kPower: return std::pow(r, exponent);
    case Kind::kExp: return std::exp(-std::pow(r, exponent));
    case Kind::kCustom: return fn(r);
  }
  return 0.0;
}

DomainSpec DomainSpec::lipschitz_ball(int n, double measure, double c0) {
  require(n >= 2, "lipschitz_ball: dimension must be >= 2");
  require(measure > 0.0, "lipschitz_ball: measure must be positive");
  DomainSpec d;
  d.family = Family::kLipschitzBall;
  d.dimension = n;
  d.measure = measure;
  d.c0 = c0;
  return d;
}

DomainSpec DomainSpec::holder(int n, double alpha, double measure) {
  require(n >= 2, "holder: dimension must be >= 2");
  require(alpha > 0.0 && alpha < 1.0, "holder: requires alpha in (0,1)");
  DomainSpec d;
  d.family = Family::kHolder;
  d.dimension = n;
  d.holder_alpha = alpha;
  d.measure = measure;
  return d;
}

DomainSpec DomainSpec::gamma_john(int n, double gamma, double measure) {
  require(n >= 2, "gamma_john: dimension must be >= 2");
  require(gamma >= 1.0, "gamma_john: requires gamma >= 1");
  DomainSpec d;
  d.family = Family::kGammaJohn;
  d.dimension = n;
  d.john_gamma = gamma;
  d.measure = measure;
  return d;
}

DomainSpec DomainSpec::cusp_power(int n, double kappa, double length,
                                  double c0) {
  require(n >= 2, "cusp: dimension must be >= 2");
  require(kappa >= 1.0,
          "cusp: power profile needs kappa >= 1 (theta must be convex with "
          "theta(0) = 0)");
  require(length > 0.0, "cusp: length must be positive");
  DomainSpec d;
  d.family = Family::kCusp;
  d.dimension = n;
  d.c0 = c0;
  d.cusp_theta.kind = Profile::Kind::kPower;
  d.cusp_theta.exponent = kappa;
  d.cusp_length = length;
  d.measure = theta_transform(d, length);
  return d;
}

DomainSpec DomainSpec::cusp_custom(int n, Fn theta, double length, double c0) {
  require(n >= 2, "cusp: dimension must be >= 2");
  require(length > 0.0, "cusp: length must be positive");
  DomainSpec d;
  d.family = Family::kCusp;
  d.dimension = n;
  d.c0 = c0;
  d.cusp_theta.kind = Profile::Kind::kCustom;
  d.cusp_theta.fn = std::move(theta);
  d.cusp_length = length;
  require(std::abs(d.cusp_theta(0.0)) <= 1e-12 * d.cusp_theta(length),
          "cusp: profile must vanish at the tip, theta(0) = 0");
  // midpoint convexity probe
  for (double t = 0.125; t < 1.0; t += 0.25) {
    const double a = t * length * 0.5, b = t * length;
    require(d.cusp_theta(0.5 * (a + b)) <=
                0.5 * (d.cusp_theta(a) + d.cusp_theta(b)) + 1e-9,
            "cusp: profile must be convex");
  }
  d.measure = theta_transform(d, length);
  return d;
}

DomainSpec DomainSpec::funnel_power(int n, double beta, double c0) {
  require(n >= 2, "funnel: dimension must be >= 2");
  require(beta * (n - 1) > 1.0,
          "funnel: requires beta (n-1) > 1, else the tail integral of "
          "zeta^(n-1) diverges and |Omega| is infinite");
  DomainSpec d;
  d.family = Family::kFunnel;
  d.dimension = n;
  d.c0 = c0;
  d.funnel_zeta.kind = Profile::Kind::kPower;
  d.funnel_zeta.exponent = beta;
  d.measure = upsilon_transform(d, 0.0);
  return d;
}

DomainSpec DomainSpec::funnel_exp(int n, double alpha, double c0) {
  require(n >= 2, "funnel: dimension must be >= 2");
  require(alpha > 0.0, "funnel: exponential profile needs alpha > 0");
  DomainSpec d;
  d.family = Family::kFunnel;
  d.dimension = n;
  d.c0 = c0;
  d.funnel_zeta.kind = Profile::Kind::kExp;
  d.funnel_zeta.exponent = alpha;
  d.measure = upsilon_transform(d, 0.0);
  return d;
}

DomainSpec DomainSpec::couhil_power(double alpha, double measure) {
  require(alpha > 1.0,
          "couhil: delta(s) = s^alpha needs alpha > 1 so that "
          "s^(1+eps)/delta(s) is non-increasing for some eps > 0");
  DomainSpec d;
  d.family = Family::kCouhilComb;
  d.dimension = 2;
  d.comb_delta.kind = Profile::Kind::kPower;
  d.comb_delta.exponent = alpha;
  d.measure = measure;
  return d;
}

DomainSpec DomainSpec::nikodym_power(double alpha, double measure) {
  require(alpha >= 1.0,
          "nikodym: delta(s) = s^alpha needs alpha >= 1 so that "
          "delta(s) <= c s near 0");
  DomainSpec d;
  d.family = Family::kNikodymComb;
  d.dimension = 2;
  d.comb_delta.kind = Profile::Kind::kPower;
  d.comb_delta.exponent = alpha;
  d.measure = measure;
  return d;
}

DomainSpec DomainSpec::custom(Fn nu, double measure, Exactness exactness,
                              std::optional<double> exponent) {
  require(measure > 0.0, "custom: measure must be positive");
  DomainSpec d;
  d.family = Family::kCustom;
  d.custom_nu = std::move(nu);
  d.measure = measure;
  d.custom_exactness = exactness;
  d.custom_exponent = exponent;
  return d;
}

double theta_transform(const DomainSpec& cusp, double rho) {
  require(cusp.family == Family::kCusp, "theta_transform: not a cusp domain");
  require(rho >= 0.0 && rho <= cusp.cusp_length,
          "theta_transform: rho outside the profile domain");
  const int n = cusp.dimension;
  if (cusp.cusp_theta.kind == Profile::Kind::kPower) {
    const double d = cusp.cusp_theta.exponent * (n - 1) + 1.0;
    return cusp.c0 * std::pow(rho, d) / d;
  }
  if (rho == 0.0) return 0.0;
  return cusp.c0 * integrate_adaptive(
                       [&](double r) {
                         return std::pow(cusp.cusp_theta(r), double(n - 1));
                       },
                       0.0, rho, kRelTolProper);
}

double theta_inverse(const DomainSpec& cusp, double s) {
  require(cusp.family == Family::kCusp, "theta_inverse: not a cusp domain");
  const int n = cusp.dimension;
  if (cusp.cusp_theta.kind == Profile::Kind::kPower) {
    const double d = cusp.cusp_theta.exponent * (n - 1) + 1.0;
    return std::pow(d * s / cusp.c0, 1.0 / d);
  }
  auto F = [&](double rho) { return theta_transform(cusp, rho); };
  return generalized_left_inverse(F, 0.0, cusp.cusp_length, s).s;
}

double upsilon_transform(const DomainSpec& funnel, double rho) {
  require(funnel.family == Family::kFunnel,
          "upsilon_transform: not a funnel domain");
  require(rho >= 0.0, "upsilon_transform: rho must be >= 0");
  const int n = funnel.dimension;
  const Profile& z = funnel.funnel_zeta;
  if (z.kind == Profile::Kind::kPower) {
    const double B = z.exponent * (n - 1);
    return funnel.c0 * std::pow(1.0 + rho, 1.0 - B) / (B - 1.0);
  }
  if (z.kind == Profile::Kind::kExp && z.exponent == 1.0) {
    return funnel.c0 * std::exp(-(n - 1) * rho) / (n - 1);
  }
  auto zn = [&](double r) { return std::pow(z(r), double(n - 1)); };
  // finite-volume check before integrating the tail
  IntegralVerdict v = classify_improper_at_infinity(zn, std::max(rho, 1.0));
  if (!v.converges()) {
    throw std::invalid_argument(
        "funnel: the tail integral of zeta^(n-1) diverges, so |Omega| is "
        "infinite");
  }
  return funnel.c0 * integrate_to_infinity(zn, rho, kRelTolProper);
}

double upsilon_inverse(const DomainSpec& funnel, double s) {
  require(s > 0.0, "upsilon_inverse: mass must be positive");
  const int n = funnel.dimension;
  const Profile& z = funnel.funnel_zeta;
  if (z.kind == Profile::Kind::kPower) {
    const double B = z.exponent * (n - 1);
    return std::pow(s * (B - 1.0) / funnel.c0, -1.0 / (B - 1.0)) - 1.0;
  }
  if (z.kind == Profile::Kind::kExp && z.exponent == 1.0) {
    return -std::log(s * (n - 1) / funnel.c0) / (n - 1);
  }
  // Upsilon is decreasing; bracket then bisect
  double lo = 0.0, hi = 1.0;
  while (upsilon_transform(funnel, hi) > s && hi < 1e12) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) break;
    (upsilon_transform(funnel, mid) > s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// int_a^b A(r)^{-1/(p-1)} dr for the named profile weights, closed form
// where available.
struct Resistance {
  // cusp/ball: A(r) = c0 r^{kappa (n-1)}
  static double power(double c0, double m, double a, double b, double p) {
    // m = kappa (n-1) / (p-1)
    return std::pow(c0, -1.0 / (p - 1.0)) * power_int(-m, a, b);
  }
};

}  // namespace

Capacity1D condenser_capacity_1d(const Fn& A, double p, double a, double g) {
  require(p > 1.0, "condenser_capacity_1d: requires p > 1");
  require(a >= 0.0 && a < g, "condenser_capacity_1d: requires 0 <= a < g");
  auto integrand = [&](double r) { return std::pow(A(r), -1.0 / (p - 1.0)); };
  Capacity1D cap;
  try {
    double I;
    if (a == 0.0) {
      IntegralVerdict v =
          classify_improper(integrand, a, g, SingularEnd::kLower);
      if (!v.converges()) {
        cap.zero_capacity = true;
        return cap;
      }
      I = v.value;
    } else {
      QuadratureOptions opts;
      opts.rel_tol = kRelTolProper;
      I = integrate_adaptive(integrand, a, g, opts);
    }
    cap.value = std::pow(I, 1.0 - p);
  } catch (const QuadratureError& e) {
    // a huge resistance estimate means an essentially zero capacity
    cap.value = std::pow(e.best_estimate, 1.0 - p);
    cap.zero_capacity = cap.value < 1e-300;
  }
  return cap;
}

double condenser_capacity_radial(int n, double p, double r, double R,
                                 double c0) {
  require(n >= 2, "condenser_capacity_radial: dimension must be >= 2");
  require(p > 1.0 && p <= n,
          "condenser_capacity_radial: requires 1 < p <= n (points have "
          "positive capacity for p > n)");
  require(r > 0.0 && r < R, "condenser_capacity_radial: requires 0 < r < R");
  auto A = [n, c0](double tau) { return c0 * std::pow(tau, double(n - 1)); };
  return condenser_capacity_1d(A, p, r, R).value;
}

WeightedModel interval_model(double length) {
  require(length > 0.0, "interval_model: length must be positive");
  WeightedModel m;
  m.A = [](double) { return 1.0; };
  m.T = length;
  m.measure = length;
  m.name = "interval";
  m.mass_at = [](double x) { return x; };
  m.coord_at_mass = [](double s) { return s; };
  return m;
}

WeightedModel ball_model(int n, double measure, double c0) {
  require(n >= 2, "ball_model: dimension must be >= 2");
  require(measure > 0.0 && c0 > 0.0, "ball_model: bad parameters");
  WeightedModel m;
  const double R = std::pow(n * measure / c0, 1.0 / n);
  m.A = [n, c0](double tau) { return c0 * std::pow(tau, double(n - 1)); };
  m.T = R;
  m.measure = measure;
  m.c0 = c0;
  m.name = "ball";
  m.mass_at = [n, c0](double x) { return c0 * std::pow(x, double(n)) / n; };
  m.coord_at_mass = [n, c0](double s) {
    return std::pow(n * s / c0, 1.0 / n);
  };
  return m;
}

WeightedModel cusp_model(const DomainSpec& cusp) {
  require(cusp.family == Family::kCusp, "cusp_model: not a cusp domain");
  WeightedModel m;
  const int n = cusp.dimension;
  const double c0 = cusp.c0;
  Profile theta = cusp.cusp_theta;
  m.A = [theta, n, c0](double tau) {
    return c0 * std::pow(theta(tau), double(n - 1));
  };
  m.T = cusp.cusp_length;
  m.measure = cusp.measure;
  m.c0 = c0;
  m.name = "cusp";
  DomainSpec copy = cusp;
  m.mass_at = [copy](double x) { return theta_transform(copy, x); };
  m.coord_at_mass = [copy](double s) { return theta_inverse(copy, s); };
  return m;
}

IsocapFn profile_exact_nu(const WeightedModel& model, double p) {
  require(p > 1.0, "profile_exact_nu: requires p > 1");
  IsocapFn nu;
  nu.p = p;
  nu.measure = model.measure;
  nu.exactness = Exactness::kExact;
  const double half_coord = model.coord_at_mass(0.5 * model.measure);
  const Fn A = model.A;
  const Fn coord = model.coord_at_mass;
  nu.evaluate = [A, coord, half_coord, p](double s) {
    const double a = coord(s);
    if (a >= half_coord) return std::numeric_limits<double>::infinity();
    auto integrand = [&](double r) {
      return std::pow(A(r), -1.0 / (p - 1.0));
    };
    QuadratureOptions opts;
    opts.rel_tol = kRelTolProper;
    const double I = integrate_adaptive(integrand, a, half_coord, opts);
    return std::pow(I, 1.0 - p);
  };
  nu.weight = {[A, coord, p](double r) {
    return std::pow(A(coord(r)), -pprime(p));
  }};
  return nu;
}

IsocapFn interval_exact_nu(double p, double length) {
  require(p > 1.0, "interval_exact_nu: requires p > 1");
  IsocapFn nu;
  nu.p = p;
  nu.measure = length;
  nu.exactness = Exactness::kExact;
  const double half = 0.5 * length;
  nu.evaluate = [half, p](double s) {
    return std::pow(half - s, 1.0 - p);
  };
  nu.weight = {[](double) { return 1.0; }};
  nu.asymptotic_exponent = 0.0;
  return nu;
}

IsocapFn power_isocap(double p, double theta, double measure,
                      Exactness exactness) {
  require(p > 1.0 && theta >= 0.0, "power_isocap: bad parameters");
  IsocapFn nu;
  nu.p = p;
  nu.measure = measure;
  nu.exactness = exactness;
  nu.evaluate = [theta](double s) { return std::pow(s, theta); };
  nu.weight = power_weight(1.0, theta, p);
  nu.asymptotic_exponent = theta;
  return nu;
}

IsocapFn constant_isocap(double p, double c, double measure) {
  require(p > 1.0 && c > 0.0, "constant_isocap: bad parameters");
  IsocapFn nu;
  nu.p = p;
  nu.measure = measure;
  nu.exactness = Exactness::kExact;
  nu.evaluate = [c](double) { return c; };
  nu.weight = {[](double) { return 0.0; }};
  nu.asymptotic_exponent = 0.0;
  return nu;
}

IsocapFn nu_p(const DomainSpec& domain, double p) {
  require(p > 1.0, "nu_p: requires p > 1");
  const int n = domain.dimension;
  IsocapFn nu;
  nu.p = p;
  nu.measure = domain.measure;

  switch (domain.family) {
    case Family::kLipschitzBall: {
      require(p <= double(n),
              "lipschitz_ball: the catalog formula covers 1 < p <= n");
      if (p < double(n)) {
        return power_isocap(p, (n - p) / n, domain.measure,
                            Exactness::kTwoSided);
      }
      // p = n: nu_n(s) = (log(M/s))^{1-n}
      const double M = domain.measure;
      nu.evaluate = [M, n](double s) {
        return std::pow(std::log(M / s), 1.0 - n);
      };
      // nu^{1/(1-p)} = log(M/s) -> density 1/s
      nu.weight = {[](double r) { return 1.0 / r; }};
      nu.exactness = Exactness::kTwoSided;
      nu.asymptotic_exponent = 0.0;
      nu.asymptotic_log_exponent = 1.0 - n;
      return nu;
    }
    case Family::kHolder: {
      const double alpha = domain.holder_alpha;
      require(p < (n - 1) / alpha + 1.0,
              "holder: the lower bound for nu_p needs p < (n-1)/alpha + 1");
      const double theta = 1.0 - alpha * p / (n - 1 + alpha);
      return power_isocap(p, theta, domain.measure,
                          Exactness::kLowerBoundOnly);
    }
    case Family::kGammaJohn: {
      const double gamma = domain.john_gamma;
      require(gamma <= p / (n - 1) + 1.0,
              "gamma_john: the embedding needs gamma <= p/(n-1) + 1");
      double theta = 0.0;
      if (gamma > (p - 1.0) / (n - 1.0)) {
        // sigma = n p / ((n-1) gamma + 1 - p), nu >= C s^{p/sigma}
        theta = ((n - 1) * gamma + 1.0 - p) / n;
      }
      return power_isocap(p, theta, domain.measure,
                          Exactness::kLowerBoundOnly);
    }
    case Family::kCusp: {
      nu = profile_exact_nu(cusp_model(domain), p);
      if (domain.cusp_theta.kind == Profile::Kind::kPower) {
        const double kap = domain.cusp_theta.exponent;
        const double m = kap * (n - 1) / (p - 1.0);
        const double d = kap * (n - 1) + 1.0;
        if (m > 1.0) {
          nu.asymptotic_exponent = (kap * (n - 1) - (p - 1.0)) / d;
        } else if (m < 1.0) {
          nu.asymptotic_exponent = 0.0;
        } else {
          nu.asymptotic_exponent = 0.0;
          nu.asymptotic_log_exponent = 1.0 - p;
        }
        // closed-form resistance: faster and exact for power profiles
        const double c0 = domain.c0;
        const double hc = theta_inverse(domain, 0.5 * domain.measure);
        DomainSpec copy = domain;
        nu.evaluate = [copy, c0, m, p, hc](double s) {
          const double a = theta_inverse(copy, s);
          if (a >= hc) return std::numeric_limits<double>::infinity();
          const double I = Resistance::power(c0, m, a, hc, p);
          return std::pow(I, 1.0 - p);
        };
      }
      return nu;
    }
    case Family::kFunnel: {
      const Profile z = domain.funnel_zeta;
      const double c0 = domain.c0;
      const double M = domain.measure;
      DomainSpec copy = domain;
      const double rho_half = upsilon_inverse(domain, 0.5 * M);
      nu.exactness = Exactness::kExact;
      auto Afun = [z, n, c0](double r) {
        return c0 * std::pow(z(r), double(n - 1));
      };
      if (z.kind == Profile::Kind::kPower) {
        const double B = z.exponent * (n - 1);
        const double m = B / (p - 1.0);
        nu.evaluate = [copy, c0, m, p, rho_half](double s) {
          const double rs = upsilon_inverse(copy, s);
          if (rs <= rho_half) return std::numeric_limits<double>::infinity();
          // int (c0 (1+r)^{-B})^{-1/(p-1)} dr over (rho_half, rs)
          const double I = std::pow(c0, -1.0 / (p - 1.0)) *
                           (std::pow(1.0 + rs, m + 1.0) -
                            std::pow(1.0 + rho_half, m + 1.0)) /
                           (m + 1.0);
          return std::pow(I, 1.0 - p);
        };
        nu.asymptotic_exponent = (B + p - 1.0) / (B - 1.0);
      } else {
        nu.evaluate = [copy, Afun, p, rho_half](double s) {
          const double rs = upsilon_inverse(copy, s);
          if (rs <= rho_half) return std::numeric_limits<double>::infinity();
          auto integrand = [&](double r) {
            return std::pow(Afun(r), -1.0 / (p - 1.0));
          };
          const double I =
              integrate_adaptive(integrand, rho_half, rs, kRelTolProper);
          return std::pow(I, 1.0 - p);
        };
      }
      nu.weight = {[copy, Afun, p](double r) {
        return std::pow(Afun(upsilon_inverse(copy, r)), -pprime(p));
      }};
      return nu;
    }
    case Family::kCouhilComb: {
      require(p <= 2.0,
              "couhil: the catalog formula for nu_p is asserted for "
              "1 <= p <= 2 only");
      if (domain.comb_delta.kind == Profile::Kind::kPower) {
        const double alpha = domain.comb_delta.exponent;
        require(alpha <= p + 1.0,
                "couhil: delta(s) = s^alpha needs alpha <= p + 1 so that "
                "s^(p+1)/delta(s) is non-decreasing");
        const double theta = (alpha + 1.0 - p) / 2.0;
        return power_isocap(p, theta, domain.measure, Exactness::kTwoSided);
      }
      const Profile delta = domain.comb_delta;
      nu.evaluate = [delta, p](double s) {
        return delta(std::sqrt(s)) * std::pow(s, (1.0 - p) / 2.0);
      };
      nu.weight = fd_weight(nu.evaluate, p);
      nu.exactness = Exactness::kTwoSided;
      return nu;
    }
    case Family::kNikodymComb: {
      if (domain.comb_delta.kind == Profile::Kind::kPower) {
        return power_isocap(p, domain.comb_delta.exponent, domain.measure,
                            Exactness::kTwoSided);
      }
      const Profile delta = domain.comb_delta;
      nu.evaluate = [delta](double s) { return delta(s); };
      nu.weight = fd_weight(nu.evaluate, p);
      nu.exactness = Exactness::kTwoSided;
      return nu;
    }
    case Family::kCustom: {
      require(static_cast<bool>(domain.custom_nu),
              "custom: no nu_p supplied");
      nu.evaluate = domain.custom_nu;
      nu.weight = fd_weight(domain.custom_nu, p);
      nu.exactness = domain.custom_exactness;
      nu.asymptotic_exponent = domain.custom_exponent;
      return nu;
    }
  }
  throw std::invalid_argument("nu_p: unknown family");
}

IsoperFn lambda_iso(const DomainSpec& domain) {
  const int n = domain.dimension;
  IsoperFn lam;
  lam.measure = domain.measure;
  switch (domain.family) {
    case Family::kLipschitzBall: {
      const double e = double(n - 1) / n;
      lam.evaluate = [e](double s) { return std::pow(s, e); };
      lam.exactness = Exactness::kTwoSided;
      lam.asymptotic_exponent = e;
      return lam;
    }
    case Family::kHolder: {
      const double e = (n - 1.0) / (n - 1.0 + domain.holder_alpha);
      lam.evaluate = [e](double s) { return std::pow(s, e); };
      lam.exactness = Exactness::kLowerBoundOnly;
      lam.asymptotic_exponent = e;
      return lam;
    }
    case Family::kGammaJohn: {
      // lambda ~ nu_1: exponent (n-1) gamma / n
      const double e = (n - 1.0) * domain.john_gamma / n;
      lam.evaluate = [e](double s) { return std::pow(s, e); };
      lam.exactness = Exactness::kLowerBoundOnly;
      lam.asymptotic_exponent = e;
      return lam;
    }
    case Family::kCusp: {
      DomainSpec copy = domain;
      lam.evaluate = [copy, n](double s) {
        return std::pow(copy.cusp_theta(theta_inverse(copy, s)),
                        double(n - 1));
      };
      lam.exactness = Exactness::kTwoSided;
      return lam;
    }
    case Family::kFunnel: {
      DomainSpec copy = domain;
      lam.evaluate = [copy, n](double s) {
        return std::pow(copy.funnel_zeta(upsilon_inverse(copy, s)),
                        double(n - 1));
      };
      lam.exactness = Exactness::kTwoSided;
      return lam;
    }
    case Family::kCouhilComb: {
      const Profile delta = domain.comb_delta;
      lam.evaluate = [delta](double s) { return delta(std::sqrt(s)); };
      lam.exactness = Exactness::kTwoSided;
      if (delta.kind == Profile::Kind::kPower) {
        lam.asymptotic_exponent = 0.5 * delta.exponent;
      }
      return lam;
    }
    case Family::kNikodymComb: {
      const Profile delta = domain.comb_delta;
      lam.evaluate = [delta](double s) { return delta(s); };
      lam.exactness = Exactness::kTwoSided;
      if (delta.kind == Profile::Kind::kPower) {
        lam.asymptotic_exponent = delta.exponent;
      }
      return lam;
    }
    case Family::kCustom: {
      require(static_cast<bool>(domain.custom_lambda),
              "custom: no lambda supplied");
      lam.evaluate = domain.custom_lambda;
      lam.exactness = domain.custom_exactness;
      return lam;
    }
  }
  throw std::invalid_argument("lambda_iso: unknown family");
}

IsocapFn nu_from_lambda(const IsoperFn& lam, double p, double measure) {
  require(p > 1.0, "nu_from_lambda: requires p > 1");
  IsocapFn nu;
  nu.p = p;
  nu.measure = measure;
  nu.exactness = Exactness::kLowerBoundOnly;
  const double half = 0.5 * measure;
  const Fn l = lam.evaluate;
  const double pp = pprime(p);
  nu.evaluate = [l, pp, p, half](double s) {
    auto integrand = [&](double r) { return std::pow(l(r), -pp); };
    try {
      const double I = integrate_adaptive(integrand, s, half, kRelTolProper);
      return std::pow(I, 1.0 - p);
    } catch (const QuadratureError&) {
      return 0.0;  // divergent inner integral: vanishing lower bound
    }
  };
  // d/ds int_s^{M/2} lambda^{-p'} = -lambda(s)^{-p'}
  nu.weight = {[l, pp](double r) { return std::pow(l(r), -pp); }};
  if (lam.asymptotic_exponent) {
    const double ell = *lam.asymptotic_exponent;
    if (ell * pp > 1.0) {
      nu.asymptotic_exponent = (ell * pp - 1.0) * (p - 1.0);
    } else if (ell * pp < 1.0) {
      nu.asymptotic_exponent = 0.0;
    } else {
      nu.asymptotic_exponent = 0.0;
      nu.asymptotic_log_exponent = 1.0 - p;
    }
  }
  return nu;
}

}  // namespace isocap
