#include <cmath>

#include "doctest.h"
#include "isocap/domains.hpp"
#include "oracles.hpp"

using namespace isocap;

TEST_CASE("nu_p: Lipschitz ball power law") {
  const DomainSpec ball = DomainSpec::lipschitz_ball(3);
  const IsocapFn nu = nu_p(ball, 2.0);
  CHECK(nu.evaluate(0.2) == doctest::Approx(std::pow(0.2, 1.0 / 3.0)));
  REQUIRE(nu.asymptotic_exponent.has_value());
  CHECK(*nu.asymptotic_exponent == doctest::Approx(1.0 / 3.0));
  CHECK(nu.exactness == Exactness::kTwoSided);

  // p = n: logarithmic class
  const IsocapFn nun = nu_p(ball, 3.0);
  CHECK(nun.evaluate(0.1) ==
        doctest::Approx(std::pow(std::log(10.0), -2.0)).epsilon(1e-12));
  CHECK(nun.asymptotic_log_exponent.has_value());

  CHECK_THROWS_AS(nu_p(ball, 3.5), std::invalid_argument);
}

TEST_CASE("nu_p: Nikodym comb is delta itself") {
  const DomainSpec dom = DomainSpec::nikodym_power(1.7);
  const IsocapFn nu = nu_p(dom, 2.0);
  CHECK(nu.evaluate(0.3) == doctest::Approx(std::pow(0.3, 1.7)));
  CHECK(*nu.asymptotic_exponent == doctest::Approx(1.7));
  CHECK_THROWS_AS(DomainSpec::nikodym_power(0.8), std::invalid_argument);
}

TEST_CASE("nu_p: Couhil comb formula and validity") {
  const DomainSpec dom = DomainSpec::couhil_power(2.0);
  const IsocapFn nu = nu_p(dom, 2.0);
  // delta(sqrt{s}) s^{(1-p)/2} = s^{alpha/2 + (1-p)/2}
  CHECK(nu.evaluate(0.25) ==
        doctest::Approx(std::pow(0.25, 1.0 + (1.0 - 2.0) / 2.0)));
  CHECK_THROWS_AS(nu_p(dom, 2.5), std::invalid_argument);        // p > 2
  CHECK_THROWS_AS(nu_p(DomainSpec::couhil_power(3.5), 2.0),
                  std::invalid_argument);                        // alpha > p+1
  CHECK_THROWS_AS(DomainSpec::couhil_power(1.0), std::invalid_argument);
}

TEST_CASE("nu_p: Holder and gamma-John lower bounds") {
  const DomainSpec hol = DomainSpec::holder(3, 0.5);
  const IsocapFn nuh = nu_p(hol, 2.0);
  CHECK(nuh.exactness == Exactness::kLowerBoundOnly);
  CHECK(*nuh.asymptotic_exponent ==
        doctest::Approx(1.0 - 0.5 * 2.0 / (3.0 - 1.0 + 0.5)));
  CHECK_THROWS_AS(nu_p(hol, 5.1), std::invalid_argument);  // p >= (n-1)/a + 1

  const DomainSpec john = DomainSpec::gamma_john(3, 1.5);
  const IsocapFn nuj = nu_p(john, 2.0);
  CHECK(nuj.exactness == Exactness::kLowerBoundOnly);
  // exponent ((n-1) gamma + 1 - p)/n = (2*1.5 - 1)/3
  CHECK(*nuj.asymptotic_exponent == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(nu_p(john, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(nu_p(DomainSpec::gamma_john(3, 2.1), 2.0),
                  std::invalid_argument);  // gamma > p/(n-1)+1
}

TEST_CASE("nu_p: cusp anchored capacity vs direct quadrature oracle") {
  // theta(r) = r, n = 2, p = 3, c0 = 1: Theta(rho) = rho^2/2 and
  // nu_3(s) = ( int_{sqrt(2s)}^{sqrt(2 M/2... )} r^{-1/2} dr )^{-2}
  const DomainSpec cusp = DomainSpec::cusp_power(2, 1.0, 1.0);
  const double M = cusp.measure;
  CHECK(M == doctest::Approx(0.5));
  const IsocapFn nu = nu_p(cusp, 3.0);
  const double s = 0.01;
  const double a = std::sqrt(2.0 * s);
  const double g = std::sqrt(2.0 * (0.5 * M));
  const double oracle = std::pow(
      oracles::midpoint_fixed(
          [](double r) { return std::pow(r, -0.5); }, a, g, 1000000L),
      -2.0);
  CHECK(std::abs(nu.evaluate(s) - oracle) / oracle < 1e-6);
}

TEST_CASE("nu_p: funnel closed form matches the custom-profile quadrature "
          "path") {
  const int n = 2;
  const double beta = 2.5;
  const DomainSpec fp = DomainSpec::funnel_power(n, beta);
  DomainSpec fc = fp;
  fc.funnel_zeta.kind = Profile::Kind::kCustom;
  fc.funnel_zeta.fn = [beta](double r) { return std::pow(1.0 + r, -beta); };
  fc.measure = upsilon_transform(fc, 0.0);
  CHECK(fc.measure == doctest::Approx(fp.measure).epsilon(1e-8));
  const IsocapFn nup = nu_p(fp, 2.0);
  const IsocapFn nuc = nu_p(fc, 2.0);
  for (double s : {1e-4, 1e-3, 1e-2, 0.2}) {
    const double sm = s * fp.measure;
    CHECK(nup.evaluate(sm) == doctest::Approx(nuc.evaluate(sm)).epsilon(1e-6));
  }
}

TEST_CASE("lambda_iso catalog values") {
  CHECK(lambda_iso(DomainSpec::lipschitz_ball(2)).evaluate(0.16) ==
        doctest::Approx(0.4));
  CHECK(lambda_iso(DomainSpec::couhil_power(1.5)).evaluate(0.09) ==
        doctest::Approx(std::pow(0.09, 0.75)));
  // cusp theta(r) = r, n = 2: lambda(s) = theta(Theta^{-1}(s)) = sqrt(2s)
  const DomainSpec cusp = DomainSpec::cusp_power(2, 1.0, 1.0);
  CHECK(lambda_iso(cusp).evaluate(0.08) ==
        doctest::Approx(std::sqrt(0.16)).epsilon(1e-10));
}

TEST_CASE("theta/upsilon transforms") {
  const DomainSpec cusp = DomainSpec::cusp_power(2, 1.0, 1.0);
  CHECK(theta_transform(cusp, 0.6) == doctest::Approx(0.18));
  CHECK(theta_inverse(cusp, 0.18) == doctest::Approx(0.6));

  const DomainSpec fexp = DomainSpec::funnel_exp(2, 1.0);
  CHECK(upsilon_transform(fexp, 1.3) == doctest::Approx(std::exp(-1.3)));

  const DomainSpec fpow = DomainSpec::funnel_power(3, 2.0);
  CHECK(upsilon_transform(fpow, 0.7) ==
        doctest::Approx(std::pow(1.7, -3.0) / 3.0));

  CHECK_THROWS_AS(DomainSpec::funnel_power(2, 0.9), std::invalid_argument);
}

TEST_CASE("condenser_capacity_1d closed forms") {
  auto one = [](double) { return 1.0; };
  CHECK(condenser_capacity_1d(one, 2.0, 0.1, 0.5).value ==
        doctest::Approx(2.5).epsilon(1e-9));
  for (double p : {1.5, 2.0, 3.0}) {
    CHECK(condenser_capacity_1d(one, p, 0.1, 0.5).value ==
          doctest::Approx(std::pow(0.4, 1.0 - p)).epsilon(1e-9));
  }
  // A(tau) = tau (cusp theta = r, n = 2), p = 3
  auto lin = [](double tau) { return tau; };
  const double expect =
      std::pow(2.0 * (std::sqrt(0.7) - std::sqrt(0.2)), -2.0);
  CHECK(condenser_capacity_1d(lin, 3.0, 0.2, 0.7).value ==
        doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("condenser_capacity_1d: zero capacity on divergent resistance") {
  // A(tau) = tau^3 with p = 2: resistance from 0 diverges
  auto A = [](double tau) { return tau * tau * tau; };
  const Capacity1D cap = condenser_capacity_1d(A, 2.0, 0.0, 0.5);
  CHECK(cap.zero_capacity);
  CHECK(cap.value == 0.0);
}

TEST_CASE("condenser_capacity_1d monotone in the plates") {
  auto A = [](double tau) { return 0.5 + tau; };
  const double base = condenser_capacity_1d(A, 2.0, 0.2, 0.6).value;
  // larger inner plate: capacity increases
  CHECK(condenser_capacity_1d(A, 2.0, 0.3, 0.6).value > base);
  // larger outer set: capacity decreases
  CHECK(condenser_capacity_1d(A, 2.0, 0.2, 0.8).value < base);
}

TEST_CASE("condenser_capacity_radial closed forms") {
  CHECK(condenser_capacity_radial(3, 2.0, 0.2, 0.8) ==
        doctest::Approx(1.0 / (1.0 / 0.2 - 1.0 / 0.8)).epsilon(1e-9));
  CHECK(condenser_capacity_radial(2, 2.0, 0.1, 0.9) ==
        doctest::Approx(1.0 / std::log(9.0)).epsilon(1e-9));
  // capacity of a shrinking inner ball vanishes for p < n
  CHECK(condenser_capacity_radial(3, 2.0, 1e-7, 0.8) < 1e-6);
  CHECK_THROWS_AS(condenser_capacity_radial(2, 3.0, 0.1, 0.9),
                  std::invalid_argument);
}

TEST_CASE("ball asymptotics: capacity through mass has slope (n-p)/n") {
  for (auto [n, p] : std::vector<std::pair<int, double>>{
           {3, 2.0}, {4, 2.0}, {3, 1.5}}) {
    const double R = 1.0;
    const double r1 = 1e-5, r2 = 1e-7;
    const double c1 = condenser_capacity_radial(n, p, r1, R);
    const double c2 = condenser_capacity_radial(n, p, r2, R);
    const double s1 = std::pow(r1, double(n)) / n;
    const double s2 = std::pow(r2, double(n)) / n;
    const double slope =
        (std::log(c1) - std::log(c2)) / (std::log(s1) - std::log(s2));
    CHECK(std::abs(slope - double(n - p) / n) < 0.01);
  }
}

TEST_CASE("nu_p monotone non-decreasing across the catalog") {
  struct Case {
    DomainSpec dom;
    double p;
  };
  const std::vector<Case> cases = {
      {DomainSpec::lipschitz_ball(3), 2.0},
      {DomainSpec::lipschitz_ball(2), 2.0},
      {DomainSpec::holder(3, 0.5), 2.0},
      {DomainSpec::gamma_john(3, 1.5), 2.0},
      {DomainSpec::cusp_power(2, 2.0, 1.0), 1.5},
      {DomainSpec::cusp_power(3, 1.0, 1.0), 2.0},
      {DomainSpec::funnel_power(2, 3.0), 2.0},
      {DomainSpec::funnel_exp(2, 1.0), 2.0},
      {DomainSpec::couhil_power(2.0), 1.5},
      {DomainSpec::nikodym_power(1.3), 2.0},
  };
  for (const Case& c : cases) {
    const IsocapFn nu = nu_p(c.dom, c.p);
    double prev = 0.0;
    const double half = 0.5 * c.dom.measure;
    for (const double s : Grid::log_spaced(half * 1e-6, half * 0.999, 200)) {
      const double v = nu.evaluate(s);
      CHECK(v >= prev * (1.0 - 1e-9));
      CHECK(v > 0.0);
      prev = v;
    }
  }
}

TEST_CASE("nu_from_lambda closed forms") {
  // lambda = 1, p = 2, M = 1: nu(s) = (1/2 - s)^{-1}
  IsoperFn flat;
  flat.measure = 1.0;
  flat.evaluate = [](double) { return 1.0; };
  flat.exactness = Exactness::kExact;
  const IsocapFn nu1 = nu_from_lambda(flat, 2.0, 1.0);
  for (double s : {0.1, 0.25, 0.4}) {
    CHECK(nu1.evaluate(s) == doctest::Approx(1.0 / (0.5 - s)).epsilon(1e-8));
  }
  CHECK(nu1.exactness == Exactness::kLowerBoundOnly);

  // lambda(r) = r, p = 2: inner integral 1/s - 2, nu = (1/s - 2)^{-1}
  IsoperFn linear;
  linear.measure = 1.0;
  linear.evaluate = [](double r) { return r; };
  const IsocapFn nu2 = nu_from_lambda(linear, 2.0, 1.0);
  CHECK(nu2.evaluate(0.1) == doctest::Approx(1.0 / 8.0).epsilon(1e-8));

  // lambda(r) = sqrt(r), p = 2: inner integral log(1/(2s))
  IsoperFn root;
  root.measure = 1.0;
  root.evaluate = [](double r) { return std::sqrt(r); };
  const IsocapFn nu3 = nu_from_lambda(root, 2.0, 1.0);
  CHECK(nu3.evaluate(0.1) ==
        doctest::Approx(1.0 / std::log(5.0)).epsilon(1e-8));
}

TEST_CASE("nu_from_lambda equals the anchored capacity for profile domains") {
  // the 1D change of variables makes the lambda lower bound an equality for
  // cusps when c0 = 1
  for (double kappa : {1.0, 2.0}) {
    for (double p : {1.5, 3.0}) {
      const DomainSpec cusp = DomainSpec::cusp_power(2, kappa, 1.0);
      const IsocapFn direct = nu_p(cusp, p);
      const IsocapFn via_lambda =
          nu_from_lambda(lambda_iso(cusp), p, cusp.measure);
      const double half = 0.5 * cusp.measure;
      for (const double s :
           Grid::log_spaced(half * 1e-4, half * 0.99, 100)) {
        CHECK(via_lambda.evaluate(s) ==
              doctest::Approx(direct.evaluate(s)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("nikodym: the lambda route is strictly weaker (larger decay "
          "exponent)") {
  // nu_from_lambda(delta) decays like s^{(alpha p' - 1)(p-1)}, strictly
  // faster than nu_p = s^alpha, so the lower bound it provides is strictly
  // smaller near 0: the reverse of the lambda-capacity inequality fails here
  const double p = 2.0;
  for (double alpha : {1.5, 2.0, 2.5}) {
    const DomainSpec dom = DomainSpec::nikodym_power(alpha);
    const IsocapFn direct = nu_p(dom, p);
    const IsocapFn via = nu_from_lambda(lambda_iso(dom), p, dom.measure);
    REQUIRE(via.asymptotic_exponent.has_value());
    const double expect = (alpha * 2.0 - 1.0) * (p - 1.0);
    CHECK(*via.asymptotic_exponent == doctest::Approx(expect));
    CHECK(*via.asymptotic_exponent > *direct.asymptotic_exponent);
    // and pointwise near zero the lambda route is indeed smaller
    for (double s : {1e-6, 1e-4, 1e-3}) {
      CHECK(via.evaluate(s) < direct.evaluate(s));
    }
  }
}

TEST_CASE("profile_exact_nu: interval closed form and ball round trip") {
  const IsocapFn intnu = interval_exact_nu(2.0, 1.0);
  CHECK(intnu.evaluate(0.25) == doctest::Approx(4.0));
  CHECK(intnu.weight.density(0.3) == doctest::Approx(1.0));

  const WeightedModel ball = ball_model(3, 1.0);
  const IsocapFn nu = profile_exact_nu(ball, 2.0);
  // generalized inverse round-trips the tabulated ball nu_2
  const double y = nu.evaluate(0.1);
  const double s =
      generalized_left_inverse(nu.evaluate, 1e-9, 0.499, y).s;
  CHECK(s == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("weighted models: mass transforms are consistent") {
  const WeightedModel ball = ball_model(3, 2.0, 1.0);
  CHECK(ball.mass_at(ball.T) == doctest::Approx(2.0));
  CHECK(ball.coord_at_mass(ball.mass_at(0.77 * ball.T)) ==
        doctest::Approx(0.77 * ball.T));

  const DomainSpec cspec = DomainSpec::cusp_power(2, 2.0, 1.0);
  const WeightedModel cusp = cusp_model(cspec);
  CHECK(cusp.mass_at(cusp.T) == doctest::Approx(cspec.measure));
  CHECK(cusp.A(0.5) == doctest::Approx(0.25));
}
