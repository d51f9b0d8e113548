#include "isocap/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace isocap {

namespace {

constexpr double kCompatibilityTol = 1e-10;

void require_same_grid(const SampledFn& u, const SampledFn& v,
                       const char* who) {
  if (u.edges != v.edges || u.weights != v.weights) {
    throw std::invalid_argument(std::string(who) +
                                ": operands must share grid and weights");
  }
}

}  // namespace

double SampledFn::total_mass() const {
  double m = 0.0;
  for (int i = 0; i < cells(); ++i) m += cell_mass(i);
  return m;
}

void SampledFn::validate() const {
  if (values.empty() || edges.size() != values.size() + 1 ||
      weights.size() != values.size()) {
    throw std::invalid_argument("SampledFn: inconsistent array sizes");
  }
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) {
      throw std::invalid_argument("SampledFn: edges must be increasing");
    }
  }
  for (double a : weights) {
    if (!(a >= 0.0)) {
      throw std::invalid_argument("SampledFn: weights must be non-negative");
    }
  }
  if (!(total_mass() > 0.0)) {
    throw std::invalid_argument("SampledFn: total mass must be positive");
  }
}

SampledFn SampledFn::sample(const Fn& u, double T, int cells, const Fn& A) {
  if (!(T > 0.0) || cells < 1) {
    throw std::invalid_argument("SampledFn::sample: bad grid");
  }
  SampledFn s;
  s.edges.resize(cells + 1);
  s.values.resize(cells);
  s.weights.resize(cells);
  const double h = T / cells;
  for (int i = 0; i <= cells; ++i) s.edges[i] = T * i / cells;
  for (int i = 0; i < cells; ++i) {
    const double m = s.edges[i] + 0.5 * h;
    s.values[i] = u(m);
    s.weights[i] = A ? A(m) : 1.0;
  }
  s.validate();
  return s;
}

SampledFn SampledFn::from_cells(std::vector<double> edges,
                                std::vector<double> values,
                                std::vector<double> weights) {
  SampledFn s;
  s.edges = std::move(edges);
  s.values = std::move(values);
  s.weights = std::move(weights);
  if (s.weights.empty()) s.weights.assign(s.values.size(), 1.0);
  s.validate();
  return s;
}

double StepFunction::operator()(double s) const {
  if (cuts.empty()) return 0.0;
  if (s <= cuts.front()) return vals.front();
  if (s > cuts.back()) return 0.0;
  const auto it = std::lower_bound(cuts.begin(), cuts.end(), s);
  return vals[static_cast<size_t>(it - cuts.begin())];
}

double StepFunction::integral() const {
  double acc = 0.0, prev = 0.0;
  for (size_t k = 0; k < cuts.size(); ++k) {
    acc += vals[k] * (cuts[k] - prev);
    prev = cuts[k];
  }
  return acc;
}

double StepFunction::integral_upto(double s) const {
  double acc = 0.0, prev = 0.0;
  for (size_t k = 0; k < cuts.size(); ++k) {
    if (s <= prev) break;
    acc += vals[k] * (std::min(s, cuts[k]) - prev);
    prev = cuts[k];
  }
  return acc;
}

double StepFunction::max_value() const {
  double m = 0.0;
  for (double v : vals) m = std::max(m, v);
  return m;
}

double CumulativeStep::operator()(double s) const {
  if (x.empty()) return 0.0;
  if (s <= x.front()) return y.front();
  if (s >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), s);
  const size_t k = static_cast<size_t>(it - x.begin());
  const double t = (s - x[k - 1]) / (x[k] - x[k - 1]);
  return y[k - 1] + t * (y[k] - y[k - 1]);
}

CumulativeStep CumulativeStep::of(const StepFunction& f) {
  CumulativeStep c;
  c.x.reserve(f.cuts.size() + 1);
  c.y.reserve(f.cuts.size() + 1);
  c.x.push_back(0.0);
  c.y.push_back(0.0);
  double prev = 0.0, acc = 0.0;
  for (size_t k = 0; k < f.cuts.size(); ++k) {
    acc += f.vals[k] * (f.cuts[k] - prev);
    prev = f.cuts[k];
    c.x.push_back(prev);
    c.y.push_back(acc);
  }
  return c;
}

double distribution_function(const SampledFn& u, double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("distribution_function: requires t >= 0");
  }
  double m = 0.0;
  for (int i = 0; i < u.cells(); ++i) {
    if (std::abs(u.values[i]) >= t) m += u.cell_mass(i);
  }
  return m;
}

namespace {

StepFunction rearrange_pairs(std::vector<std::pair<double, double>> vm) {
  // sort (value, mass) by value descending; accumulate masses
  std::sort(vm.begin(), vm.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  StepFunction out;
  out.cuts.reserve(vm.size());
  out.vals.reserve(vm.size());
  double acc = 0.0;
  for (const auto& [v, m] : vm) {
    if (m <= 0.0) continue;
    acc += m;
    if (!out.vals.empty() && out.vals.back() == v) {
      out.cuts.back() = acc;  // merge equal-value runs
    } else {
      out.cuts.push_back(acc);
      out.vals.push_back(v);
    }
  }
  if (out.cuts.empty()) {
    out.cuts.push_back(0.0);
    out.vals.push_back(0.0);
  }
  return out;
}

}  // namespace

StepFunction decreasing_rearrangement(const SampledFn& u) {
  std::vector<std::pair<double, double>> vm;
  vm.reserve(u.cells());
  for (int i = 0; i < u.cells(); ++i) {
    vm.emplace_back(std::abs(u.values[i]), u.cell_mass(i));
  }
  return rearrange_pairs(std::move(vm));
}

StepFunction increasing_rearrangement(const SampledFn& u) {
  StepFunction d = decreasing_rearrangement(u);
  const double M = d.mass();
  StepFunction out;
  out.cuts.reserve(d.cuts.size());
  out.vals.reserve(d.vals.size());
  double prev = 0.0;
  for (size_t k = d.cuts.size(); k-- > 0;) {
    const double lo = (k == 0) ? 0.0 : d.cuts[k - 1];
    out.cuts.push_back(M - lo);
    out.vals.push_back(d.vals[k]);
    prev = lo;
  }
  (void)prev;
  return out;
}

double median(const SampledFn& u) {
  const double half = 0.5 * u.total_mass();
  std::vector<std::pair<double, double>> vm;
  vm.reserve(u.cells());
  for (int i = 0; i < u.cells(); ++i) {
    vm.emplace_back(u.values[i], u.cell_mass(i));
  }
  std::sort(vm.begin(), vm.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  // walk values descending; mass_above(w) = |{u > w}| just below each value
  double mass_above = 0.0;
  double med = vm.front().first;  // if |{u > max}| = 0 < M/2 fails, max is med
  for (size_t i = 0; i < vm.size();) {
    size_t j = i;
    double block = 0.0;
    while (j < vm.size() && vm[j].first == vm[i].first) block += vm[j++].second;
    // t = vm[i].first: |{u > t}| = mass_above
    if (mass_above >= half) {
      // all t < previous distinct value still qualify; sup extends above
      // vm[i]; med found at the previous distinct value already
      break;
    }
    med = vm[i].first;
    mass_above += block;
    i = j;
  }
  // med is the smallest distinct value w with |{u > w}| < M/2
  return med;
}

std::pair<SampledFn, SampledFn> pos_neg_split(const SampledFn& u) {
  SampledFn plus = u, minus = u;
  for (int i = 0; i < u.cells(); ++i) {
    plus.values[i] = std::max(u.values[i], 0.0);
    minus.values[i] = std::max(-u.values[i], 0.0);
  }
  return {plus, minus};
}

double lq_norm(const SampledFn& u, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: requires q >= 1");
  double acc = 0.0;
  for (int i = 0; i < u.cells(); ++i) {
    acc += std::pow(std::abs(u.values[i]), q) * u.cell_mass(i);
  }
  return std::pow(acc, 1.0 / q);
}

double lorentz_norm(const StepFunction& ustar, double sigma, double rho) {
  if (!(sigma > 0.0 && rho > 0.0)) {
    throw std::invalid_argument("lorentz_norm: requires sigma, rho > 0");
  }
  // int (s^{1/sigma} u*(s))^rho ds/s = sum_k v_k^rho (sigma/rho)
  //                                    (s_k^{rho/sigma} - s_{k-1}^{rho/sigma})
  const double e = rho / sigma;
  double acc = 0.0, prev = 0.0;
  for (size_t k = 0; k < ustar.cuts.size(); ++k) {
    const double piece =
        (std::pow(ustar.cuts[k], e) - std::pow(prev, e)) / e;
    acc += std::pow(ustar.vals[k], rho) * piece;
    prev = ustar.cuts[k];
  }
  return std::pow(acc, 1.0 / rho);
}

double lorentz_norm(const SampledFn& u, double sigma, double rho) {
  return lorentz_norm(decreasing_rearrangement(u), sigma, rho);
}

double marcinkiewicz_norm(const StepFunction& ustar, const Fn& omega) {
  // omega non-decreasing: on each piece the sup is at the right cut
  double m = 0.0;
  for (size_t k = 0; k < ustar.cuts.size(); ++k) {
    m = std::max(m, omega(ustar.cuts[k]) * ustar.vals[k]);
  }
  return m;
}

double marcinkiewicz_norm(const SampledFn& u, const Fn& omega) {
  return marcinkiewicz_norm(decreasing_rearrangement(u), omega);
}

namespace {

// int_0^M f(s) g(s) ds for step functions on the same mass axis
double step_product_integral(const StepFunction& f, const StepFunction& g) {
  double acc = 0.0, prev = 0.0;
  size_t i = 0, j = 0;
  while (i < f.cuts.size() && j < g.cuts.size()) {
    const double next = std::min(f.cuts[i], g.cuts[j]);
    acc += f.vals[i] * g.vals[j] * (next - prev);
    if (f.cuts[i] <= next) ++i;
    if (g.cuts[j] <= next) ++j;
    prev = next;
  }
  return acc;
}

}  // namespace

HardyLittlewoodReport check_hardy_littlewood(const SampledFn& u,
                                             const SampledFn& v) {
  require_same_grid(u, v, "check_hardy_littlewood");
  HardyLittlewoodReport rep;
  rep.lower = step_product_integral(decreasing_rearrangement(u),
                                    increasing_rearrangement(v));
  rep.upper = step_product_integral(decreasing_rearrangement(u),
                                    decreasing_rearrangement(v));
  double mid = 0.0;
  for (int i = 0; i < u.cells(); ++i) {
    mid += std::abs(u.values[i] * v.values[i]) * u.cell_mass(i);
  }
  rep.middle = mid;
  return rep;
}

SubadditivityReport check_subadditivity_surrogates(const SampledFn& u,
                                                   const SampledFn& v) {
  require_same_grid(u, v, "check_subadditivity_surrogates");
  SampledFn sum = u, prod = u;
  for (int i = 0; i < u.cells(); ++i) {
    sum.values[i] = u.values[i] + v.values[i];
    prod.values[i] = u.values[i] * v.values[i];
  }
  const StepFunction us = decreasing_rearrangement(u);
  const StepFunction vs = decreasing_rearrangement(v);
  const StepFunction ss = decreasing_rearrangement(sum);
  const StepFunction ps = decreasing_rearrangement(prod);

  // both sides are step functions of s; probing the merged breakpoints
  // covers every piece (left-continuous convention)
  std::vector<double> probes;
  probes.insert(probes.end(), ss.cuts.begin(), ss.cuts.end());
  probes.insert(probes.end(), ps.cuts.begin(), ps.cuts.end());
  for (double c : us.cuts) probes.push_back(std::min(2.0 * c, us.mass()));
  for (double c : vs.cuts) probes.push_back(std::min(2.0 * c, vs.mass()));
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

  SubadditivityReport rep;
  rep.worst_sum_gap = std::numeric_limits<double>::infinity();
  rep.worst_prod_gap = std::numeric_limits<double>::infinity();
  for (double s : probes) {
    if (!(s > 0.0)) continue;
    const double half = 0.5 * s;
    rep.worst_sum_gap =
        std::min(rep.worst_sum_gap, us(half) + vs(half) - ss(s));
    rep.worst_prod_gap =
        std::min(rep.worst_prod_gap, us(half) * vs(half) - ps(s));
  }
  return rep;
}

RearrangedDatum RearrangedDatum::from_sampled(const SampledFn& f, double q) {
  RearrangedDatum d;
  double sum = 0.0, abs_sum = 0.0;
  for (int i = 0; i < f.cells(); ++i) {
    sum += f.values[i] * f.cell_mass(i);
    abs_sum += std::abs(f.values[i]) * f.cell_mass(i);
  }
  d.compatibility_residual = (abs_sum > 0.0) ? std::abs(sum) / abs_sum : 0.0;
  if (d.compatibility_residual > kCompatibilityTol) {
    throw std::invalid_argument(
        "RearrangedDatum: datum violates the compatibility condition "
        "int f = 0");
  }
  auto [plus, minus] = pos_neg_split(f);
  d.f_star = decreasing_rearrangement(f);
  d.f_plus_star = decreasing_rearrangement(plus);
  d.f_minus_star = decreasing_rearrangement(minus);
  d.q = q;
  d.norm_q = lq_norm(f, q);
  d.mass = f.total_mass();
  return d;
}

RearrangedDatum RearrangedDatum::from_star_pair(StepFunction plus,
                                                StepFunction minus, double q,
                                                double mass) {
  RearrangedDatum d;
  const double ip = plus.integral();
  const double im = minus.integral();
  const double scale = std::max(ip + im, 1e-300);
  d.compatibility_residual = std::abs(ip - im) / scale;
  if (d.compatibility_residual > kCompatibilityTol) {
    throw std::invalid_argument(
        "RearrangedDatum: parts violate the compatibility surrogate "
        "int f+* = int f-*");
  }
  // |f| rearrangement for disjointly supported parts: merge the level sets
  std::vector<std::pair<double, double>> vm;
  auto push = [&vm](const StepFunction& g) {
    double prev = 0.0;
    for (size_t k = 0; k < g.cuts.size(); ++k) {
      if (g.vals[k] > 0.0) vm.emplace_back(g.vals[k], g.cuts[k] - prev);
      prev = g.cuts[k];
    }
  };
  push(plus);
  push(minus);
  std::sort(vm.begin(), vm.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  StepFunction fstar;
  double acc = 0.0;
  for (const auto& [v, m] : vm) {
    acc += m;
    if (!fstar.vals.empty() && fstar.vals.back() == v) {
      fstar.cuts.back() = acc;
    } else {
      fstar.cuts.push_back(acc);
      fstar.vals.push_back(v);
    }
  }
  if (acc < mass) {
    fstar.cuts.push_back(mass);
    fstar.vals.push_back(0.0);
  }
  d.f_star = std::move(fstar);
  // q-norm from the merged rearrangement (rearrangement invariant)
  if (std::isinf(q)) {
    d.norm_q = d.f_star.max_value();
  } else {
    double acc_q = 0.0, prev = 0.0;
    for (size_t k = 0; k < d.f_star.cuts.size(); ++k) {
      acc_q += std::pow(d.f_star.vals[k], q) * (d.f_star.cuts[k] - prev);
      prev = d.f_star.cuts[k];
    }
    d.norm_q = std::pow(acc_q, 1.0 / q);
  }
  d.f_plus_star = std::move(plus);
  d.f_minus_star = std::move(minus);
  d.q = q;
  d.mass = mass;
  return d;
}

}  // namespace isocap
