#include "isocap/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "isocap/bounds.hpp"
#include "isocap/solver.hpp"
#include "json.hpp"

namespace isocap::cli {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

double parse_q(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument("config: q must be a number or \"inf\"");
  }
  return j.get<double>();
}

double get_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

int get_or_int(const json& j, const char* key, int fallback) {
  return j.contains(key) ? j.at(key).get<int>() : fallback;
}

std::string get_or_str(const json& j, const char* key,
                       const std::string& fallback) {
  return j.contains(key) ? j.at(key).get<std::string>() : fallback;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

// value or JSON null for optional numeric fields; infinities as strings
std::string json_number(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  return format_float(v);
}

struct SweepRow {
  double value = 0.0;
  double p = 0.0;
  double q = 0.0;
  std::string criterion_id;
  std::string verdict;
  std::string quantity;  // preformatted or empty
};

}  // namespace

std::string format_float(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

RunConfig parse_config(const std::string& text) {
  json j = json::parse(text);
  RunConfig cfg;
  if (!j.contains("command")) {
    throw std::invalid_argument("config: missing \"command\"");
  }
  cfg.command = j.at("command").get<std::string>();
  const bool known = cfg.command == "catalog" || cfg.command == "analyze" ||
                     cfg.command == "bound" || cfg.command == "verify" ||
                     cfg.command == "sweep";
  if (!known) {
    throw std::invalid_argument("config: unknown command \"" + cfg.command +
                                "\" (catalog|analyze|bound|verify|sweep)");
  }
  cfg.out_dir = get_or_str(j, "out", ".");
  cfg.format = get_or_str(j, "format", "json");
  cfg.threads = get_or_int(j, "threads", 1);

  if (j.contains("domain")) {
    const json& d = j.at("domain");
    cfg.family = get_or_str(d, "family", "");
    cfg.dimension = get_or_int(d, "n", 2);
    cfg.c0 = get_or(d, "c0", 1.0);
    cfg.measure = get_or(d, "measure", 1.0);
    cfg.alpha = get_or(d, "alpha", 1.5);
    cfg.gamma_dom = get_or(d, "gamma", 1.0);
    cfg.kappa = get_or(d, "kappa", 1.0);
    cfg.length = get_or(d, "length", 1.0);
    cfg.beta = get_or(d, "beta", 2.0);
    cfg.theta = get_or(d, "theta", 0.5);
  }
  cfg.p = get_or(j, "p", 2.0);
  if (j.contains("q")) cfg.q = parse_q(j.at("q"));
  cfg.sigma = get_or(j, "sigma", NAN);
  cfg.rho = get_or(j, "rho", NAN);
  cfg.gamma = get_or(j, "gamma", NAN);

  if (j.contains("criteria")) {
    cfg.criteria.clear();
    for (const auto& c : j.at("criteria")) {
      cfg.criteria.push_back(c.get<std::string>());
    }
  }
  if (j.contains("datum")) {
    const json& d = j.at("datum");
    cfg.datum.kind = get_or_str(d, "kind", "cos");
    cfg.datum.k = get_or_int(d, "k", 1);
    cfg.datum.amplitude = get_or(d, "amplitude", 1.0);
    cfg.datum.path = get_or_str(d, "path", "");
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    cfg.cells = get_or_int(g, "cells", 10000);
    cfg.bound_points = get_or_int(g, "bound_points", 200);
    cfg.levels = get_or_int(g, "levels", 50);
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    cfg.rel_tol_proper = get_or(t, "rel_proper", kRelTolProper);
    cfg.rel_tol_improper = get_or(t, "rel_improper", kRelTolImproper);
  }
  if (j.contains("verify")) {
    cfg.verify_model = get_or_str(j.at("verify"), "model", "interval");
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    cfg.sweep.param = get_or_str(s, "param", "alpha");
    cfg.sweep.via_lambda =
        s.contains("via_lambda") && s.at("via_lambda").get<bool>();
    if (s.contains("values")) {
      for (const auto& v : s.at("values")) {
        cfg.sweep.values.push_back(v.get<double>());
      }
    } else if (s.contains("from")) {
      const double from = s.at("from").get<double>();
      const double to = s.at("to").get<double>();
      const double step = s.at("step").get<double>();
      for (double v = from; v <= to + 0.5 * step; v += step) {
        cfg.sweep.values.push_back(v);
      }
    }
    if (s.contains("p")) {
      for (const auto& v : s.at("p")) {
        cfg.sweep.p_values.push_back(v.get<double>());
      }
    } else {
      cfg.sweep.p_values.push_back(cfg.p);
    }
    if (s.contains("q")) {
      for (const auto& v : s.at("q")) cfg.sweep.q_values.push_back(parse_q(v));
    } else {
      cfg.sweep.q_values.push_back(cfg.q);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

DomainSpec domain_from_config(const RunConfig& cfg) {
  const std::string& f = cfg.family;
  if (f == "lipschitz_ball") {
    return DomainSpec::lipschitz_ball(cfg.dimension, cfg.measure, cfg.c0);
  }
  if (f == "holder") {
    return DomainSpec::holder(cfg.dimension, cfg.alpha, cfg.measure);
  }
  if (f == "gamma_john") {
    return DomainSpec::gamma_john(cfg.dimension, cfg.gamma_dom, cfg.measure);
  }
  if (f == "cusp") {
    return DomainSpec::cusp_power(cfg.dimension, cfg.kappa, cfg.length,
                                  cfg.c0);
  }
  if (f == "funnel") {
    return DomainSpec::funnel_power(cfg.dimension, cfg.beta, cfg.c0);
  }
  if (f == "couhil") return DomainSpec::couhil_power(cfg.alpha, cfg.measure);
  if (f == "nikodym") return DomainSpec::nikodym_power(cfg.alpha, cfg.measure);
  if (f == "custom_power") {
    const double theta = cfg.theta;
    return DomainSpec::custom(
        [theta](double s) { return std::pow(s, theta); }, cfg.measure,
        Exactness::kExact, theta);
  }
  throw std::invalid_argument(
      "config: unknown domain family \"" + f +
      "\" (lipschitz_ball|holder|gamma_john|cusp|funnel|couhil|nikodym|"
      "custom_power)");
}

Fn make_datum(const DatumSpec& spec, double T) {
  const double a = spec.amplitude;
  const double k = spec.k;
  if (spec.kind == "cos") {
    return [a, k, T](double t) { return a * std::cos(2.0 * kPi * k * t / T); };
  }
  if (spec.kind == "sin") {
    return [a, k, T](double t) { return a * std::sin(2.0 * kPi * k * t / T); };
  }
  if (spec.kind == "tent") {
    return [a, T](double t) { return t < 0.5 * T ? a : -a; };
  }
  if (spec.kind == "linear") {
    return [a, T](double t) { return a * (t - 0.5 * T); };
  }
  if (spec.kind == "zero") {
    return [](double) { return 0.0; };
  }
  throw std::invalid_argument("config: unknown datum kind \"" + spec.kind +
                              "\" (cos|sin|tent|linear|sign_split|zero)");
}

StepFunction read_fstar_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("fstar_csv: cannot open " + path);
  StepFunction f;
  std::string line;
  bool first = true;
  double prev_s = 0.0;
  double prev_v = std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {  // header row
      first = false;
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double s, v;
    if (!(ss >> s >> v)) {
      throw std::invalid_argument("fstar_csv: malformed row: " + line);
    }
    if (!(s > prev_s)) {
      throw std::invalid_argument(
          "fstar_csv: mass column must be strictly increasing");
    }
    if (!(v <= prev_v) || v < 0.0) {
      throw std::invalid_argument(
          "fstar_csv: values must be non-negative and non-increasing");
    }
    f.cuts.push_back(s);
    f.vals.push_back(v);
    prev_s = s;
    prev_v = v;
  }
  if (f.cuts.empty()) throw std::invalid_argument("fstar_csv: empty table");
  return f;
}

std::string reports_to_json(const std::vector<CriterionReport>& reports) {
  std::string out = "[\n";
  for (size_t i = 0; i < reports.size(); ++i) {
    const CriterionReport& r = reports[i];
    out += "  {\n";
    out += "    \"criterion_id\": \"" + json_escape(r.criterion_id) + "\",\n";
    out += "    \"gamma\": " + json_number(r.gamma) + ",\n";
    out += "    \"notes\": [";
    for (size_t k = 0; k < r.notes.size(); ++k) {
      if (k) out += ", ";
      out += "\"" + json_escape(r.notes[k]) + "\"";
    }
    out += "],\n";
    out += "    \"p\": " + json_number(r.p) + ",\n";
    out += "    \"q\": " + json_number(r.q) + ",\n";
    out += "    \"quantity\": " +
           (r.quantity ? json_number(*r.quantity) : std::string("null")) +
           ",\n";
    out += "    \"rho\": " + json_number(r.rho) + ",\n";
    out += "    \"sigma\": " + json_number(r.sigma) + ",\n";
    out += "    \"verdict\": \"" + verdict_name(r.verdict) + "\"\n";
    out += (i + 1 < reports.size()) ? "  },\n" : "  }\n";
  }
  out += "]\n";
  return out;
}

std::string reports_to_csv(const std::vector<CriterionReport>& reports) {
  std::string out = "criterion_id,p,q,sigma,rho,gamma,verdict,quantity\n";
  for (const CriterionReport& r : reports) {
    out += r.criterion_id + ',' + format_float(r.p) + ',' + format_float(r.q) +
           ',' + format_float(r.sigma) + ',' + format_float(r.rho) + ',' +
           format_float(r.gamma) + ',' + verdict_name(r.verdict) + ',' +
           (r.quantity ? format_float(*r.quantity) : std::string("")) + "\n";
  }
  return out;
}

std::string reports_to_table(const std::vector<CriterionReport>& reports) {
  char buf[256];
  std::string out =
      "criterion      p      q      sigma  verdict            quantity\n";
  for (const CriterionReport& r : reports) {
    std::snprintf(buf, sizeof(buf), "%-13s %-6.3g %-6.3g %-6.3g %-18s %s\n",
                  r.criterion_id.c_str(), r.p, r.q, r.sigma,
                  verdict_name(r.verdict).c_str(),
                  r.quantity ? format_float(*r.quantity).c_str() : "-");
    out += buf;
  }
  return out;
}

namespace {

std::string curve_to_csv(const BoundCurve& c) {
  std::string out = "s,bound,provenance\n";
  for (size_t i = 0; i < c.s.size(); ++i) {
    out += format_float(c.s[i]) + ',' + format_float(c.value[i]) + ',' +
           provenance_name(c.provenance) + "\n";
  }
  return out;
}

std::vector<CriterionReport> run_criteria(const RunConfig& cfg) {
  const DomainSpec dom = domain_from_config(cfg);
  std::vector<CriterionReport> reports;
  for (const std::string& name : cfg.criteria) {
    if (name == "wellposedness") {
      reports.push_back(wellposedness(nu_p(dom, cfg.p), dom.measure, cfg.p,
                                      cfg.q));
    } else if (name == "wellposedness_via_lambda") {
      reports.push_back(wellposedness_via_lambda(lambda_iso(dom), dom.measure,
                                                 cfg.p, cfg.q));
    } else if (name == "solution_norm") {
      reports.push_back(solution_norm_condition(nu_p(dom, cfg.p), dom.measure,
                                                cfg.p, cfg.q, cfg.sigma));
    } else if (name == "gradient_norm") {
      reports.push_back(gradient_norm_condition(nu_p(dom, cfg.p), dom.measure,
                                                cfg.p, cfg.q, cfg.sigma));
    } else if (name == "lorentz_gradient") {
      reports.push_back(lorentz_gradient_condition(nu_p(dom, cfg.p),
                                                   dom.measure, cfg.p, cfg.q,
                                                   cfg.sigma, cfg.rho,
                                                   cfg.gamma));
    } else if (name == "embedding") {
      reports.push_back(embedding_condition(nu_p(dom, cfg.p), dom.measure,
                                            cfg.p, cfg.sigma));
    } else {
      throw std::invalid_argument(
          "config: unknown criterion \"" + name +
          "\" (wellposedness|wellposedness_via_lambda|solution_norm|"
          "gradient_norm|lorentz_gradient|embedding)");
    }
  }
  return reports;
}

int cmd_analyze(const RunConfig& cfg) {
  const std::vector<CriterionReport> reports = run_criteria(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const std::string base = cfg.out_dir + "/reports";
  write_text_file(base + ".json", reports_to_json(reports));
  if (cfg.format == "csv") write_text_file(base + ".csv",
                                           reports_to_csv(reports));
  std::cout << reports_to_table(reports);
  for (const CriterionReport& r : reports) {
    if (r.verdict == Verdict::kInconclusive &&
        std::find(r.notes.begin(), r.notes.end(),
                  "near-threshold exponent: not decided numerically") !=
            r.notes.end()) {
      std::cerr << "note: " << r.criterion_id
                << " is within the numeric threshold margin\n";
    }
  }
  return 0;
}

RearrangedDatum datum_for_bounds(const RunConfig& cfg, double measure) {
  if (cfg.datum.kind == "fstar_csv") {
    StepFunction plus = read_fstar_csv(cfg.datum.path);
    StepFunction minus = plus;  // symmetric datum from a one-sided table
    return RearrangedDatum::from_star_pair(std::move(plus), std::move(minus),
                                           cfg.q, measure);
  }
  const Fn f = make_datum(cfg.datum, measure);
  return RearrangedDatum::from_sampled(
      SampledFn::sample(f, measure, cfg.cells), cfg.q);
}

IsocapFn nu_for_bounds(const RunConfig& cfg) {
  if (cfg.family == "interval") {
    return interval_exact_nu(cfg.p, cfg.measure);
  }
  if (cfg.family == "ball") {
    return profile_exact_nu(ball_model(cfg.dimension, cfg.measure, cfg.c0),
                            cfg.p);
  }
  return nu_p(domain_from_config(cfg), cfg.p);
}

int cmd_bound(const RunConfig& cfg) {
  const IsocapFn nu = nu_for_bounds(cfg);
  const double M = nu.measure;
  const RearrangedDatum datum = datum_for_bounds(cfg, M);
  std::filesystem::create_directories(cfg.out_dir);

  const std::vector<double> sol_grid =
      Grid::log_spaced(M * 1e-4, 0.5 * M * 0.998, cfg.bound_points);
  const std::vector<double> grad_grid =
      Grid::log_spaced(M * 1e-4, M * 0.98, cfg.bound_points);

  for (Sign sign : {Sign::kPlus, Sign::kMinus}) {
    const char* tag = (sign == Sign::kPlus) ? "plus" : "minus";
    const BoundCurve a =
        solution_rearrangement_bound(nu, datum, sign, sol_grid);
    write_text_file(cfg.out_dir + "/bound_solution_" + tag + ".csv",
                    curve_to_csv(a));
    const BoundCurve g =
        gradient_rearrangement_bound(nu, datum, sign, grad_grid);
    write_text_file(cfg.out_dir + "/bound_gradient_" + tag + ".csv",
                    curve_to_csv(g));
    BoundCurve m;
    m.provenance = Provenance::kProp540;
    m.constants_known = (nu.exactness == Exactness::kExact);
    m.s = grad_grid;
    m.flags.assign(grad_grid.size(), 0);
    for (double s : grad_grid) {
      m.value.push_back(marcinkiewicz_gradient_bound(nu, datum, sign, s));
    }
    write_text_file(cfg.out_dir + "/bound_marcinkiewicz_" + tag + ".csv",
                    curve_to_csv(m));
  }
  std::cout << "bound curves written to " << cfg.out_dir << "\n";
  return 0;
}

struct NamedCheck {
  std::string name;
  VerifyReport report;
};

int cmd_verify(const RunConfig& cfg) {
  WeightedModel model = (cfg.verify_model == "ball")
                            ? ball_model(cfg.dimension, cfg.measure, cfg.c0)
                            : interval_model(cfg.measure);
  IsocapFn nu = (cfg.verify_model == "ball")
                    ? profile_exact_nu(model, cfg.p)
                    : interval_exact_nu(cfg.p, cfg.measure);
  Fn f;
  if (cfg.datum.kind == "sign_split") {
    const double split = model.coord_at_mass(0.5 * model.measure);
    const double a = cfg.datum.amplitude;
    f = [split, a](double t) { return t < split ? a : -a; };
  } else {
    f = make_datum(cfg.datum, model.T);
  }
  const NeumannSolution sol =
      solve_weighted_neumann(model.A, cfg.p, f, cfg.cells, model.T);
  const RearrangedDatum datum = RearrangedDatum::from_sampled(
      SampledFn::from_cells(sol.t,
                            [&] {
                              std::vector<double> v(sol.tm.size());
                              for (size_t i = 0; i < v.size(); ++i) {
                                v[i] = f(sol.tm[i]);
                              }
                              return v;
                            }(),
                            sol.Am),
      cfg.q);

  const double M = sol.mass;
  double cell_mass = 0.0;
  for (int i = 0; i < sol.cells(); ++i) {
    cell_mass = std::max(cell_mass, sol.Am[i] * sol.h);
  }
  const std::vector<double> sol_grid = Grid::log_spaced(
      std::max(M * 1e-4, 2.0 * cell_mass), 0.5 * M - 4.0 * cell_mass,
      cfg.bound_points);
  const std::vector<double> grad_grid =
      Grid::log_spaced(std::max(M * 1e-4, 2.0 * cell_mass), M * 0.98,
                       cfg.bound_points);

  std::vector<NamedCheck> checks;
  for (Sign sign : {Sign::kPlus, Sign::kMinus}) {
    const char* tag = (sign == Sign::kPlus) ? "plus" : "minus";
    checks.push_back(
        {std::string("solution_bound_") + tag,
         verify_bound(sol, sign,
                      solution_rearrangement_bound(nu, datum, sign, sol_grid),
                      VerifyMode::kStrict)});
    checks.push_back(
        {std::string("gradient_bound_") + tag,
         verify_bound(sol, sign,
                      gradient_rearrangement_bound(nu, datum, sign, grad_grid),
                      VerifyMode::kStrict)});
    BoundCurve marc;
    marc.provenance = Provenance::kProp540;
    marc.constants_known = true;
    marc.s = grad_grid;
    marc.flags.assign(grad_grid.size(), 0);
    for (double s : grad_grid) {
      marc.value.push_back(marcinkiewicz_gradient_bound(nu, datum, sign, s));
    }
    checks.push_back({std::string("marcinkiewicz_pointwise_") + tag,
                      verify_bound(sol, sign, marc, VerifyMode::kStrict)});
    const std::vector<double> levels = level_grid(sol, sign, cfg.levels);
    checks.push_back({std::string("flux_inequality_") + tag,
                      verify_flux_inequality(sol, datum, sign, levels)});
    checks.push_back({std::string("isocap_levelset_") + tag,
                      verify_isocap_levelset(sol, nu, sign, levels)});
    checks.push_back({std::string("coarea_") + tag,
                      verify_coarea(sol, sign, levels)});
  }
  // median normalization: both sign parts occupy at most half the mass
  {
    VerifyReport med;
    med.checked = 2;
    const double above = sol.mass_above(Sign::kPlus, 0.0);
    const double below = sol.mass_above(Sign::kMinus, 0.0);
    med.worst_ratio = std::max(above, below) / (0.5 * M);
    med.pass = above <= 0.5 * M + cell_mass && below <= 0.5 * M + cell_mass;
    checks.push_back({"median_normalization", med});
  }

  std::string out = "{\n  \"checks\": [\n";
  bool all_pass = true;
  std::string first_fail;
  for (size_t i = 0; i < checks.size(); ++i) {
    const NamedCheck& c = checks[i];
    if (!c.report.pass && first_fail.empty()) first_fail = c.name;
    all_pass = all_pass && c.report.pass;
    out += "    {\"checked\": " + std::to_string(c.report.checked) +
           ", \"name\": \"" + c.name + "\", \"pass\": " +
           (c.report.pass ? "true" : "false") +
           ", \"worst_at\": " + json_number(c.report.worst_at) +
           ", \"worst_ratio\": " + json_number(c.report.worst_ratio) + "}";
    out += (i + 1 < checks.size()) ? ",\n" : "\n";
  }
  out += "  ],\n  \"model\": \"" + model.name + "\",\n  \"p\": " +
         json_number(cfg.p) + "\n}\n";
  std::filesystem::create_directories(cfg.out_dir);
  write_text_file(cfg.out_dir + "/verify.json", out);
  std::cout << out;
  if (!all_pass) {
    std::cerr << "verification failed: " << first_fail << "\n";
    return 3;
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.sweep.values.empty()) {
    throw std::invalid_argument("config: sweep requires values");
  }
  struct Cell {
    double value, p, q;
  };
  std::vector<Cell> cells;
  for (double v : cfg.sweep.values) {
    for (double p : cfg.sweep.p_values) {
      for (double q : cfg.sweep.q_values) cells.push_back({v, p, q});
    }
  }
  const int per_cell = cfg.sweep.via_lambda ? 2 : 1;
  std::vector<SweepRow> rows(cells.size() * per_cell);

  auto eval_cell = [&](size_t idx) {
    const Cell& c = cells[idx];
    RunConfig local = cfg;
    if (cfg.sweep.param == "alpha") local.alpha = c.value;
    else if (cfg.sweep.param == "beta") local.beta = c.value;
    else if (cfg.sweep.param == "kappa") local.kappa = c.value;
    else if (cfg.sweep.param == "theta") local.theta = c.value;
    else throw std::invalid_argument("config: unknown sweep param \"" +
                                     cfg.sweep.param + "\"");
    for (int piece = 0; piece < per_cell; ++piece) {
      SweepRow& row = rows[idx * per_cell + piece];
      row.value = c.value;
      row.p = c.p;
      row.q = c.q;
      try {
        const DomainSpec dom = domain_from_config(local);
        const CriterionReport rep =
            piece == 0
                ? wellposedness(nu_p(dom, c.p), dom.measure, c.p, c.q)
                : wellposedness_via_lambda(lambda_iso(dom), dom.measure, c.p,
                                           c.q);
        row.criterion_id = rep.criterion_id;
        row.verdict = verdict_name(rep.verdict);
        if (rep.quantity) row.quantity = format_float(*rep.quantity);
      } catch (const std::invalid_argument& e) {
        row.criterion_id = piece == 0 ? "WP" : "ISO";
        row.verdict = std::string("invalid: ") + e.what();
      }
    }
  };

  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (size_t i = 0; i < cells.size(); ++i) eval_cell(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < cells.size();
             i = next.fetch_add(1)) {
          eval_cell(i);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }

  std::string out = cfg.sweep.param + ",p,q,criterion_id,verdict,quantity\n";
  for (const SweepRow& r : rows) {
    out += format_float(r.value) + ',' + format_float(r.p) + ',' +
           format_float(r.q) + ',' + r.criterion_id + ",\"" + r.verdict +
           "\"," + r.quantity + "\n";
  }
  std::filesystem::create_directories(cfg.out_dir);
  write_text_file(cfg.out_dir + "/sweep.csv", out);
  std::cout << "sweep of " << rows.size() << " rows written to "
            << cfg.out_dir << "/sweep.csv\n";
  return 0;
}

int cmd_catalog(const RunConfig& cfg) {
  const std::string text =
      "family          parameters                validity\n"
      "lipschitz_ball  n, measure                1 < p <= n\n"
      "holder          n, alpha, measure         alpha in (0,1), "
      "p < (n-1)/alpha + 1\n"
      "gamma_john      n, gamma, measure         gamma >= 1, "
      "gamma <= p/(n-1) + 1\n"
      "cusp            n, kappa, length, c0      kappa >= 1 (convex profile, "
      "theta(0) = 0)\n"
      "funnel          n, beta, c0               beta (n-1) > 1 (finite "
      "volume)\n"
      "couhil          alpha, measure            1 < p <= 2, "
      "1 < alpha <= p + 1\n"
      "nikodym         alpha, measure            alpha >= 1\n"
      "custom_power    theta, measure            theta >= 0\n";
  std::filesystem::create_directories(cfg.out_dir);
  write_text_file(cfg.out_dir + "/catalog.txt", text);
  std::cout << text;
  return 0;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    if (cfg.command == "catalog") return cmd_catalog(cfg);
    if (cfg.command == "analyze") return cmd_analyze(cfg);
    if (cfg.command == "bound") return cmd_bound(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    std::cerr << "unknown command: " << cfg.command << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration/precondition error: " << e.what() << "\n";
    return 2;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace isocap::cli
