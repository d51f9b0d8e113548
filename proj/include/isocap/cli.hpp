#pragma once

// Command-line front end: configuration parsing, catalog queries, criteria
// sweeps, bound computation, oracle verification, and report emission.
// Outputs are deterministic: JSON with alphabetically sorted keys and %.12e
// floats, CSV with a header row and %.12e values.

#include <map>
#include <string>
#include <vector>

#include "isocap/criteria.hpp"
#include "isocap/domains.hpp"
#include "isocap/rearrange.hpp"

namespace isocap::cli {

struct DatumSpec {
  std::string kind = "cos";  // cos|sin|tent|linear|sign_split|zero|fstar_csv
  int k = 1;                 // frequency for cos/sin
  double amplitude = 1.0;
  std::string path;  // for fstar_csv
};

struct SweepSpec {
  std::string param = "alpha";  // domain parameter swept
  std::vector<double> values;
  std::vector<double> p_values;
  std::vector<double> q_values;
  bool via_lambda = false;
};

struct RunConfig {
  std::string command;  // catalog | analyze | bound | verify | sweep
  std::string out_dir = ".";
  std::string format = "json";  // json | csv | table
  int threads = 1;

  // domain description (family + parameters), kept as parsed scalars
  std::string family;  // lipschitz_ball|holder|gamma_john|cusp|funnel|
                       // couhil|nikodym|custom_power|interval
  int dimension = 2;
  double c0 = 1.0;
  double measure = 1.0;
  double alpha = 1.5;   // holder alpha / comb delta exponent
  double gamma_dom = 1.0;
  double kappa = 1.0;   // cusp profile exponent
  double length = 1.0;  // cusp length
  double beta = 2.0;    // funnel decay exponent
  double theta = 0.5;   // custom power-law nu exponent

  double p = 2.0;
  double q = 2.0;  // inf spelled "inf" in the config
  double sigma = std::numeric_limits<double>::quiet_NaN();
  double rho = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();

  std::vector<std::string> criteria = {"wellposedness"};
  DatumSpec datum;
  SweepSpec sweep;

  std::string verify_model = "interval";  // interval | ball
  int cells = 10000;
  int bound_points = 200;
  int levels = 50;
  double rel_tol_proper = kRelTolProper;
  double rel_tol_improper = kRelTolImproper;
};

// Parses and validates the JSON config; unknown commands/families are
// rejected with a message naming the violated precondition.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

// Builds the domain named by the config.
DomainSpec domain_from_config(const RunConfig& cfg);

// Named closed-form datum on (0, T).
Fn make_datum(const DatumSpec& spec, double T);

// Deterministic serialization.
std::string format_float(double v);  // %.12e; "inf"/"-inf"/"nan" words
std::string reports_to_json(const std::vector<CriterionReport>& reports);
std::string reports_to_csv(const std::vector<CriterionReport>& reports);
std::string reports_to_table(const std::vector<CriterionReport>& reports);

// Reads a tabulated f* CSV (columns: mass, value; strictly increasing mass,
// non-increasing value) into a step function.
StepFunction read_fstar_csv(const std::string& path);

// Executes the configured command; writes artifacts under cfg.out_dir.
// Returns 0 on success, 2 on configuration errors, 3 on numerical failure.
int run(const RunConfig& cfg);

}  // namespace isocap::cli
