#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "orlicz/defining.hpp"
#include "orlicz/gamma.hpp"

namespace orlicz {

// Parse failure for a function spec string; position is the offset of the
// offending character in the input.
struct SpecError : std::runtime_error {
  SpecError(const std::string& what, size_t pos);
  size_t position = 0;
};

// Grammar: name(key=value{,key=value}) or file:@path (the file holds one
// spec).  composed(PHI_SPEC,GAMMA_SPEC) and scaled(PHI_SPEC,m=REAL) nest.
// Parameter ranges are enforced by the factories; violations surface as
// std::invalid_argument naming the parameter.
DefiningFunction parse_phi_spec(const std::string& text);
GammaFunction parse_gamma_spec(const std::string& text);

struct ExperimentConfig {
  std::string command;
  std::string variant;  // counterexample: prop34 | thm43 | thm42

  std::string phi, gamma, psi;  // function spec strings
  std::string arcs;  // step function: "m:v,..." or positioned "s:l:v,..."
  std::string grid = "geometric:200";
  double t_min = 100.0, t_max = 1e8;
  int n = 100;
  int k = 2;
  int n_lo = 4, n_hi = 6;
  int cases = 100;
  double q = 0.5;
  double eps = 0.05;
  double eta = 1.0;
  double beta = 2.0;
  double gamma_exp = 1.5;
  double m = 0.5;
  double theta = 0.75;
  double re = 0.0, im = 0.0;
  unsigned long seed = 1;

  std::string out;              // output path; empty writes to stdout
  std::string format = "json";  // json | csv
  std::string plot;             // svg path; empty disables plotting
};

struct ReportDocument {
  nlohmann::json body;                       // keyed report, sorted keys
  std::vector<std::string> columns;          // flat table for csv
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<double, double>> figure;  // line series for svg
};

// Dispatches to the module operations.  Negative mathematical verdicts
// still produce a report; only operational failures throw.
ReportDocument run_experiment(const ExperimentConfig& cfg);

// Canonical serialization: keys sorted, every float rendered %.12e, so
// identical configs give byte-identical output.
std::string to_json(const ReportDocument& rep);
std::string to_csv(const ReportDocument& rep);
// Simple line plot of the figure series; throws std::invalid_argument
// when the report carries no figure data.
std::string to_svg(const ReportDocument& rep);

// Writes the report per cfg.format/cfg.out and the plot per cfg.plot;
// falls back to `os` when no output path is given.
void emit(const ReportDocument& rep, const ExperimentConfig& cfg, std::ostream& os);

}  // namespace orlicz
