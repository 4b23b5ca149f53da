#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smdlab/analysis.hpp"
#include "smdlab/evaluator.hpp"
#include "smdlab/kernel.hpp"

namespace smdlab {

enum class ExperimentKind {
  figure1,      // g = e^x, n = 25, 50, 100
  figure2,      // g = x^2 sin(2 pi x), n = 50..300
  korovkin,     // monomial sup errors
  voronovskaya, // residual series at x = 1
  gruss,        // gap deviation series at x = 1
  quantitative, // L_n / D_n ratio series at x = 1
  bounds,       // Lipschitz bound slack series
  custom,
};

ExperimentKind parse_experiment_kind(const std::string& s);
std::string to_string(ExperimentKind k);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::custom;
  std::string function;        // registry id; empty -> kind default
  std::vector<int> n_values;   // empty -> kind default
  UnSequence sequence = UnSequence::identity();
  double x_min = 0.0;
  double x_max = 4.0;
  int points = 401;
  QuadratureSpec quad;
  std::string csv_path;  // empty -> not written
  std::string svg_path;
};

struct ExperimentReport {
  ExperimentSpec spec;  // effective spec, defaults resolved
  std::string function; // resolved registry id
  std::vector<int> n_values;
  std::vector<double> u_values;
  std::vector<double> x;
  std::vector<double> target;                // g(x)
  std::vector<std::vector<double>> columns;  // one per n, same length as x
  std::vector<double> sup_error;             // per n
  std::vector<double> mean_error;
  std::optional<ResidualSeries> residuals;   // analysis kinds only
  std::string residual_label;
  std::vector<std::string> colors;  // per-n SVG strokes
  std::string generated_at;         // UTC timestamp; not emitted into files
};

// Evaluates the experiment and writes csv/svg when paths are set.
// Throws std::invalid_argument naming the offending field on a bad spec.
ExperimentReport run(const ExperimentSpec& spec);

}  // namespace smdlab
