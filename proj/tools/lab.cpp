// lab: evaluate Szasz-Mirakjan-Durrmeyer operator experiments and certify
// the approximation theorems behind them.
//
//   lab run <kind> [options]       write a comparison table (csv/svg)
//   lab certify <theorem>|all      run an assertion suite, exit 0 iff green
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smdlab/certify.hpp"
#include "smdlab/experiment.hpp"

namespace {

smdlab::UnSequence parse_sequence(const std::string& s) {
  if (s == "identity") return smdlab::UnSequence::identity();
  if (s.rfind("power:", 0) == 0) return smdlab::UnSequence::power(std::stod(s.substr(6)));
  if (s.rfind("table:", 0) == 0) {
    std::ifstream in(s.substr(6));
    if (!in) throw std::invalid_argument("sequence table file not readable: " + s.substr(6));
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      vals.push_back(std::stod(line));
    }
    return smdlab::UnSequence::table(std::move(vals));
  }
  throw std::invalid_argument("sequence must be identity, power:<p> or table:<path>");
}

void print_summary(const smdlab::ExperimentReport& r) {
  std::printf("experiment %s: target %s on [%g, %g], %d grid points, u_n %s\n",
              smdlab::to_string(r.spec.kind).c_str(), r.function.c_str(), r.spec.x_min,
              r.spec.x_max, r.spec.points, r.spec.sequence.describe().c_str());
  for (size_t i = 0; i < r.n_values.size(); ++i)
    std::printf("  n=%-5d u_n=%-9.6g sup error %-12.6g mean error %.6g\n", r.n_values[i],
                r.u_values[i], r.sup_error[i], r.mean_error[i]);
  if (r.residuals) {
    auto fit = r.residuals->slope();
    std::printf("  residual series: %s, fitted log-log slope %.4f over %d points\n",
                r.residual_label.c_str(), fit.slope, fit.points_used);
  }
  if (!r.spec.csv_path.empty()) std::printf("  csv: %s\n", r.spec.csv_path.c_str());
  if (!r.spec.svg_path.empty()) std::printf("  svg: %s\n", r.spec.svg_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for generalized Szasz-Mirakjan-Durrmeyer operators"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "evaluate an experiment, write csv/svg reports");
  std::string kind_s, function_id, sequence_s = "identity", csv_path, svg_path;
  std::vector<int> n_values;
  double x_min = 0.0, x_max = 4.0, tol = 1e-12;
  int points = 401, order = 48;
  bool fixed_order = false;
  run_cmd->add_option("kind", kind_s,
                      "figure1|figure2|korovkin|voronovskaya|gruss|quantitative|bounds|custom")
      ->required();
  run_cmd->add_option("--function", function_id, "target id (see --list-functions)");
  run_cmd->add_option("--n", n_values, "comparison indices, e.g. 25,50,100")->delimiter(',');
  run_cmd->add_option("--sequence", sequence_s, "identity | power:<p> | table:<path>");
  run_cmd->add_option("--xmin", x_min, "grid start (default 0)");
  run_cmd->add_option("--xmax", x_max, "grid end (default 4)");
  run_cmd->add_option("--points", points, "grid size (default 401)");
  run_cmd->add_option("--quad-order", order, "Gauss-Laguerre order (default 48)");
  run_cmd->add_flag("--fixed", fixed_order, "disable adaptive order escalation");
  run_cmd->add_option("--tol", tol, "series tail / adaptive agreement tolerance");
  run_cmd->add_option("--csv", csv_path, "write the table and error summary here");
  run_cmd->add_option("--svg", svg_path, "write the comparison chart here");
  bool list_functions = false;
  run_cmd->add_flag("--list-functions", list_functions, "print target ids and exit");

  auto* cert_cmd = app.add_subcommand("certify", "run an assertion suite for one theorem");
  std::string theorem;
  bool verbose = false;
  cert_cmd->add_option("theorem", theorem,
                       "moments|korovkin|voronovskaya|gruss|quantitative|bounds|all")
      ->required();
  cert_cmd->add_flag("-v,--verbose", verbose, "print measured details for passing checks too");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (list_functions) {
        for (const auto& id : smdlab::builtin_function_ids()) std::printf("%s\n", id.c_str());
        return 0;
      }
      smdlab::ExperimentSpec spec;
      spec.kind = smdlab::parse_experiment_kind(kind_s);
      spec.function = function_id;
      spec.n_values = n_values;
      spec.sequence = parse_sequence(sequence_s);
      spec.x_min = x_min;
      spec.x_max = x_max;
      spec.points = points;
      spec.quad.order = order;
      spec.quad.scheme = fixed_order ? smdlab::QuadratureSpec::Scheme::fixed
                                     : smdlab::QuadratureSpec::Scheme::adaptive;
      spec.quad.series_tol = tol;
      spec.csv_path = csv_path;
      spec.svg_path = svg_path;
      print_summary(smdlab::run(spec));
      return 0;
    }
    // certify
    bool ok = true;
    if (theorem == "all") {
      for (auto k : {smdlab::CertifyKind::moments, smdlab::CertifyKind::korovkin,
                     smdlab::CertifyKind::voronovskaya, smdlab::CertifyKind::gruss,
                     smdlab::CertifyKind::quantitative, smdlab::CertifyKind::bounds})
        ok = smdlab::print_certify(k, verbose, std::cout) && ok;
    } else {
      ok = smdlab::print_certify(smdlab::parse_certify_kind(theorem), verbose, std::cout);
    }
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
