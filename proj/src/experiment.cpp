#include "smdlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <stdexcept>

#include "smdlab/report_io.hpp"

namespace smdlab {

namespace {

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string default_function(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::figure1: return "exp";
    case ExperimentKind::figure2: return "x2sin2pix";
    case ExperimentKind::korovkin: return "t^2";
    case ExperimentKind::bounds: return "exp_neg";
    case ExperimentKind::gruss: return "t^3";  // product (t)(t^2); see residuals
    default: return "exp";
  }
}

std::vector<int> default_n(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::figure1: return {25, 50, 100};
    case ExperimentKind::figure2: return {50, 100, 150, 200, 300};
    case ExperimentKind::custom: return {25, 50, 100};
    default: return {16, 32, 64, 128, 256, 512, 1024};
  }
}

std::vector<std::string> palette(ExperimentKind k, size_t count) {
  static const std::vector<std::string> fig1{"green", "red", "black"};
  static const std::vector<std::string> fig2{"pink", "red", "magenta", "black", "green"};
  static const std::vector<std::string> general{"green",  "red",  "black", "magenta",
                                                "orange", "teal", "purple", "brown"};
  const auto& base = k == ExperimentKind::figure1   ? fig1
                     : k == ExperimentKind::figure2 ? fig2
                                                    : general;
  std::vector<std::string> out(count);
  for (size_t i = 0; i < count; ++i) out[i] = base[i % base.size()];
  return out;
}

void validate(const ExperimentSpec& s) {
  if (s.n_values.empty()) throw std::invalid_argument("spec.n_values: must be nonempty");
  int prev = 0;
  for (int n : s.n_values) {
    if (n < 1) throw std::invalid_argument("spec.n_values: entries must be >= 1");
    if (n <= prev) throw std::invalid_argument("spec.n_values: entries must be strictly increasing");
    prev = n;
  }
  if (!(s.x_min >= 0.0) || !std::isfinite(s.x_min))
    throw std::invalid_argument("spec.x_min: must be nonnegative and finite");
  if (!(s.x_max > s.x_min) || !std::isfinite(s.x_max))
    throw std::invalid_argument("spec.x_max: must exceed x_min and be finite");
  if (s.points < 2) throw std::invalid_argument("spec.points: must be >= 2");
  if (s.quad.order < 2) throw std::invalid_argument("spec.quad.order: must be >= 2");
  if (!(s.quad.series_tol > 0.0 && s.quad.series_tol < 1.0))
    throw std::invalid_argument("spec.quad.series_tol: must lie in (0, 1)");
}

// Residual point for the analysis kinds, evaluated at x_star = 1.
constexpr double kResidualX = 1.0;

void attach_residuals(ExperimentReport& rep) {
  const ExperimentSpec& s = rep.spec;
  switch (s.kind) {
    case ExperimentKind::korovkin: {
      ResidualSeries series;
      series.n = rep.n_values;
      series.u = rep.u_values;
      auto grid = uniform_grid(s.x_min, s.x_max, s.points);
      for (double u : series.u) {
        auto e = korovkin_errors(u, grid);
        series.value.push_back(std::max({e[0], e[1], e[2]}));
      }
      rep.residuals = std::move(series);
      rep.residual_label = "max_monomial_sup_error";
      break;
    }
    case ExperimentKind::voronovskaya:
      rep.residuals = voronovskaya_residual(builtin_function(rep.function), kResidualX,
                                            rep.n_values, s.sequence, s.quad);
      rep.residual_label = "voronovskaya_residual(x=1)";
      break;
    case ExperimentKind::quantitative:
      rep.residuals = quantitative_voronovskaya_check(builtin_function(rep.function),
                                                      kResidualX, rep.n_values, s.sequence,
                                                      default_grid(), s.quad)
                          .ratio;
      rep.residual_label = "quantitative_ratio(x=1)";
      break;
    case ExperimentKind::gruss:
      rep.residuals = gruss_deviation(monomial_function(1), monomial_function(2),
                                      kResidualX, rep.n_values, s.sequence, s.quad);
      rep.residual_label = "gruss_deviation(t,t^2)(x=1)";
      break;
    case ExperimentKind::bounds: {
      ResidualSeries series;
      series.n = rep.n_values;
      series.u = rep.u_values;
      TargetFunction g = builtin_function(rep.function);
      for (double u : series.u) {
        double worst = 0.0;
        for (double x : {0.5, 1.0, 2.0, 4.0}) {
          auto chk = global_lipschitz_bound_check(g, 1.0, x, u, 1.0, default_grid(), s.quad);
          worst = std::max(worst, chk.lhs / chk.rhs);
        }
        series.value.push_back(worst);
      }
      rep.residuals = std::move(series);
      rep.residual_label = "worst_bound_ratio";
      break;
    }
    default:
      break;
  }
}

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& s) {
  if (s == "figure1") return ExperimentKind::figure1;
  if (s == "figure2") return ExperimentKind::figure2;
  if (s == "korovkin") return ExperimentKind::korovkin;
  if (s == "voronovskaya") return ExperimentKind::voronovskaya;
  if (s == "gruss") return ExperimentKind::gruss;
  if (s == "quantitative") return ExperimentKind::quantitative;
  if (s == "bounds") return ExperimentKind::bounds;
  if (s == "custom") return ExperimentKind::custom;
  throw std::invalid_argument(
      "unknown experiment kind '" + s +
      "' (known: figure1, figure2, korovkin, voronovskaya, gruss, quantitative, bounds, custom)");
}

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::figure1: return "figure1";
    case ExperimentKind::figure2: return "figure2";
    case ExperimentKind::korovkin: return "korovkin";
    case ExperimentKind::voronovskaya: return "voronovskaya";
    case ExperimentKind::gruss: return "gruss";
    case ExperimentKind::quantitative: return "quantitative";
    case ExperimentKind::bounds: return "bounds";
    case ExperimentKind::custom: return "custom";
  }
  return "?";
}

ExperimentReport run(const ExperimentSpec& user_spec) {
  ExperimentSpec spec = user_spec;
  if (spec.function.empty()) spec.function = default_function(spec.kind);
  if (spec.n_values.empty()) spec.n_values = default_n(spec.kind);
  validate(spec);

  ExperimentReport rep;
  rep.spec = spec;
  rep.function = spec.function;
  rep.n_values = spec.n_values;
  for (int n : spec.n_values) rep.u_values.push_back(spec.sequence.value(n));
  rep.generated_at = utc_now();
  rep.colors = palette(spec.kind, spec.n_values.size());

  TargetFunction g = builtin_function(spec.function);
  rep.x = uniform_grid(spec.x_min, spec.x_max, spec.points);
  rep.target.reserve(rep.x.size());
  for (double x : rep.x) rep.target.push_back(g.f(x));

  for (double u : rep.u_values) {
    std::vector<double> col;
    col.reserve(rep.x.size());
    double sup = 0.0;
    long double mean = 0.0;
    for (size_t i = 0; i < rep.x.size(); ++i) {
      double v = apply(g, u, rep.x[i], spec.quad).value;
      col.push_back(v);
      double err = std::abs(v - rep.target[i]);
      sup = std::max(sup, err);
      mean += err;
    }
    rep.columns.push_back(std::move(col));
    rep.sup_error.push_back(sup);
    rep.mean_error.push_back(static_cast<double>(mean / rep.x.size()));
  }

  attach_residuals(rep);

  if (!spec.csv_path.empty()) emit_csv(rep, spec.csv_path);
  if (!spec.svg_path.empty()) emit_svg(rep, spec.svg_path);
  return rep;
}

}  // namespace smdlab
