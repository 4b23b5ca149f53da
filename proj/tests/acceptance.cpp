// Acceptance gate: one criterion per block, each printing a single
// [PASS]/[FAIL] line with its runtime. Tolerances are pinned; a failure
// lists the offending measurements. Exit status is nonzero when any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "smdlab/analysis.hpp"
#include "smdlab/certify.hpp"
#include "smdlab/evaluator.hpp"
#include "smdlab/experiment.hpp"
#include "smdlab/functions.hpp"
#include "smdlab/moments.hpp"
#include "smdlab/rational.hpp"
#include "smdlab/report_io.hpp"

using namespace smdlab;

namespace {

using Fails = std::vector<std::string>;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

void expect(Fails& fails, bool ok, const std::string& what) {
  if (!ok) fails.push_back(what);
}

MomentPolynomial frozen(MomentPolynomial::Kind kind, int order,
                        std::initializer_list<std::tuple<int, int, long long>> terms) {
  MomentPolynomial p = MomentPolynomial::zero(kind, order);
  for (const auto& [a, b, c] : terms) p.add_term(a, b, Rational(c));
  return p;
}

QuadratureSpec fixed_spec(int order, double series_tol) {
  QuadratureSpec q;
  q.scheme = QuadratureSpec::Scheme::fixed;
  q.order = order;
  q.series_tol = series_tol;
  return q;
}

TargetFunction sin_plus_2() {
  TargetFunction g;
  g.f = [](double t) { return std::sin(t) + 2.0; };
  g.df = [](double t) { return std::cos(t); };
  g.d2f = [](double t) { return -std::sin(t); };
  g.growth = Growth::bounded();
  g.name = "sin+2";
  return g;
}

TargetFunction rational_decay() {
  TargetFunction g;
  g.f = [](double t) { return t / (t + 1.0); };
  g.df = [](double t) { return 1.0 / ((t + 1.0) * (t + 1.0)); };
  g.d2f = [](double t) { return -2.0 / ((t + 1.0) * (t + 1.0) * (t + 1.0)); };
  g.growth = Growth::bounded();
  g.name = "t/(t+1)";
  return g;
}

std::vector<int> dyadic(int lo_exp, int hi_exp) {
  std::vector<int> out;
  for (int e = lo_exp; e <= hi_exp; ++e) out.push_back(1 << e);
  return out;
}

/* ---- criterion 1: closed-form moments and the series oracle ---- */

void criterion_moments(Fails& fails) {
  using K = MomentPolynomial::Kind;
  expect(fails, central_moment(0) == frozen(K::central, 0, {{0, 0, 1}}),
         "central moment 0 is not the constant 1");
  expect(fails, central_moment(1) == frozen(K::central, 1, {{0, 1, 1}}),
         "central moment 1 is not 1/u");
  expect(fails, central_moment(2) == frozen(K::central, 2, {{1, 1, 2}, {0, 2, 2}}),
         "central moment 2 is not 2x/u + 2/u^2");
  expect(fails, central_moment(2).str() == "2 x u^-1 + 2 u^-2",
         "central moment 2 prints as '" + central_moment(2).str() + "'");
  expect(fails, raw_moment(0) == frozen(K::raw, 0, {{0, 0, 1}}),
         "raw moment 0 is not 1");
  expect(fails, raw_moment(1) == frozen(K::raw, 1, {{1, 0, 1}, {0, 1, 1}}),
         "raw moment 1 is not x + 1/u");
  expect(fails, raw_moment(2) == frozen(K::raw, 2, {{2, 0, 1}, {1, 1, 4}, {0, 2, 2}}),
         "raw moment 2 is not x^2 + 4x/u + 2/u^2");

  for (int m = 0; m <= 6; ++m) {
    MomentPolynomial closed = raw_moment(m);
    for (double u : {1.0, 10.0, 100.0}) {
      for (double x : {0.0, 0.5, 1.0, 4.0}) {
        double want = closed.evaluate(x, u);
        double got = moment_oracle(m, u, x, 1e-12);
        expect(fails, std::fabs(got - want) <= 1e-9,
               "oracle m=" + std::to_string(m) + " u=" + fmt("%g", u) + " x=" +
                   fmt("%g", x) + " off by " + fmt("%.3g", std::fabs(got - want)));
      }
    }
  }
}

/* ---- criterion 2: recurrence closure and the printed-variant mismatch ---- */

void criterion_recurrence(Fails& fails) {
  for (int m = 1; m <= 7; ++m) {
    MomentPolynomial stepped = recurrence_step(central_moment(m), central_moment(m - 1), m);
    expect(fails, stepped == central_moment(m + 1),
           "recurrence step at m=" + std::to_string(m) + " misses the closed form");
  }

  MomentPolynomial variant =
      recurrence_step_x_distributed(central_moment(1), central_moment(0), 1);
  expect(fails, !(variant == central_moment(2)),
         "x-distributed variant unexpectedly agrees at m=1");
  expect(fails,
         variant == frozen(MomentPolynomial::Kind::central, 2, {{1, 1, 2}, {1, 2, 2}}),
         "x-distributed variant is not 2x/u + 2x/u^2");

  bool witnessed = false;
  for (const CheckResult& c : certify_moments()) {
    if (c.pass && c.detail.find("2 x + 2 x u^-1") != std::string::npos &&
        c.detail.find("2 x + 2 u^-1") != std::string::npos)
      witnessed = true;
  }
  expect(fails, witnessed,
         "certify moments report does not exhibit the variant disagreement");
}

/* ---- criterion 3: scaled second moment limit ---- */

void criterion_scaled_limit(Fails& fails) {
  using K = MomentPolynomial::Kind;
  MomentPolynomial scaled = central_moment(2).shifted(0, -1);  // u * Theta_2
  MomentPolynomial x_part = frozen(K::central, 2, {{1, 0, 2}});
  expect(fails, scaled - x_part == frozen(K::central, 2, {{0, 1, 2}}),
         "u Theta_2 - 2x is not exactly 2/u");

  double u = 1e4;
  double worst = 0.0;
  for (double x : default_grid()) {
    double dev = std::fabs(scaled_second_moment({u}, x)[0] - 2.0 * x);
    worst = std::max(worst, dev);
  }
  expect(fails, worst <= 2e-4 + 1e-12,
         "largest deviation " + fmt("%.6g", worst) + " exceeds 2e-4 + 1e-12 at u=1e4");
}

/* ---- criterion 4: quadrature matches monomial and exponential forms ---- */

void criterion_quadrature(Fails& fails) {
  QuadratureSpec low = fixed_spec(4, 1e-15);  // order >= 4: exact through degree 7
  QuadratureSpec adaptive;
  adaptive.series_tol = 1e-15;
  for (int m = 0; m <= 6; ++m) {
    MomentPolynomial closed = raw_moment(m);
    for (double u : {10.0, 100.0, 1000.0}) {
      for (double x : {0.0, 0.5, 1.0, 4.0}) {
        double want = closed.evaluate(x, u);
        for (const QuadratureSpec& q : {low, adaptive}) {
          double got = apply(monomial_function(m), u, x, q).value;
          expect(fails, std::fabs(got - want) <= 1e-10,
                 "t^" + std::to_string(m) + " u=" + fmt("%g", u) + " x=" + fmt("%g", x) +
                     " off by " + fmt("%.3g", std::fabs(got - want)));
        }
      }
    }
  }

  TargetFunction e = builtin_function("exp");
  for (double u : {2.0, 25.0, 100.0}) {
    for (double x : {0.0, 1.0, 4.0}) {
      double want = (u / (u - 1.0)) * std::exp(u * x / (u - 1.0));
      double got = apply(e, u, x).value;
      double rel = std::fabs(got - want) / std::fabs(want);
      expect(fails, rel <= 1e-8,
             "exp u=" + fmt("%g", u) + " x=" + fmt("%g", x) + " relative error " +
                 fmt("%.3g", rel));
    }
  }
}

/* ---- criterion 5: sup errors of the monomial triple ---- */

void criterion_korovkin(Fails& fails) {
  std::vector<double> grid = default_grid();
  double prev1 = 1e300, prev2 = 1e300;
  for (double u : {10.0, 100.0, 1000.0}) {
    std::array<double, 3> e = korovkin_errors(u, grid);
    expect(fails, e[0] <= 1e-15, "constant error " + fmt("%.3g", e[0]) + " at u=" + fmt("%g", u));
    expect(fails, std::fabs(e[1] - 1.0 / u) <= 1e-10,
           "t error " + fmt("%.12g", e[1]) + " != 1/u at u=" + fmt("%g", u));
    expect(fails, std::fabs(e[2] - (16.0 / u + 2.0 / (u * u))) <= 1e-10,
           "t^2 error " + fmt("%.12g", e[2]) + " != 16/u + 2/u^2 at u=" + fmt("%g", u));
    expect(fails, e[1] < prev1 && e[2] < prev2,
           "sup errors fail to decrease at u=" + fmt("%g", u));
    prev1 = e[1];
    prev2 = e[2];
  }
}

/* ---- criterion 6: voronovskaya residual ---- */

void criterion_voronovskaya(Fails& fails) {
  UnSequence seq = UnSequence::identity();
  QuadratureSpec tight = fixed_spec(48, 1e-15);
  for (int n : {16, 64, 256}) {
    for (double x : {0.5, 1.0, 2.0}) {
      double got = voronovskaya_residual(builtin_function("t^2"), x, {n}, seq, tight)
                       .value[0];
      expect(fails, std::fabs(got - 2.0 / n) <= 1e-10,
             "t^2 residual n=" + std::to_string(n) + " x=" + fmt("%g", x) + " off by " +
                 fmt("%.3g", std::fabs(got - 2.0 / n)));
    }
  }

  QuadratureSpec q48 = fixed_spec(48, 1e-12);
  std::vector<int> ns = dyadic(4, 12);
  struct Case {
    const char* id;
    double x;
  } cases[] = {{"exp", 1.0}, {"exp_neg", 0.5}, {"exp_neg", 2.0}};
  for (const Case& c : cases) {
    ResidualSeries series =
        voronovskaya_residual(builtin_function(c.id), c.x, ns, seq, q48);
    double slope = series.slope().slope;
    expect(fails, slope >= -1.2 && slope <= -0.8,
           std::string(c.id) + " x=" + fmt("%g", c.x) + " residual slope " +
               fmt("%.4f", slope) + " outside [-1.2, -0.8]");
  }
}

/* ---- criterion 7: gruss gap forms and decay ---- */

void criterion_gruss(Fails& fails) {
  QuadratureSpec tight = fixed_spec(48, 1e-15);
  TargetFunction t1 = monomial_function(1);
  TargetFunction t2 = monomial_function(2);
  for (double u : {10.0, 100.0, 1000.0}) {
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
      double g11 = gruss_gap(t1, t1, x, u, tight);
      double want11 = 2.0 * x + 1.0 / u;
      expect(fails, std::fabs(g11 - want11) <= 1e-8,
             "gap(t,t) u=" + fmt("%g", u) + " x=" + fmt("%g", x) + " off by " +
                 fmt("%.3g", std::fabs(g11 - want11)));
      double g12 = gruss_gap(t1, t2, x, u, tight);
      double want12 = 4.0 * x * x + 12.0 * x / u + 4.0 / (u * u);
      expect(fails, std::fabs(g12 - want12) <= 1e-8,
             "gap(t,t^2) u=" + fmt("%g", u) + " x=" + fmt("%g", x) + " off by " +
                 fmt("%.3g", std::fabs(g12 - want12)));
    }
  }

  ResidualSeries dev = gruss_deviation(builtin_function("exp_neg"), sin_plus_2(), 1.0,
                                       dyadic(4, 10), UnSequence::identity(),
                                       fixed_spec(48, 1e-12));
  double slope = dev.slope().slope;
  expect(fails, slope >= -1.2 && slope <= -0.8,
         "gap deviation slope " + fmt("%.4f", slope) + " outside [-1.2, -0.8]");
}

/* ---- criterion 8: lipschitz bound theorems ---- */

void criterion_bounds(Fails& fails) {
  const std::vector<double> xs = {0.25, 0.5, 1.0, 2.0, 3.0, 4.0};
  const std::vector<double> us = {10.0, 50.0, 100.0, 1000.0};
  int violations = 0;
  for (double u : us) {
    for (double x : xs) {
      BoundCheck lin = global_lipschitz_bound_check(monomial_function(1), 1.0, x, u, 1.0);
      if (!lin.holds) {
        ++violations;
        fails.push_back("t bound fails at x=" + fmt("%g", x) + " u=" + fmt("%g", u) +
                        ": lhs=" + fmt("%.6g", lin.lhs) + " rhs=" + fmt("%.6g", lin.rhs));
      }
      BoundCheck e = global_lipschitz_bound_check(builtin_function("exp_neg"), 1.0, x, u, 1.0);
      if (!e.holds) {
        ++violations;
        fails.push_back("exp_neg bound fails at x=" + fmt("%g", x) + " u=" + fmt("%g", u));
      }
      SpaceBoundCheck w = weighted_lipschitz_bound_check(rational_decay(), {}, x, u);
      if (!w.member || !w.bound.holds) {
        ++violations;
        fails.push_back("weighted bound fails at x=" + fmt("%g", x) + " u=" + fmt("%g", u) +
                        (w.member ? "" : " (membership)"));
      }
    }
  }
  expect(fails, violations == 0, std::to_string(violations) + " bound violations");
}

/* ---- criterion 9: quantitative voronovskaya ratio ---- */

void criterion_quantitative(Fails& fails) {
  UnSequence seq = UnSequence::identity();
  std::vector<int> ns = dyadic(4, 10);
  QuadratureSpec q48 = fixed_spec(48, 1e-12);
  for (const TargetFunction& g : {builtin_function("exp"), monomial_function(3)}) {
    QuantVoronovskaya q =
        quantitative_voronovskaya_check(g, 1.0, ns, seq, default_grid(), q48);
    expect(fails, !q.degenerate_violation, g.name + ": degenerate modulus with live lhs");
    double slope = q.ratio.slope().slope;
    expect(fails, slope <= 0.1,
           g.name + " ratio slope " + fmt("%.4f", slope) + " exceeds 0.1");
  }

  QuadratureSpec tight = fixed_spec(48, 1e-15);
  QuantVoronovskaya q2 = quantitative_voronovskaya_check(builtin_function("t^2"), 1.0, ns,
                                                         seq, default_grid(), tight);
  for (size_t i = 0; i < q2.lhs.value.size(); ++i)
    expect(fails, std::fabs(q2.lhs.value[i]) <= 1e-9,
           "t^2 lhs " + fmt("%.3g", q2.lhs.value[i]) + " at n=" +
               std::to_string(q2.lhs.n[i]) + " is not identically zero");
}

/* ---- criterion 10: figure reproduction and report formats ---- */

int count_occurrences(const std::string& text, const std::string& needle) {
  int count = 0;
  for (size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

std::string slurp(const std::string& path, Fails& fails) {
  std::ifstream in(path);
  if (!in) {
    fails.push_back("cannot reopen " + path);
    return "";
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void validate_figure(const ExperimentReport& rep, const std::string& csv_path,
                     const std::string& svg_path, Fails& fails) {
  std::string kind = to_string(rep.spec.kind);
  for (size_t k = 1; k < rep.sup_error.size(); ++k)
    expect(fails, rep.sup_error[k] < rep.sup_error[k - 1],
           kind + " sup error not strictly decreasing at n=" +
               std::to_string(rep.n_values[k]) + " (" + fmt("%.6g", rep.sup_error[k - 1]) +
               " -> " + fmt("%.6g", rep.sup_error[k]) + ")");

  std::string csv = slurp(csv_path, fails);
  if (!csv.empty()) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::string header = "x,g";
    for (int n : rep.n_values) header += ",S_" + std::to_string(n);
    expect(fails, line == header, kind + " csv header is '" + line + "'");
    int rows = 0;
    std::vector<double> first_cells, last_cells;
    while (std::getline(in, line) && !line.empty() && line[0] != '#') {
      ++rows;
      std::istringstream cells(line);
      std::string cell;
      std::vector<double> parsed;
      while (std::getline(cells, cell, ',')) parsed.push_back(std::stod(cell));
      expect(fails, parsed.size() == 2 + rep.n_values.size(),
             kind + " csv row with " + std::to_string(parsed.size()) + " cells");
      if (rows == 1) first_cells = parsed;
      last_cells = parsed;
    }
    expect(fails, rows == rep.spec.points,
           kind + " csv has " + std::to_string(rows) + " data rows, expected " +
               std::to_string(rep.spec.points));
    if (!first_cells.empty() && !last_cells.empty()) {
      expect(fails, std::fabs(first_cells[0] - rep.spec.x_min) <= 1e-9 &&
                        std::fabs(last_cells[0] - rep.spec.x_max) <= 1e-9,
             kind + " csv x column does not span the grid");
    }
    expect(fails, csv.find("# experiment kind=" + kind) != std::string::npos,
           kind + " csv lacks the experiment summary line");
    for (size_t k = 0; k < rep.n_values.size(); ++k) {
      std::string marker = "# column S_" + std::to_string(rep.n_values[k]);
      size_t pos = csv.find(marker);
      expect(fails, pos != std::string::npos, kind + " csv lacks '" + marker + "'");
      if (pos != std::string::npos) {
        double u = 0, sup = 0, mean = 0;
        std::string scan = "# column S_" + std::to_string(rep.n_values[k]) +
                           " u_n=%lf sup_error=%lf mean_error=%lf";
        expect(fails,
               std::sscanf(csv.c_str() + pos, scan.c_str(), &u, &sup, &mean) == 3 &&
                   std::fabs(sup - rep.sup_error[k]) <=
                       1e-9 * std::max(1.0, rep.sup_error[k]),
               kind + " csv sup_error does not round-trip for " + marker);
      }
    }
  }

  std::string svg = slurp(svg_path, fails);
  if (!svg.empty()) {
    int want = static_cast<int>(rep.n_values.size()) + 1;
    expect(fails, count_occurrences(svg, "<polyline") == want,
           kind + " svg does not contain " + std::to_string(want) + " polylines");
    size_t first = svg.find("<polyline");
    expect(fails,
           first != std::string::npos &&
               svg.find("stroke=\"blue\"", first) < svg.find("<polyline", first + 1),
           kind + " svg target curve is not the blue first polyline");
    for (int n : rep.n_values)
      expect(fails, svg.find(">n=" + std::to_string(n) + "</text>") != std::string::npos,
             kind + " svg legend lacks n=" + std::to_string(n));
    expect(fails, svg.size() >= 7 && svg.rfind("</svg>\n") == svg.size() - 7,
           kind + " svg does not end with the closing tag");
  }

  std::ostringstream once, twice;
  emit_csv(rep, once);
  emit_csv(rep, twice);
  expect(fails, once.str() == twice.str(), kind + " csv emission is not deterministic");
  std::ostringstream sonce, stwice;
  emit_svg(rep, sonce);
  emit_svg(rep, stwice);
  expect(fails, sonce.str() == stwice.str(), kind + " svg emission is not deterministic");
}

void criterion_figures(Fails& fails) {
  ExperimentSpec f1;
  f1.kind = ExperimentKind::figure1;
  f1.csv_path = "acceptance_figure1.csv";
  f1.svg_path = "acceptance_figure1.svg";
  ExperimentReport r1 = run(f1);
  expect(fails, r1.n_values == std::vector<int>({25, 50, 100}),
         "figure1 default n values are wrong");
  expect(fails, r1.function == "exp", "figure1 default target is " + r1.function);
  validate_figure(r1, f1.csv_path, f1.svg_path, fails);

  ExperimentSpec f2;
  f2.kind = ExperimentKind::figure2;
  f2.csv_path = "acceptance_figure2.csv";
  f2.svg_path = "acceptance_figure2.svg";
  ExperimentReport r2 = run(f2);
  expect(fails, r2.n_values == std::vector<int>({50, 100, 150, 200, 300}),
         "figure2 default n values are wrong");
  expect(fails, r2.function == "x2sin2pix", "figure2 default target is " + r2.function);
  validate_figure(r2, f2.csv_path, f2.svg_path, fails);
}

struct Criterion {
  int id;
  const char* label;
  double budget_seconds;  // 0: no stated budget
  std::function<void(Fails&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "closed-form moments and series oracle", 5.0, criterion_moments},
      {2, "central moment recurrence resolution", 1.0, criterion_recurrence},
      {3, "scaled second moment limit", 0.0, criterion_scaled_limit},
      {4, "quadrature fidelity on monomials and exp", 30.0, criterion_quadrature},
      {5, "korovkin sup error decay", 0.0, criterion_korovkin},
      {6, "voronovskaya residual and rates", 60.0, criterion_voronovskaya},
      {7, "gruss gap closed forms and decay", 0.0, criterion_gruss},
      {8, "lipschitz bound theorems", 0.0, criterion_bounds},
      {9, "quantitative voronovskaya ratio", 0.0, criterion_quantitative},
      {10, "figure reproduction and report formats", 120.0, criterion_figures},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Fails fails;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(fails);
    } catch (const std::exception& e) {
      fails.push_back(std::string("exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && elapsed > c.budget_seconds)
      fails.push_back("runtime " + fmt("%.1f", elapsed) + "s exceeded the " +
                      fmt("%.0f", c.budget_seconds) + "s budget");
    bool pass = fails.empty();
    failed += pass ? 0 : 1;
    std::printf("[%s] criterion %d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", c.id, c.label,
                elapsed);
    size_t shown = 0;
    for (const std::string& f : fails) {
      if (++shown > 8) {
        std::printf("         ... and %zu more\n", fails.size() - 8);
        break;
      }
      std::printf("         %s\n", f.c_str());
    }
  }
  std::printf("acceptance: %d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
