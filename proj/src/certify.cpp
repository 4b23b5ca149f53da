#include "smdlab/certify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "smdlab/analysis.hpp"
#include "smdlab/evaluator.hpp"
#include "smdlab/functions.hpp"
#include "smdlab/moments.hpp"

namespace smdlab {

namespace {

/* ---- pinned tolerances ---- */
constexpr double kMomentOracleTol = 1e-9;
constexpr double kMomentSlopeTol = 0.05;
constexpr double kScaledMomentDevTol = 2e-4 + 1e-12;  // at u_n = 1e4 on [0, 4]
constexpr double kKorovkinTol = 1e-10;
constexpr double kPolyExactTol = 1e-10;
constexpr double kExpOracleRelTol = 1e-8;
constexpr double kT2ResidualTol = 1e-10;
constexpr double kSlopeLo = -1.2;
constexpr double kSlopeHi = -0.8;
constexpr double kGrussExactTol = 1e-8;
constexpr double kGrussSymmetryTol = 1e-10;
constexpr double kRatioSlopeMax = 0.1;
constexpr double kQuantZeroTol = 1e-9;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::vector<int> dyadic(int lo_exp, int hi_exp) {
  std::vector<int> n;
  for (int e = lo_exp; e <= hi_exp; ++e) n.push_back(1 << e);
  return n;
}

TargetFunction sin_plus_2() {
  return {[](double t) { return std::sin(t) + 2.0; },
          [](double t) { return std::cos(t); },
          [](double t) { return -std::sin(t); },
          Growth::bounded(), "sin+2"};
}

TargetFunction t_over_t_plus_1() {
  return {[](double t) { return t / (t + 1.0); },
          [](double t) { return 1.0 / ((t + 1.0) * (t + 1.0)); },
          [](double t) { return -2.0 / std::pow(t + 1.0, 3); },
          Growth::bounded(), "t/(t+1)"};
}

// S*(e^{a t}; x) = (u/(u-a)) exp(a u x / (u-a)), valid for a < u.
double exp_rate_closed_form(double a, double u, double x) {
  return u / (u - a) * std::exp(a * u * x / (u - a));
}

MomentPolynomial frozen_poly(MomentPolynomial::Kind kind, int order,
                             std::initializer_list<std::tuple<int, int, long long>> terms) {
  MomentPolynomial p = MomentPolynomial::zero(kind, order);
  for (const auto& [a, b, c] : terms) p.add_term(a, b, Rational(c));
  return p;
}

CheckResult check(const std::string& name, bool pass, const std::string& detail) {
  return {name, pass, detail};
}

}  // namespace

/* ---- moments ---- */

CheckList certify_moments() {
  CheckList out;
  using K = MomentPolynomial::Kind;

  {
    bool ok = raw_moment(0) == frozen_poly(K::raw, 0, {{0, 0, 1}}) &&
              raw_moment(1) == frozen_poly(K::raw, 1, {{1, 0, 1}, {0, 1, 1}}) &&
              raw_moment(2) == frozen_poly(K::raw, 2, {{2, 0, 1}, {1, 1, 4}, {0, 2, 2}}) &&
              raw_moment(3) ==
                  frozen_poly(K::raw, 3, {{3, 0, 1}, {2, 1, 9}, {1, 2, 18}, {0, 3, 6}});
    out.push_back(check("raw moments m=0..3 match frozen closed forms exactly", ok,
                        "m=3: " + raw_moment(3).str()));
  }
  {
    bool ok =
        central_moment(0) == frozen_poly(K::central, 0, {{0, 0, 1}}) &&
        central_moment(1) == frozen_poly(K::central, 1, {{0, 1, 1}}) &&
        central_moment(2) == frozen_poly(K::central, 2, {{1, 1, 2}, {0, 2, 2}}) &&
        central_moment(3) == frozen_poly(K::central, 3, {{1, 2, 12}, {0, 3, 6}}) &&
        central_moment(4) ==
            frozen_poly(K::central, 4, {{2, 2, 12}, {1, 3, 72}, {0, 4, 24}});
    out.push_back(check("central moments m=0..4 match frozen closed forms exactly", ok,
                        "Theta_2 = " + central_moment(2).str()));
  }
  {
    bool ok = true;
    std::string first_bad;
    for (int m = 0; m <= 7; ++m) {
      MomentPolynomial prev = m == 0 ? MomentPolynomial::zero(K::central, -1)
                                     : central_moment(m - 1);
      if (!(recurrence_step(central_moment(m), prev, m) == central_moment(m + 1))) {
        ok = false;
        first_bad = " first mismatch at m=" + std::to_string(m);
        break;
      }
    }
    out.push_back(check("recurrence closure: step(Theta_m) == Theta_{m+1} exactly, m=0..7",
                        ok, "exact rational comparison" + first_bad));
  }
  {
    MomentPolynomial variant =
        recurrence_step_x_distributed(central_moment(1), central_moment(0), 1);
    MomentPolynomial corrected = central_moment(2);
    bool ok = !(variant == corrected) &&
              variant == frozen_poly(K::central, 2, {{1, 1, 2}, {1, 2, 2}});
    out.push_back(check(
        "x-distributed recurrence variant disagrees with Theta_2 at m=1 and is rejected",
        ok,
        "u_n*Theta_2 from variant: " + variant.shifted(0, -1).str() +
            "; closed form requires: " + corrected.shifted(0, -1).str()));
  }
  {
    double worst = 0.0;
    for (int m = 0; m <= 6; ++m)
      for (double u : {1.0, 10.0, 100.0})
        for (double x : {0.0, 0.5, 1.0, 4.0})
          worst = std::max(worst, std::abs(raw_moment(m).evaluate(x, u) -
                                           moment_oracle(m, u, x, 1e-12)));
    out.push_back(check("series oracle matches raw-moment polynomials (m<=6)",
                        worst <= kMomentOracleTol,
                        "max |poly - oracle| = " + fmt("%.3g", worst) + ", tol " +
                            fmt("%.0e", kMomentOracleTol)));
  }
  {
    double worst = 0.0;
    for (int m : {2, 4, 6, 8})
      for (double u : {1.0, 10.0, 100.0, 1e4})
        for (double x : uniform_grid(0.0, 4.0, 81))
          worst = std::min(worst, central_moment(m).evaluate(x, u));
    out.push_back(check("even central moments nonnegative on [0,4]", worst >= -1e-15,
                        "min value = " + fmt("%.3g", worst)));
  }
  {
    bool ok = true;
    std::string detail;
    std::vector<double> u{1e2, 1e3, 1e4, 1e5};
    for (int m = 1; m <= 8; ++m) {
      std::vector<double> vals;
      for (double uu : u) vals.push_back(central_moment(m).evaluate(1.0, uu));
      double slope = fit_loglog(u, vals).slope;
      double expected = -std::floor((m + 1) / 2.0);
      if (!detail.empty()) detail += ", ";
      detail += "m=" + std::to_string(m) + ": " + fmt("%.3f", slope);
      if (std::abs(slope - expected) > kMomentSlopeTol) ok = false;
    }
    out.push_back(check("central moment decay exponents match floor((m+1)/2), m=1..8 at x=1",
                        ok, detail + "; tol " + fmt("%.2f", kMomentSlopeTol)));
  }
  {
    // u_n * Theta_2 - 2x == 2/u_n as an exact polynomial
    MomentPolynomial lhs = central_moment(2).shifted(0, -1);
    lhs.add_term(1, 0, Rational(-2));
    bool exact = lhs == frozen_poly(K::central, 2, {{0, 1, 2}});
    double worst = 0.0;
    for (double x : default_grid()) {
      double dev = scaled_second_moment({1e4}, x)[0] - 2.0 * x;
      worst = std::max(worst, std::abs(dev));
    }
    out.push_back(check("u_n Theta_2 -> 2x with deviation exactly 2/u_n",
                        exact && worst <= kScaledMomentDevTol,
                        "max |u Theta_2 - 2x| = " + fmt("%.6g", worst) + " at u_n=1e4, bound " +
                            fmt("%.6g", kScaledMomentDevTol)));
  }
  return out;
}

/* ---- korovkin ---- */

CheckList certify_korovkin() {
  CheckList out;
  auto grid = default_grid();
  std::array<double, 3> prev{0, 0, 0};
  bool decreasing = true;
  for (double u : {10.0, 100.0, 1000.0}) {
    auto e = korovkin_errors(u, grid);
    std::array<double, 3> expect{0.0, 1.0 / u, 16.0 / u + 2.0 / (u * u)};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(e[i] - expect[i]));
    out.push_back(check(
        "monomial sup errors at u_n=" + fmt("%g", u) + " equal (0, 1/u, 16/u + 2/u^2)",
        worst <= kKorovkinTol,
        "measured (" + fmt("%.6g", e[0]) + ", " + fmt("%.6g", e[1]) + ", " + fmt("%.6g", e[2]) +
            "), max dev " + fmt("%.3g", worst) + ", tol " + fmt("%.0e", kKorovkinTol)));
    if (u > 10.0 && !(e[1] < prev[1] && e[2] < prev[2])) decreasing = false;
    prev = e;
  }
  out.push_back(check("sup errors for t, t^2 strictly decrease along u_n = 10, 100, 1000",
                      decreasing, "uniform convergence trend"));
  {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      TargetFunction g = monomial_function(i);
      for (double x : {0.0, 1.0, 4.0})
        worst = std::max(worst, std::abs(apply(g, 100.0, x).value -
                                         raw_moment(i).evaluate(x, 100.0)));
    }
    out.push_back(check("quadrature evaluator reproduces the monomial moment polynomials",
                        worst <= kKorovkinTol,
                        "max dev " + fmt("%.3g", worst) + " at u_n=100"));
  }
  return out;
}

/* ---- voronovskaya ---- */

CheckList certify_voronovskaya() {
  CheckList out;
  QuadratureSpec fixed48{QuadratureSpec::Scheme::fixed, 48, 512, 1e-12};
  {
    // u_n multiplies the series-truncation bias, so the exactness check runs
    // with the tail tolerance pushed to the double-precision floor.
    QuadratureSpec tight{QuadratureSpec::Scheme::fixed, 48, 512, 1e-15};
    double worst = 0.0;
    for (int n : {16, 64, 256})
      for (double x : {0.5, 1.0, 2.0}) {
        auto series = voronovskaya_residual(monomial_function(2), x, {n},
                                            UnSequence::identity(), tight);
        worst = std::max(worst, std::abs(series.value[0] - 2.0 / n));
      }
    out.push_back(check("t^2 residual equals 2/u_n exactly", worst <= kT2ResidualTol,
                        "max |residual - 2/u_n| = " + fmt("%.3g", worst) + ", tol " +
                            fmt("%.0e", kT2ResidualTol)));
  }
  auto slope_check = [&](const TargetFunction& g, double x, int hi_exp, double lo, double hi,
                         const std::string& label) {
    auto series =
        voronovskaya_residual(g, x, dyadic(4, hi_exp), UnSequence::identity(), fixed48);
    std::vector<double> mags;
    for (double v : series.value) mags.push_back(std::abs(v));
    double slope = fit_loglog(series.u, mags).slope;
    out.push_back(check(label, slope >= lo && slope <= hi,
                        "fitted slope " + fmt("%.4f", slope) + ", window [" + fmt("%.1f", lo) +
                            ", " + fmt("%.1f", hi) + "]"));
  };
  slope_check(builtin_function("exp"), 1.0, 12, kSlopeLo, kSlopeHi,
              "exp residual at x=1 decays at first order in 1/u_n");
  slope_check(builtin_function("exp_neg"), 0.5, 12, kSlopeLo, kSlopeHi,
              "exp_neg residual at x=0.5 decays at first order in 1/u_n");
  slope_check(builtin_function("exp_neg"), 2.0, 12, kSlopeLo, kSlopeHi,
              "exp_neg residual at x=2 decays at first order in 1/u_n");
  slope_check(monomial_function(3), 1.0, 12, kSlopeLo, kSlopeHi,
              "t^3 residual at x=1 decays at first order in 1/u_n");
  slope_check(sin_plus_2(), 1.0, 12, kSlopeLo, kSlopeHi,
              "sin(t)+2 residual at x=1 decays at first order in 1/u_n");
  {
    // spot limit value: residual -> g' + x g'' means u(S-g) at u=4096 is close
    double u = 4096.0;
    TargetFunction g = builtin_function("exp");
    double s_val = apply(g, u, 1.0, fixed48).value;
    double closed = exp_rate_closed_form(1.0, u, 1.0);
    out.push_back(check("exp: S at u_n=4096, x=1 matches the geometric closed form",
                        std::abs(s_val - closed) <= 1e-10 * closed,
                        "measured " + fmt("%.12f", s_val) + ", closed form " +
                            fmt("%.12f", closed)));
    double measured = u * (s_val - std::exp(1.0));
    double limit = 2.0 * std::exp(1.0);
    out.push_back(check("exp: u_n(S-g) at x=1 is within 1% of the limit 2e at u_n=4096",
                        std::abs(measured - limit) <= 0.01 * limit,
                        "measured " + fmt("%.6f", measured) + ", limit " + fmt("%.6f", limit)));
  }
  return out;
}

/* ---- gruss ---- */

CheckList certify_gruss() {
  CheckList out;
  QuadratureSpec fixed48{QuadratureSpec::Scheme::fixed, 48, 512, 1e-12};
  // the gap scales the truncation bias by u_n; exact checks need a tiny tail
  QuadratureSpec tight{QuadratureSpec::Scheme::fixed, 48, 512, 1e-15};
  TargetFunction t1 = monomial_function(1), t2 = monomial_function(2);
  {
    double worst = 0.0;
    for (double u : {10.0, 100.0, 1000.0})
      for (double x : {0.5, 1.0, 2.0, 4.0})
        worst = std::max(worst,
                         std::abs(gruss_gap(t1, t1, x, u, tight) - (2.0 * x + 1.0 / u)));
    out.push_back(check("gap(t, t) equals 2x + 1/u_n", worst <= kGrussExactTol,
                        "max dev " + fmt("%.3g", worst) + ", tol " + fmt("%.0e", kGrussExactTol)));
  }
  {
    double worst = 0.0;
    for (double u : {10.0, 100.0, 1000.0})
      for (double x : {0.5, 1.0, 2.0, 4.0})
        worst = std::max(
            worst, std::abs(gruss_gap(t1, t2, x, u, tight) -
                            (4.0 * x * x + 12.0 * x / u + 4.0 / (u * u))));
    out.push_back(check("gap(t, t^2) equals 4x^2 + 12x/u_n + 4/u_n^2", worst <= kGrussExactTol,
                        "max dev " + fmt("%.3g", worst) + ", tol " + fmt("%.0e", kGrussExactTol)));
  }
  {
    TargetFunction f = builtin_function("exp_neg"), g = sin_plus_2();
    double d = std::abs(gruss_gap(f, g, 1.0, 64.0, fixed48) -
                        gruss_gap(g, f, 1.0, 64.0, fixed48));
    out.push_back(check("gap is symmetric in its arguments", d <= kGrussSymmetryTol,
                        "|gap(f,g) - gap(g,f)| = " + fmt("%.3g", d)));
  }
  {
    TargetFunction f = builtin_function("exp_neg"), g = sin_plus_2();
    auto series = gruss_deviation(f, g, 1.0, dyadic(4, 10), UnSequence::identity(), fixed48);
    double slope = series.slope().slope;
    out.push_back(check("gap(exp_neg, sin+2) converges to 2x f'g' at first order",
                        slope >= kSlopeLo && slope <= kSlopeHi,
                        "fitted slope " + fmt("%.4f", slope) + ", window [" +
                            fmt("%.1f", kSlopeLo) + ", " + fmt("%.1f", kSlopeHi) + "]"));
  }
  return out;
}

/* ---- quantitative ---- */

CheckList certify_quantitative() {
  CheckList out;
  QuadratureSpec fixed48{QuadratureSpec::Scheme::fixed, 48, 512, 1e-12};
  // exactness checks multiply the truncation bias by u_n; keep the tail tiny
  QuadratureSpec tight{QuadratureSpec::Scheme::fixed, 48, 512, 1e-15};
  auto ns = dyadic(4, 10);
  {
    auto q = quantitative_voronovskaya_check(monomial_function(2), 1.0, ns,
                                             UnSequence::identity(), default_grid(), tight);
    double worst = 0.0;
    for (double v : q.lhs.value) worst = std::max(worst, v);
    out.push_back(check("t^2: quantitative lhs L_n vanishes identically",
                        worst <= kQuantZeroTol && !q.degenerate_violation,
                        "max L_n = " + fmt("%.3g", worst) + ", tol " +
                            fmt("%.0e", kQuantZeroTol)));
  }
  {
    double worst = 0.0;
    for (double u : {16.0, 256.0}) {
      auto q = quantitative_voronovskaya_check(monomial_function(3), 1.0,
                                               {static_cast<int>(u)}, UnSequence::identity(),
                                               default_grid(), tight);
      worst = std::max(worst, std::abs(q.lhs.value[0] - (12.0 / u + 6.0 / (u * u))));
    }
    out.push_back(check("t^3: L_n equals 12x/u_n + 6/u_n^2 at x=1", worst <= kQuantZeroTol,
                        "max dev " + fmt("%.3g", worst)));
  }
  for (const TargetFunction& g : {builtin_function("exp"), monomial_function(3)}) {
    auto q = quantitative_voronovskaya_check(g, 1.0, ns, UnSequence::identity(),
                                             default_grid(), fixed48);
    double slope = q.ratio.slope().slope;
    out.push_back(check(g.name + ": L_n / Delta(g'', sqrt(1/u_n)) stays bounded",
                        slope <= kRatioSlopeMax && !q.degenerate_violation,
                        "ratio slope " + fmt("%.4f", slope) + ", max allowed " +
                            fmt("%.2f", kRatioSlopeMax)));
  }
  return out;
}

/* ---- bounds ---- */

CheckList certify_bounds() {
  CheckList out;
  const std::vector<double> xs{0.25, 0.5, 1.0, 2.0, 3.0, 4.0};
  const std::vector<double> us{10.0, 50.0, 100.0, 1000.0};
  QuadratureSpec fixed48{QuadratureSpec::Scheme::fixed, 48, 512, 1e-12};
  {
    int violations = 0;
    double worst_dev = 0.0;
    for (double u : us)
      for (double x : xs) {
        auto chk = global_lipschitz_bound_check(monomial_function(1), 1.0, x, u, 1.0,
                                                default_grid(), fixed48);
        if (!chk.holds) ++violations;
        worst_dev = std::max(worst_dev, std::abs(chk.lhs - 1.0 / u));
      }
    out.push_back(check("t with kappa=1, r=1: bound holds and lhs equals 1/u_n",
                        violations == 0 && worst_dev <= kPolyExactTol,
                        "violations " + std::to_string(violations) + ", max |lhs - 1/u| = " +
                            fmt("%.3g", worst_dev)));
  }
  {
    int violations = 0;
    double min_slack = 1e300;
    for (double u : us)
      for (double x : xs) {
        auto chk = global_lipschitz_bound_check(builtin_function("exp_neg"), 1.0, x, u, 1.0,
                                                default_grid(), fixed48);
        if (!chk.holds) ++violations;
        min_slack = std::min(min_slack, chk.rhs - chk.lhs);
      }
    out.push_back(check("exp_neg with kappa=1, r=1: zero violations on the (x, u_n) grid",
                        violations == 0,
                        "violations " + std::to_string(violations) + ", min slack " +
                            fmt("%.3g", min_slack)));
  }
  {
    double rhs = global_lipschitz_bound_check(monomial_function(1), 1.0, 1.0, 100.0, 1.0,
                                              default_grid(), fixed48)
                     .rhs;
    double expect = std::sqrt(0.0202);
    out.push_back(check("kappa bound rhs at (x=1, u_n=100) equals sqrt(0.0202)",
                        std::abs(rhs - expect) <= 1e-12,
                        "rhs " + fmt("%.12f", rhs) + ", expected " + fmt("%.12f", expect)));
  }
  {
    LipschitzSpaceParams p;  // a1 = a2 = s = M = 1
    bool member = true;
    int violations = 0;
    for (double u : {10.0, 100.0})
      for (double x : {0.5, 1.0, 2.0}) {
        auto chk = weighted_lipschitz_bound_check(t_over_t_plus_1(), p, x, u,
                                                  default_grid(), fixed48);
        member = member && chk.member;
        if (!chk.bound.holds) ++violations;
      }
    auto spot = weighted_lipschitz_bound_check(t_over_t_plus_1(), p, 2.0, 10.0,
                                               default_grid(), fixed48);
    double expect = std::sqrt(0.42 / 6.0);
    bool spot_ok = std::abs(spot.bound.rhs - expect) <= 1e-12;
    out.push_back(check("t/(t+1) lies in the weighted class and its bound holds",
                        member && violations == 0 && spot_ok,
                        "member=" + std::string(member ? "yes" : "no") + ", violations " +
                            std::to_string(violations) + ", rhs(x=2,u=10) " +
                            fmt("%.12f", spot.bound.rhs) + " vs " + fmt("%.12f", expect)));
  }
  {
    bool threw = false;
    try {
      weighted_lipschitz_bound_check(t_over_t_plus_1(), LipschitzSpaceParams{}, 0.0, 10.0);
    } catch (const std::domain_error&) {
      threw = true;
    }
    out.push_back(check("weighted bound rejects x=0 (bound degenerates)", threw,
                        "std::domain_error expected and raised"));
  }
  return out;
}

CertifyKind parse_certify_kind(const std::string& s) {
  if (s == "moments") return CertifyKind::moments;
  if (s == "korovkin") return CertifyKind::korovkin;
  if (s == "voronovskaya") return CertifyKind::voronovskaya;
  if (s == "gruss") return CertifyKind::gruss;
  if (s == "quantitative") return CertifyKind::quantitative;
  if (s == "bounds") return CertifyKind::bounds;
  throw std::invalid_argument(
      "unknown certify kind '" + s +
      "' (known: moments, korovkin, voronovskaya, gruss, quantitative, bounds)");
}

std::string to_string(CertifyKind k) {
  switch (k) {
    case CertifyKind::moments: return "moments";
    case CertifyKind::korovkin: return "korovkin";
    case CertifyKind::voronovskaya: return "voronovskaya";
    case CertifyKind::gruss: return "gruss";
    case CertifyKind::quantitative: return "quantitative";
    case CertifyKind::bounds: return "bounds";
  }
  return "?";
}

CheckList certify_checks(CertifyKind k) {
  switch (k) {
    case CertifyKind::moments: return certify_moments();
    case CertifyKind::korovkin: return certify_korovkin();
    case CertifyKind::voronovskaya: return certify_voronovskaya();
    case CertifyKind::gruss: return certify_gruss();
    case CertifyKind::quantitative: return certify_quantitative();
    case CertifyKind::bounds: return certify_bounds();
  }
  return {};
}

bool print_certify(CertifyKind k, bool verbose, std::ostream& os) {
  CheckList checks = certify_checks(k);
  int passed = 0;
  for (const auto& c : checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.pass || verbose) os << "\n       " << c.detail;
    os << "\n";
    if (c.pass) ++passed;
  }
  os << "certify " << to_string(k) << ": " << passed << "/" << checks.size()
     << " checks passed\n";
  return passed == static_cast<int>(checks.size());
}

}  // namespace smdlab
