#include "smdlab/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "smdlab/moments.hpp"

namespace smdlab {

namespace {

double theta2(double u_n, double x) {
  static const MomentPolynomial poly = central_moment(2);
  return poly.evaluate(x, u_n);
}

void require_derivatives(const TargetFunction& g, int order) {
  if (!g.f) throw std::invalid_argument("target function is empty");
  if (order >= 1 && !g.df)
    throw std::invalid_argument("check requires g' on the target function");
  if (order >= 2 && !g.d2f)
    throw std::invalid_argument("check requires g'' on the target function");
}

std::vector<double> sequence_values(const UnSequence& seq, const std::vector<int>& n_values) {
  std::vector<double> u;
  u.reserve(n_values.size());
  for (int n : n_values) u.push_back(seq.value(n));
  return u;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  if (!(hi > lo)) throw std::invalid_argument("uniform_grid: hi must exceed lo");
  std::vector<double> g(points);
  double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) g[i] = lo + step * i;
  g.back() = hi;
  return g;
}

std::vector<double> default_grid() { return uniform_grid(0.0, 4.0, 401); }

SlopeFit fit_loglog(const std::vector<double>& u, const std::vector<double>& y) {
  if (u.size() != y.size()) throw std::invalid_argument("fit_loglog: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0) || !(y[i] > 0) || !std::isfinite(u[i]) || !std::isfinite(y[i])) continue;
    double lx = std::log(u[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  SlopeFit fit;
  fit.points_used = n;
  if (n < 2) return fit;
  double det = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

SlopeFit ResidualSeries::slope() const {
  std::vector<double> mags;
  mags.reserve(value.size());
  for (double v : value) mags.push_back(std::abs(v));
  return fit_loglog(u, mags);
}

std::array<double, 3> korovkin_errors(double u_n, const std::vector<double>& x_grid) {
  if (x_grid.empty()) throw std::invalid_argument("korovkin_errors: empty grid");
  std::array<double, 3> sup{0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    // S*(t^i; x) - x^i as an exact polynomial; evaluation is cancellation-free
    MomentPolynomial dev = raw_moment(i);
    dev.add_term(i, 0, Rational(-1));
    for (double x : x_grid) sup[i] = std::max(sup[i], std::abs(dev.evaluate(x, u_n)));
  }
  return sup;
}

double kappa_estimate(const TargetFunction& g, double r, const std::vector<double>& grid) {
  require_derivatives(g, 0);
  if (!(r > 0.0 && r <= 1.0))
    throw std::domain_error("kappa_estimate: r must lie in (0, 1]");
  if (grid.size() < 2) throw std::invalid_argument("kappa_estimate: need >= 2 grid points");
  size_t stride = 1;
  while ((grid.size() / stride) * (grid.size() / stride) > 4'000'000) ++stride;
  double best = 0.0;
  for (size_t i = 0; i < grid.size(); i += stride) {
    double gi = g.f(grid[i]);
    for (size_t k = i + stride; k < grid.size(); k += stride) {
      double d = std::abs(grid[k] - grid[i]);
      if (d == 0.0) continue;
      best = std::max(best, std::abs(g.f(grid[k]) - gi) / std::pow(d, r));
    }
  }
  return best;
}

BoundCheck global_lipschitz_bound_check(const TargetFunction& g, double r, double x,
                                        double u_n, double kappa,
                                        const std::vector<double>& grid,
                                        const QuadratureSpec& q) {
  if (kappa <= 0.0) kappa = kappa_estimate(g, r, grid);
  BoundCheck out;
  out.lhs = std::abs(apply(g, u_n, x, q).value - g.f(x));
  out.rhs = kappa * std::pow(theta2(u_n, x), r / 2.0);
  out.holds = out.lhs <= out.rhs;
  return out;
}

SpaceBoundCheck weighted_lipschitz_bound_check(const TargetFunction& g,
                                               const LipschitzSpaceParams& p, double x,
                                               double u_n,
                                               const std::vector<double>& membership_grid,
                                               const QuadratureSpec& q) {
  require_derivatives(g, 0);
  if (!(p.a1 > 0.0) || !(p.a2 > 0.0))
    throw std::domain_error("weighted_lipschitz_bound_check: a1, a2 must be positive");
  if (!(p.s > 0.0 && p.s <= 1.0))
    throw std::domain_error("weighted_lipschitz_bound_check: s must lie in (0, 1]");
  if (!(p.M > 0.0)) throw std::domain_error("weighted_lipschitz_bound_check: M must be positive");
  if (!(x > 0.0))
    throw std::domain_error("weighted_lipschitz_bound_check: x must be positive");

  SpaceBoundCheck out;
  // ordered pairs (t, y): |g(t)-g(y)| <= M |t-y|^s / (t + a1 y^2 + a2 y)^{s/2}
  for (size_t a = 0; a < membership_grid.size(); ++a) {
    double t = membership_grid[a];
    double gt = g.f(t);
    for (size_t b = 0; b < membership_grid.size(); ++b) {
      if (a == b) continue;
      double y = membership_grid[b];
      double denom = t + p.a1 * y * y + p.a2 * y;
      if (!(denom > 0.0)) continue;
      double lhs = std::abs(gt - g.f(y));
      double rhs = p.M * std::pow(std::abs(t - y), p.s) / std::pow(denom, p.s / 2.0);
      if (rhs > 0.0) out.worst_ratio = std::max(out.worst_ratio, lhs / rhs);
      if (lhs > rhs + 1e-12) out.member = false;
    }
  }
  out.bound.lhs = std::abs(apply(g, u_n, x, q).value - g.f(x));
  out.bound.rhs = p.M * std::pow(theta2(u_n, x) / (x * (p.a1 * x + p.a2)), p.s / 2.0);
  out.bound.holds = out.bound.lhs <= out.bound.rhs;
  return out;
}

ResidualSeries voronovskaya_residual(const TargetFunction& g, double x,
                                     const std::vector<int>& n_values,
                                     const UnSequence& seq, const QuadratureSpec& q) {
  require_derivatives(g, 2);
  ResidualSeries series;
  series.n = n_values;
  series.u = sequence_values(seq, n_values);
  double limit = g.df(x) + x * g.d2f(x);
  for (double u : series.u)
    series.value.push_back(u * (apply(g, u, x, q).value - g.f(x)) - limit);
  return series;
}

double weighted_modulus_estimate(const TargetFunction& g, double xi,
                                 const std::vector<double>& x_grid, int h_points) {
  require_derivatives(g, 0);
  if (!(xi >= 0.0) || !std::isfinite(xi))
    throw std::domain_error("weighted_modulus_estimate: xi must be nonnegative");
  if (h_points < 2) throw std::invalid_argument("weighted_modulus_estimate: h_points < 2");
  if (xi == 0.0) return 0.0;
  double best = 0.0;
  for (int k = 1; k < h_points; ++k) {
    double h = xi * k / (h_points - 1);
    double hfac = 1.0 + h * h;
    for (double x : x_grid) {
      double v = std::abs(g.f(x + h) - g.f(x)) / (hfac * (1.0 + x * x));
      best = std::max(best, v);
    }
  }
  return best;
}

QuantVoronovskaya quantitative_voronovskaya_check(const TargetFunction& g, double x,
                                                  const std::vector<int>& n_values,
                                                  const UnSequence& seq,
                                                  const std::vector<double>& x_grid,
                                                  const QuadratureSpec& q) {
  require_derivatives(g, 2);
  QuantVoronovskaya out;
  out.lhs.n = out.modulus.n = out.ratio.n = n_values;
  out.lhs.u = out.modulus.u = out.ratio.u = sequence_values(seq, n_values);
  TargetFunction second{g.d2f, {}, {}, g.growth, g.name + "''"};
  constexpr double kZeroTol = 1e-9;
  for (double u : out.lhs.u) {
    double s = apply(g, u, x, q).value;
    double lhs = u * std::abs(s - g.f(x) - g.df(x) / u - g.d2f(x) * (x + 1.0 / u) / u);
    double d = weighted_modulus_estimate(second, std::sqrt(1.0 / u), x_grid);
    out.lhs.value.push_back(lhs);
    out.modulus.value.push_back(d);
    if (d > 0.0) {
      out.ratio.value.push_back(lhs / d);
    } else if (lhs <= kZeroTol) {
      out.ratio.value.push_back(0.0);
    } else {
      out.ratio.value.push_back(std::numeric_limits<double>::infinity());
      out.degenerate_violation = true;
    }
  }
  return out;
}

TargetFunction product_function(const TargetFunction& f, const TargetFunction& g) {
  require_derivatives(f, 0);
  require_derivatives(g, 0);
  TargetFunction p;
  auto ff = f.f, gf = g.f;
  p.f = [ff, gf](double t) { return ff(t) * gf(t); };
  if (f.df && g.df) {
    auto fd = f.df, gd = g.df;
    p.df = [ff, gf, fd, gd](double t) { return fd(t) * gf(t) + ff(t) * gd(t); };
  }
  using GK = Growth::Kind;
  if (f.growth.kind == GK::exponential || g.growth.kind == GK::exponential) {
    double rate = (f.growth.kind == GK::exponential ? f.growth.amount : 0.0) +
                  (g.growth.kind == GK::exponential ? g.growth.amount : 0.0);
    p.growth = Growth::exponential(rate);
  } else if (f.growth.kind == GK::polynomial || g.growth.kind == GK::polynomial) {
    double deg = (f.growth.kind == GK::polynomial ? f.growth.amount : 0.0) +
                 (g.growth.kind == GK::polynomial ? g.growth.amount : 0.0);
    p.growth = Growth::polynomial(deg);
  } else {
    p.growth = Growth::bounded();
  }
  p.name = f.name + "*" + g.name;
  return p;
}

double gruss_gap(const TargetFunction& f, const TargetFunction& g, double x, double u_n,
                 const QuadratureSpec& q) {
  TargetFunction fg = product_function(f, g);
  double sfg = apply(fg, u_n, x, q).value;
  double sf = apply(f, u_n, x, q).value;
  double sg = apply(g, u_n, x, q).value;
  return u_n * (sfg - sf * sg);
}

ResidualSeries gruss_deviation(const TargetFunction& f, const TargetFunction& g, double x,
                               const std::vector<int>& n_values, const UnSequence& seq,
                               const QuadratureSpec& q) {
  require_derivatives(f, 1);
  require_derivatives(g, 1);
  ResidualSeries series;
  series.n = n_values;
  series.u = sequence_values(seq, n_values);
  double limit = 2.0 * x * f.df(x) * g.df(x);
  for (double u : series.u)
    series.value.push_back(std::abs(gruss_gap(f, g, x, u, q) - limit));
  return series;
}

}  // namespace smdlab
