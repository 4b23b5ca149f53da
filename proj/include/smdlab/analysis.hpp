#pragma once

#include <array>
#include <vector>

#include "smdlab/evaluator.hpp"
#include "smdlab/functions.hpp"
#include "smdlab/kernel.hpp"

namespace smdlab {

// Uniform grid, both endpoints included. Default experiment grid is
// default_grid(): 401 points on [0, 4].
std::vector<double> uniform_grid(double lo, double hi, int points);
std::vector<double> default_grid();

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points_used = 0;
};

// Least squares of log(y) on log(u); entries with y <= 0 or non-finite are
// skipped. Fewer than two usable points leaves slope = 0, points_used < 2.
SlopeFit fit_loglog(const std::vector<double>& u, const std::vector<double>& y);

struct ResidualSeries {
  std::vector<int> n;
  std::vector<double> u;      // u_n
  std::vector<double> value;  // residual / gap / ratio at each n
  // Decay rate of |value|; residual signs track the next-order term, so the
  // fit is over magnitudes. Zeros are skipped by fit_loglog.
  SlopeFit slope() const;
};

// sup_x |S*(e_i; x) - e_i(x)| for e_i = 1, t, t^2 over the grid, evaluated
// through the exact moment polynomials (no quadrature noise).
std::array<double, 3> korovkin_errors(double u_n, const std::vector<double>& x_grid);

// max over distinct ordered grid pairs of |g(a)-g(b)| / |a-b|^r: a grid lower
// bound for the global Lipschitz-type constant kappa_r. Pairs are subsampled
// to at most ~2e6 by striding when the grid is large.
double kappa_estimate(const TargetFunction& g, double r, const std::vector<double>& grid);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// |S*(g;x) - g(x)| <= kappa * Theta_2(x)^{r/2}, r in (0, 1]. kappa <= 0
// requests a grid estimate via kappa_estimate.
BoundCheck global_lipschitz_bound_check(const TargetFunction& g, double r, double x,
                                        double u_n, double kappa = 0.0,
                                        const std::vector<double>& grid = default_grid(),
                                        const QuadratureSpec& q = {});

// Weighted Lipschitz class: |g(t) - g(y)| <= M |t-y|^s / (t + a1 y^2 + a2 y)^{s/2}.
struct LipschitzSpaceParams {
  double a1 = 1.0;  // > 0
  double a2 = 1.0;  // > 0
  double s = 1.0;   // in (0, 1]
  double M = 1.0;   // > 0
};

struct SpaceBoundCheck {
  BoundCheck bound;
  bool member = true;      // class inequality scanned over ordered grid pairs
  double worst_ratio = 0;  // max lhs/rhs over the membership scan
};

// |S*(g;x) - g(x)| <= M (Theta_2(x) / (x (a1 x + a2)))^{s/2}; x must be
// positive (the bound degenerates at x = 0 -> std::domain_error).
SpaceBoundCheck weighted_lipschitz_bound_check(
    const TargetFunction& g, const LipschitzSpaceParams& p, double x, double u_n,
    const std::vector<double>& membership_grid = default_grid(),
    const QuadratureSpec& q = {});

// u_n (S*(g;x) - g(x)) - (g'(x) + x g''(x)) for each n; -> 0 for C^2 targets.
ResidualSeries voronovskaya_residual(const TargetFunction& g, double x,
                                     const std::vector<int>& n_values,
                                     const UnSequence& seq,
                                     const QuadratureSpec& q = {});

// Grid estimate of the weighted modulus
// Delta(g; xi) = sup_{0 <= h <= xi, x >= 0} |g(x+h) - g(x)| / ((1+h^2)(1+x^2)).
double weighted_modulus_estimate(const TargetFunction& g, double xi,
                                 const std::vector<double>& x_grid, int h_points = 65);

// Quantitative Voronovskaya: L_n = u_n |S*(g;x) - g(x) - g'(x)/u_n
// - g''(x) (x + 1/u_n) / u_n| against D_n = Delta(g''; sqrt(1/u_n)).
struct QuantVoronovskaya {
  ResidualSeries lhs;     // L_n
  ResidualSeries modulus; // D_n
  ResidualSeries ratio;   // L_n / D_n; 0 when both vanish
  bool degenerate_violation = false;  // some n had D_n = 0 with L_n > 0
};
QuantVoronovskaya quantitative_voronovskaya_check(
    const TargetFunction& g, double x, const std::vector<int>& n_values,
    const UnSequence& seq, const std::vector<double>& x_grid = default_grid(),
    const QuadratureSpec& q = {});

// u_n (S*(fg;x) - S*(f;x) S*(g;x)); -> 2 x f'(x) g'(x).
double gruss_gap(const TargetFunction& f, const TargetFunction& g, double x, double u_n,
                 const QuadratureSpec& q = {});

// |gruss_gap - 2 x f'(x) g'(x)| per n.
ResidualSeries gruss_deviation(const TargetFunction& f, const TargetFunction& g, double x,
                               const std::vector<int>& n_values, const UnSequence& seq,
                               const QuadratureSpec& q = {});

// Pointwise product with combined growth envelope (rates add, degrees add).
TargetFunction product_function(const TargetFunction& f, const TargetFunction& g);

}  // namespace smdlab
