#pragma once

#include <stdexcept>

#include "smdlab/functions.hpp"
#include "smdlab/kernel.hpp"

namespace smdlab {

struct QuadratureSpec {
  enum class Scheme { fixed, adaptive };
  Scheme scheme = Scheme::adaptive;
  int order = 48;             // >= 2; exact for polynomials of degree <= 2*order-1
  int max_order = 512;        // adaptive doubling cap
  double series_tol = 1e-12;  // Poisson tail mass bound; adaptive agreement target
};

struct OperatorEvaluation {
  double value = 0.0;
  long long terms_used = 0;               // Poisson series terms
  double tail_bound = 0.0;                // mass outside the truncation window
  double inner_abs_error_estimate = 0.0;  // last adaptive sweep delta; 0 when fixed
};

// Target evaluated to a non-finite value at a quadrature sample.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(double node_, const std::string& msg)
      : std::runtime_error(msg), node(node_) {}
  double node;
};

// (1/j!) * integral_0^inf e^{-s} s^j g(s/u_n) ds by the normalized
// generalized Gauss-Laguerre rule with alpha = j at q.order. Targets with
// exponential growth rate a in (0, u_n) are integrated under the substitution
// s = beta sigma, beta = u_n / (u_n - a), which bounds the integrand and
// realigns its mass with the rule; the beta^{j+1} factor is exact, so for
// g = e^{at} the result is exact at any order.
double inner_integral(long long j, double u_n, const TargetFunction& g,
                      const QuadratureSpec& q = {});

// S*_n(g; x) = sum_j s_{u_n,j}(x) * inner_integral(j). Truncated at the
// q.series_tol Poisson tail mass window, then each tail is extended while the
// weighted terms themselves stay significant (inner integrals may grow in j);
// the adaptive scheme doubles the order until two successive sweeps agree to
// series_tol * max(1, |value|) or max_order is reached. x == 0 exactly
// reduces to the single j = 0 term. Exponential targets require growth
// rate < u_n (std::domain_error otherwise) and use the tilted inner rule.
OperatorEvaluation apply(const TargetFunction& g, double u_n, double x,
                         const QuadratureSpec& q = {});

// Classical sampled operator: sum_j s_{u_n,j}(x) g(j/u_n).
double apply_discrete_szasz(const TargetFunction& g, double u_n, double x,
                            double series_tol = 1e-12);

}  // namespace smdlab
