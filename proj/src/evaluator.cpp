#include "smdlab/evaluator.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "smdlab/laguerre.hpp"

namespace smdlab {

namespace {

void check_order(int order) {
  if (order < 2) throw std::domain_error("QuadratureSpec: order must be >= 2");
}

[[noreturn]] void throw_nonfinite(double node) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "target evaluated to a non-finite value at t = %.17g", node);
  throw EvaluationError(node, buf);
}

// Exponential targets defeat the plain rule: the weight s^j e^{-s} samples
// where Gamma(j+1) concentrates, but s^j e^{-s} g(s/u_n) has its mass near
// beta (j+1) with beta = u_n / (u_n - a), and e^{a s / u_n} at the far nodes
// amplifies the rule's smallest weights (eigensolver noise ~1e-28) into
// garbage. Substituting s = beta sigma fixes both:
//   (1/j!) int e^{-s} s^j g(s/u_n) ds
//     = beta^{j+1} (1/j!) int e^{-sigma} sigma^j h(sigma) dsigma,
//   h(sigma) = e^{-damp sigma} g(beta sigma / u_n),  damp = a / (u_n - a).
// The damping exponent equals the growth envelope exponent at the stretched
// node, so |h| is bounded; for g = e^{at} exactly, h == 1 and the rule is
// exact at any order.
struct Tilt {
  bool active = false;
  double beta = 1.0;
  double damp = 0.0;
  double log_beta = 0.0;
};

Tilt make_tilt(const TargetFunction& g, double u_n) {
  Tilt t;
  if (g.growth.kind == Growth::Kind::exponential && g.growth.amount > 0.0) {
    t.active = true;
    t.damp = g.growth.amount / (u_n - g.growth.amount);
    t.beta = 1.0 + t.damp;
    t.log_beta = std::log1p(t.damp);
  }
  return t;
}

// Nodes damped past this are dropped without evaluating g: the tilted
// integrand there is bounded while the Gamma weight sits far below the
// weight noise floor, and g itself would overflow at the stretched node.
constexpr double kTiltExponentMax = 670.0;

// Quadrature sum against the normalized weight s^j e^{-s} / j!. With an
// active tilt this integrates h; the caller owns the beta^{j+1} factor.
double inner_sum(const LaguerreRule& rule, double u_n, const TargetFunction& g,
                 const Tilt& tilt) {
  long double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double s = rule.nodes[i];
    double v;
    if (tilt.active) {
      double de = tilt.damp * s;
      if (de > kTiltExponentMax) continue;
      double t = tilt.beta * s / u_n;
      v = g.f(t);
      if (!std::isfinite(v)) throw_nonfinite(t);
      v *= std::exp(-de);
    } else {
      double t = s / u_n;
      v = g.f(t);
      if (!std::isfinite(v)) throw_nonfinite(t);
    }
    acc += static_cast<long double>(rule.weights[i]) * v;
  }
  return static_cast<double>(acc);
}

void check_common(const TargetFunction& g, double u_n) {
  if (!g.f) throw std::invalid_argument("target function is empty");
  if (!(u_n > 0.0) || !std::isfinite(u_n))
    throw std::domain_error("u_n must be positive and finite");
}

}  // namespace

double inner_integral(long long j, double u_n, const TargetFunction& g,
                      const QuadratureSpec& q) {
  check_common(g, u_n);
  check_order(q.order);
  if (j < 0) throw std::domain_error("inner_integral: j must be nonnegative");
  Tilt tilt = make_tilt(g, u_n);
  double s = inner_sum(*laguerre_cache().get(j, q.order), u_n, g, tilt);
  if (!tilt.active) return s;
  return std::exp(static_cast<double>(j + 1) * tilt.log_beta) * s;
}

OperatorEvaluation apply(const TargetFunction& g, double u_n, double x,
                         const QuadratureSpec& q) {
  check_common(g, u_n);
  check_order(q.order);
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("apply: x must be nonnegative and finite");
  if (g.growth.kind == Growth::Kind::exponential && g.growth.amount >= u_n) {
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "apply: exponential growth rate %.6g requires u_n > rate (u_n = %.6g)",
                  g.growth.amount, u_n);
    throw std::domain_error(buf);
  }
  if (!(q.series_tol > 0.0 && q.series_tol < 1.0))
    throw std::domain_error("QuadratureSpec: series_tol must lie in (0, 1)");

  TruncationWindow win =
      x == 0.0 ? TruncationWindow{0, 0, 0.0} : truncation_window(u_n, x, q.series_tol);
  Tilt tilt = make_tilt(g, u_n);

  // Term j prefactor: Poisson weight with beta^{j+1} folded in via logs, so
  // neither factor overflows or underflows separately.
  auto prefactor = [&](long long j) {
    if (x == 0.0)
      return j == 0 ? std::exp(static_cast<double>(j + 1) * tilt.log_beta) : 0.0;
    return std::exp(log_poisson_weight(u_n, j, x) +
                    static_cast<double>(j + 1) * tilt.log_beta);
  };
  auto term_at = [&](long long j, int order) {
    double pf = prefactor(j);
    if (pf == 0.0) return 0.0;
    return pf * inner_sum(*laguerre_cache().get(j, order), u_n, g, tilt);
  };

  // Base pass at q.order. The Poisson mass bound alone is not enough when the
  // inner integrals grow in j (e^{at} makes them geometric), so each tail is
  // extended past the mass window until the weighted terms themselves stay
  // below cutoff. Growth rate < u_n guarantees the terms eventually decay.
  long long lo = win.j_min, hi = win.j_max;
  long double acc = 0.0;
  for (long long j = lo; j <= hi; ++j) acc += term_at(j, q.order);
  if (x > 0.0) {
    auto cutoff = [&] {
      return q.series_tol * 1e-3 * std::max(1.0, std::abs(static_cast<double>(acc)));
    };
    constexpr long long kMaxExtension = 100000;
    int below = 0;
    for (long long j = hi + 1; below < 3 && j <= win.j_max + kMaxExtension; ++j) {
      double term = term_at(j, q.order);
      acc += term;
      hi = j;
      below = std::abs(term) <= cutoff() ? below + 1 : 0;
    }
    below = 0;
    for (long long j = lo - 1; j >= 0 && below < 3; --j) {
      double term = term_at(j, q.order);
      acc += term;
      lo = j;
      below = std::abs(term) <= cutoff() ? below + 1 : 0;
    }
  }

  std::vector<double> pre;
  pre.reserve(static_cast<size_t>(hi - lo + 1));
  for (long long j = lo; j <= hi; ++j) pre.push_back(prefactor(j));

  auto sweep = [&](int order) {
    long double s = 0.0;
    for (long long j = lo; j <= hi; ++j) {
      double pf = pre[static_cast<size_t>(j - lo)];
      if (pf == 0.0) continue;
      s += static_cast<long double>(pf) *
           inner_sum(*laguerre_cache().get(j, order), u_n, g, tilt);
    }
    return static_cast<double>(s);
  };

  OperatorEvaluation out;
  out.terms_used = hi - lo + 1;
  out.tail_bound = win.tail_mass_bound;
  double v = static_cast<double>(acc);
  if (q.scheme == QuadratureSpec::Scheme::adaptive) {
    for (int order = q.order * 2; order <= q.max_order; order *= 2) {
      double v2 = sweep(order);
      out.inner_abs_error_estimate = std::abs(v2 - v);
      v = v2;
      if (out.inner_abs_error_estimate <= q.series_tol * std::max(1.0, std::abs(v2))) break;
    }
  }
  out.value = v;
  return out;
}

double apply_discrete_szasz(const TargetFunction& g, double u_n, double x,
                            double series_tol) {
  check_common(g, u_n);
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("apply_discrete_szasz: x must be nonnegative and finite");
  if (!(series_tol > 0.0 && series_tol < 1.0))
    throw std::domain_error("apply_discrete_szasz: series_tol must lie in (0, 1)");
  TruncationWindow win =
      x == 0.0 ? TruncationWindow{0, 0, 0.0} : truncation_window(u_n, x, series_tol);
  long double acc = 0.0;
  for (long long j = win.j_min; j <= win.j_max; ++j) {
    double t = static_cast<double>(j) / u_n;
    double v = g.f(t);
    if (!std::isfinite(v)) throw_nonfinite(t);
    acc += static_cast<long double>(poisson_weight(u_n, j, x)) * v;
  }
  return static_cast<double>(acc);
}

}  // namespace smdlab
