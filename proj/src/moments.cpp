#include "smdlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "smdlab/kernel.hpp"

namespace smdlab {

namespace {

void check_order(int m) {
  if (m < 0 || m > kMaxMomentOrder)
    throw std::domain_error("moment order must lie in [0, " +
                            std::to_string(kMaxMomentOrder) + "]");
}

// Coefficients of (J+1)(J+2)...(J+m) in powers of J.
std::vector<long long> rising_coeffs(int m) {
  std::vector<long long> c{1};
  for (int i = 1; i <= m; ++i) {
    std::vector<long long> nx(c.size() + 1, 0);
    for (size_t k = 0; k < c.size(); ++k) {
      nx[k] += static_cast<long long>(i) * c[k];
      nx[k + 1] += c[k];
    }
    c = std::move(nx);
  }
  return c;
}

// Stirling numbers of the second kind S(k, i), k <= kmax.
std::vector<std::vector<long long>> stirling2(int kmax) {
  std::vector<std::vector<long long>> s(kmax + 1, std::vector<long long>(kmax + 1, 0));
  s[0][0] = 1;
  for (int k = 1; k <= kmax; ++k)
    for (int i = 1; i <= k; ++i)
      s[k][i] = static_cast<long long>(i) * s[k - 1][i] + s[k - 1][i - 1];
  return s;
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

/* ---- MomentPolynomial ---- */

MomentPolynomial MomentPolynomial::zero(Kind kind, int order) {
  return MomentPolynomial(kind, order);
}

Rational MomentPolynomial::coeff(int a, int b) const {
  auto it = terms_.find({a, b});
  return it == terms_.end() ? Rational() : it->second;
}

void MomentPolynomial::add_term(int a, int b, const Rational& c) {
  if (a < 0 || b < 0) throw std::logic_error("MomentPolynomial: negative exponent");
  if (c.is_zero()) return;
  auto it = terms_.find({a, b});
  if (it == terms_.end()) {
    terms_.emplace(Key{a, b}, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MomentPolynomial MomentPolynomial::derivative_x() const {
  MomentPolynomial r(kind_, order_);
  for (const auto& [key, c] : terms_)
    if (key.first > 0) r.add_term(key.first - 1, key.second, c * Rational(key.first));
  return r;
}

MomentPolynomial MomentPolynomial::shifted(int da, int db) const {
  MomentPolynomial r(kind_, order_);
  for (const auto& [key, c] : terms_) {
    int a = key.first + da, b = key.second + db;
    if (a < 0 || b < 0)
      throw std::logic_error("MomentPolynomial::shifted: negative exponent");
    r.add_term(a, b, c);
  }
  return r;
}

MomentPolynomial MomentPolynomial::scaled(const Rational& c) const {
  MomentPolynomial r(kind_, order_);
  if (c.is_zero()) return r;
  for (const auto& [key, v] : terms_) r.add_term(key.first, key.second, v * c);
  return r;
}

MomentPolynomial operator+(const MomentPolynomial& a, const MomentPolynomial& b) {
  MomentPolynomial r = a;
  for (const auto& [key, c] : b.terms_) r.add_term(key.first, key.second, c);
  return r;
}

MomentPolynomial operator-(const MomentPolynomial& a, const MomentPolynomial& b) {
  MomentPolynomial r = a;
  for (const auto& [key, c] : b.terms_) r.add_term(key.first, key.second, -c);
  return r;
}

double MomentPolynomial::evaluate(double x, double u_n) const {
  if (!(u_n > 0.0)) throw std::domain_error("MomentPolynomial::evaluate: u_n must be positive");
  double r = 1.0 / u_n;
  long double acc = 0.0;
  for (const auto& [key, c] : terms_) {
    long double t = c.to_double();
    for (int i = 0; i < key.first; ++i) t *= x;
    for (int i = 0; i < key.second; ++i) t *= r;
    acc += t;
  }
  return static_cast<double>(acc);
}

std::string MomentPolynomial::str() const {
  if (terms_.empty()) return "0";
  // highest x power first, then lowest 1/u_n power
  std::vector<std::pair<Key, Rational>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
    if (l.first.first != r.first.first) return l.first.first > r.first.first;
    return l.first.second < r.first.second;
  });
  std::string out;
  for (const auto& [key, c] : ordered) {
    if (!out.empty()) out += " + ";
    std::string t = c.str();
    if (key.first > 0) t += key.first == 1 ? " x" : " x^" + std::to_string(key.first);
    if (key.second > 0) t += " u^-" + std::to_string(key.second);
    out += t;
  }
  return out;
}

/* ---- moment constructions ---- */

MomentPolynomial raw_moment(int m) {
  check_order(m);
  auto c = rising_coeffs(m);
  auto s2 = stirling2(m);
  MomentPolynomial poly = MomentPolynomial::zero(MomentPolynomial::Kind::raw, m);
  // E[(J+1)...(J+m)] = sum_k c_k E[J^k], E[J^k] = sum_i S(k,i) lambda^i,
  // lambda = u_n x; dividing by u_n^m sends lambda^i to x^i u_n^{i-m}.
  for (int i = 0; i <= m; ++i) {
    long long num = 0;
    for (int k = i; k <= m; ++k) num += c[k] * s2[k][i];
    poly.add_term(i, m - i, Rational(num));
  }
  return poly;
}

MomentPolynomial central_moment(int m) {
  check_order(m);
  MomentPolynomial poly = MomentPolynomial::zero(MomentPolynomial::Kind::central, m);
  for (int k = 0; k <= m; ++k) {
    long long sign = ((m - k) % 2 == 0) ? 1 : -1;
    Rational factor(sign * binomial(m, k));
    // binom(m,k) (-x)^{m-k} * raw_k
    MomentPolynomial part = raw_moment(k).scaled(factor).shifted(m - k, 0);
    for (const auto& [key, c] : part.terms()) poly.add_term(key.first, key.second, c);
  }
  return poly;
}

namespace {

MomentPolynomial recurrence_common(const MomentPolynomial& theta_m,
                                   const MomentPolynomial& theta_prev, int m,
                                   bool distribute_x) {
  if (m < 0 || m + 1 > kMaxMomentOrder)
    throw std::domain_error("recurrence_step: order out of range");
  if (theta_m.kind() != MomentPolynomial::Kind::central || theta_m.order() != m)
    throw std::invalid_argument("recurrence_step: theta_m must be the central moment of order m");
  if (m > 0 && (theta_prev.kind() != MomentPolynomial::Kind::central ||
                theta_prev.order() != m - 1))
    throw std::invalid_argument(
        "recurrence_step: theta_prev must be the central moment of order m-1");

  MomentPolynomial bracket = theta_m.scaled(Rational(m + 1));
  MomentPolynomial der = theta_m.derivative_x();
  MomentPolynomial prev = m > 0 ? theta_prev.scaled(Rational(2 * m))
                                : MomentPolynomial::zero(MomentPolynomial::Kind::central, -1);
  MomentPolynomial sum = distribute_x
                             ? (der + prev + bracket).shifted(1, 0)
                             : (der + prev).shifted(1, 0) + bracket;
  MomentPolynomial out = sum.shifted(0, 1);  // divide by u_n
  MomentPolynomial r = MomentPolynomial::zero(MomentPolynomial::Kind::central, m + 1);
  for (const auto& [key, c] : out.terms()) r.add_term(key.first, key.second, c);
  return r;
}

}  // namespace

MomentPolynomial recurrence_step(const MomentPolynomial& theta_m,
                                 const MomentPolynomial& theta_prev, int m) {
  return recurrence_common(theta_m, theta_prev, m, false);
}

MomentPolynomial recurrence_step_x_distributed(const MomentPolynomial& theta_m,
                                               const MomentPolynomial& theta_prev, int m) {
  return recurrence_common(theta_m, theta_prev, m, true);
}

double moment_oracle(int m, double u_n, double x, double tol) {
  check_order(m);
  if (!(u_n > 0.0) || !std::isfinite(u_n))
    throw std::domain_error("moment_oracle: u_n must be positive and finite");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("moment_oracle: x must be nonnegative and finite");
  if (!(tol > 0.0)) throw std::domain_error("moment_oracle: tol must be positive");

  // ratio-anchored series in long double: the mode weight comes from the
  // stable pmf, neighbors by exact ratios, so drift stays ~ eps * steps
  long double um = 1.0L;
  for (int i = 0; i < m; ++i) um *= u_n;
  auto inner = [m, um](long long j) {
    long double f = 1.0L;
    for (int i = 1; i <= m; ++i) f *= static_cast<long double>(j + i);
    return f / um;  // (j+m)!/(j! u_n^m)
  };
  if (x == 0.0) return static_cast<double>(inner(0));

  long double lambda = static_cast<long double>(u_n) * x;
  long long mode = static_cast<long long>(std::floor(u_n * x));
  long double cutoff = static_cast<long double>(tol) * 1e-4L;

  long double p_mode = poisson_weight(u_n, mode, x);
  long double acc = p_mode * inner(mode);

  long double p = p_mode;
  int below = 0;
  for (long long j = mode + 1; below < 3; ++j) {
    p *= lambda / static_cast<long double>(j);
    long double term = p * inner(j);
    acc += term;
    below = term < cutoff ? below + 1 : 0;
  }
  p = p_mode;
  below = 0;
  for (long long j = mode - 1; j >= 0 && below < 3; --j) {
    p *= static_cast<long double>(j + 1) / lambda;
    long double term = p * inner(j);
    acc += term;
    below = term < cutoff ? below + 1 : 0;
  }
  return static_cast<double>(acc);
}

std::vector<double> scaled_second_moment(const std::vector<double>& u_values, double x) {
  static const MomentPolynomial theta2 = central_moment(2);
  std::vector<double> out;
  out.reserve(u_values.size());
  for (double u : u_values) out.push_back(u * theta2.evaluate(x, u));
  return out;
}

}  // namespace smdlab
