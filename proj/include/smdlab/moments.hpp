#pragma once

#include <map>
#include <string>
#include <vector>

#include "smdlab/rational.hpp"

namespace smdlab {

// Bivariate polynomial in x and 1/u_n with exact rational coefficients.
// Term key (a, b) carries coeff * x^a * u_n^{-b}. Zero coefficients are
// never stored, so operator== is exact structural equality.
class MomentPolynomial {
 public:
  enum class Kind { raw, central };
  using Key = std::pair<int, int>;  // (x degree, 1/u_n degree)

  static MomentPolynomial zero(Kind kind, int order);

  Kind kind() const { return kind_; }
  int order() const { return order_; }
  const std::map<Key, Rational>& terms() const { return terms_; }
  Rational coeff(int a, int b) const;

  void add_term(int a, int b, const Rational& c);
  MomentPolynomial derivative_x() const;
  // Multiplies by x^da * u_n^{-db}; throws std::logic_error if any exponent
  // would become negative.
  MomentPolynomial shifted(int da, int db) const;
  MomentPolynomial scaled(const Rational& c) const;

  friend MomentPolynomial operator+(const MomentPolynomial& a, const MomentPolynomial& b);
  friend MomentPolynomial operator-(const MomentPolynomial& a, const MomentPolynomial& b);
  bool operator==(const MomentPolynomial& o) const {
    return kind_ == o.kind_ && order_ == o.order_ && terms_ == o.terms_;
  }

  double evaluate(double x, double u_n) const;
  std::string str() const;  // e.g. "2 x u^-1 + 2 u^-2"

 private:
  MomentPolynomial(Kind kind, int order) : kind_(kind), order_(order) {}
  Kind kind_ = Kind::raw;
  int order_ = 0;
  std::map<Key, Rational> terms_;
};

inline constexpr int kMaxMomentOrder = 12;

// S*_n(t^m; x) = E[(J+1)...(J+m)] / u_n^m over J ~ Poisson(u_n x), expanded
// through Stirling numbers; integer coefficients, exact.
MomentPolynomial raw_moment(int m);

// Theta_{n,m}(x) = S*_n((t-x)^m; x), binomial expansion over raw moments.
MomentPolynomial central_moment(int m);

// One step of u_n Theta_{m+1} = x Theta'_m + 2 m x Theta_{m-1} + (m+1) Theta_m.
// theta_prev is ignored at m = 0 (pass zero(Kind::central, -1)).
MomentPolynomial recurrence_step(const MomentPolynomial& theta_m,
                                 const MomentPolynomial& theta_prev, int m);

// Variant with x distributing over all three bracket terms,
// u_n Theta_{m+1} = x (Theta'_m + 2 m Theta_{m-1} + (m+1) Theta_m).
// Inconsistent with the closed form of Theta_2; retained so that
// `certify moments` can demonstrate the disagreement at m = 1.
MomentPolynomial recurrence_step_x_distributed(const MomentPolynomial& theta_m,
                                               const MomentPolynomial& theta_prev, int m);

// Independent numerical route: truncated Poisson series with the inner
// integral's closed form (j+m)!/(j! u_n^m) per term. Absolute error is
// bounded by roughly tol.
double moment_oracle(int m, double u_n, double x, double tol);

// u_n * Theta_{n,2}(x) per u value; converges to 2x at rate 2/u_n.
std::vector<double> scaled_second_moment(const std::vector<double>& u_values, double x);

}  // namespace smdlab
