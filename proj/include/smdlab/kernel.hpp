#pragma once

#include <string>
#include <vector>

namespace smdlab {

// Parameters of the Szasz basis weight s_{c,j}(x) = e^{-cx} (cx)^j / j!,
// the Poisson(cx) probability of j.
struct BasisParams {
  double c = 1.0;   // > 0
  long long j = 0;  // >= 0
  double x = 0.0;   // >= 0
};

// s_{c,j}(x), exact 0/1 at x == 0. Log-space evaluation: the exponent is
// assembled from the Poisson deviance and the Stirling log-gamma correction,
// so no large-magnitude cancellation ever reaches exp().
double poisson_weight(const BasisParams& p);
double poisson_weight(double c, long long j, double x);

// log s_{c,j}(x) for x > 0 (may be -inf when the weight underflows).
double log_poisson_weight(double c, long long j, double x);

// Contiguous index window [j_min, j_max] whose captured Poisson mass is at
// least 1 - tail_mass_bound.
struct TruncationWindow {
  long long j_min = 0;
  long long j_max = 0;
  double tail_mass_bound = 0.0;
};

// Grows a window outward from the mode floor(c*x), greedily taking the
// heavier neighbor, until captured mass reaches 1 - tol. x == 0 collapses
// to {0, 0, 0}. The window always contains floor(c*x).
TruncationWindow truncation_window(double c, double x, double tol);

// Scaling sequence u_n: strictly increasing, u_n -> infinity as n grows.
class UnSequence {
 public:
  static UnSequence identity();                       // u_n = n
  static UnSequence power(double p);                  // u_n = n^p, p > 0
  static UnSequence table(std::vector<double> vals);  // explicit prefix

  // n >= 1; table sequences throw std::domain_error past their last entry.
  double value(int n) const;
  std::string describe() const;

 private:
  enum class Kind { identity, power, table };
  UnSequence(Kind k, double p, std::vector<double> vals);
  Kind kind_;
  double p_;
  std::vector<double> table_;
};

}  // namespace smdlab
