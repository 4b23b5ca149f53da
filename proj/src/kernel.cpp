#include "smdlab/kernel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace smdlab {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

/* ---- Stirling error: stirlerr(j) = lgamma(j+1) - ((j+1/2) ln j - j + ln(2*pi)/2) ---- */

double stirlerr(long long j) {
  static const auto table = [] {
    std::array<double, 16> t{};
    for (int k = 1; k <= 15; ++k) {
      double n = static_cast<double>(k);
      t[k] = std::lgamma(n + 1.0) - ((n + 0.5) * std::log(n) - n + 0.5 * kLogTwoPi);
    }
    return t;
  }();
  if (j <= 15) return table[static_cast<int>(j)];
  double nn = static_cast<double>(j) * static_cast<double>(j);
  // asymptotic series 1/(12 j) - 1/(360 j^3) + 1/(1260 j^5) - 1/(1680 j^7) + 1/(1188 j^9)
  double s = 1.0 / 1188.0;
  s = 1.0 / (12.0 * j) -
      (1.0 / (360.0) - (1.0 / 1260.0 - (1.0 / 1680.0 - s / nn) / nn) / nn) / nn / j;
  return s;
}

// Poisson deviance j*ln(j/lambda) + lambda - j, evaluated by series when
// j is close to lambda (the direct form cancels catastrophically there).
double bd0(double j, double lambda) {
  if (std::abs(j - lambda) < 0.1 * (j + lambda)) {
    double v = (j - lambda) / (j + lambda);
    double s = (j - lambda) * v;
    double ej = 2.0 * j * v;
    double v2 = v * v;
    for (int k = 1;; ++k) {
      ej *= v2;
      double s1 = s + ej / (2.0 * k + 1.0);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return j * std::log(j / lambda) + lambda - j;
}

void validate(const BasisParams& p) {
  if (!(p.c > 0.0) || !std::isfinite(p.c))
    throw std::domain_error("poisson_weight: c must be positive and finite");
  if (!(p.x >= 0.0) || !std::isfinite(p.x))
    throw std::domain_error("poisson_weight: x must be nonnegative and finite");
  if (p.j < 0) throw std::domain_error("poisson_weight: j must be nonnegative");
}

}  // namespace

double log_poisson_weight(double c, long long j, double x) {
  validate({c, j, x});
  if (x == 0.0) throw std::domain_error("log_poisson_weight: x must be positive");
  double lambda = c * x;
  if (j == 0) return -lambda;
  double jd = static_cast<double>(j);
  return -stirlerr(j) - bd0(jd, lambda) - 0.5 * (kLogTwoPi + std::log(jd));
}

double poisson_weight(const BasisParams& p) {
  validate(p);
  if (p.x == 0.0) return p.j == 0 ? 1.0 : 0.0;
  return std::exp(log_poisson_weight(p.c, p.j, p.x));
}

double poisson_weight(double c, long long j, double x) {
  return poisson_weight(BasisParams{c, j, x});
}

TruncationWindow truncation_window(double c, double x, double tol) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::domain_error("truncation_window: c must be positive and finite");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("truncation_window: x must be nonnegative and finite");
  if (!(tol > 0.0 && tol < 1.0))
    throw std::domain_error("truncation_window: tol must lie in (0, 1)");
  if (x == 0.0) return {0, 0, 0.0};

  double lambda = c * x;
  long long mode = static_cast<long long>(std::floor(lambda));

  // Kahan-compensated mass accumulation; per-term values extend from the mode
  // by the exact pmf ratio p(j+1)/p(j) = lambda/(j+1).
  double acc = 0.0, comp = 0.0;
  auto add = [&acc, &comp](double v) {
    double y = v - comp;
    double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  };

  double p_mode = poisson_weight(c, mode, x);
  add(p_mode);
  long long lo = mode, hi = mode;
  double p_lo = p_mode, p_hi = p_mode;
  const double target = 1.0 - tol;

  while (acc < target) {
    double cand_lo = lo > 0 ? p_lo * (static_cast<double>(lo) / lambda) : 0.0;
    double cand_hi = p_hi * (lambda / static_cast<double>(hi + 1));
    if (cand_lo == 0.0 && cand_hi == 0.0) break;  // both tails underflowed
    if (cand_lo >= cand_hi) {
      --lo;
      p_lo = cand_lo;
      add(p_lo);
    } else {
      ++hi;
      p_hi = cand_hi;
      add(p_hi);
    }
  }
  return {lo, hi, std::max(0.0, 1.0 - acc)};
}

/* ---- u_n sequences ---- */

UnSequence::UnSequence(Kind k, double p, std::vector<double> vals)
    : kind_(k), p_(p), table_(std::move(vals)) {}

UnSequence UnSequence::identity() { return UnSequence(Kind::identity, 1.0, {}); }

UnSequence UnSequence::power(double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::domain_error("UnSequence::power: exponent must be positive and finite");
  return UnSequence(Kind::power, p, {});
}

UnSequence UnSequence::table(std::vector<double> vals) {
  if (vals.empty()) throw std::domain_error("UnSequence::table: empty table");
  double prev = 0.0;
  for (double v : vals) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::domain_error("UnSequence::table: entries must be positive and finite");
    if (v <= prev)
      throw std::domain_error("UnSequence::table: entries must be strictly increasing");
    prev = v;
  }
  return UnSequence(Kind::table, 0.0, std::move(vals));
}

double UnSequence::value(int n) const {
  if (n < 1) throw std::domain_error("UnSequence::value: index must be >= 1");
  switch (kind_) {
    case Kind::identity:
      return static_cast<double>(n);
    case Kind::power:
      return std::pow(static_cast<double>(n), p_);
    case Kind::table:
      if (static_cast<size_t>(n) > table_.size())
        throw std::domain_error("UnSequence::value: index past end of table");
      return table_[static_cast<size_t>(n) - 1];
  }
  return 0.0;  // unreachable
}

std::string UnSequence::describe() const {
  switch (kind_) {
    case Kind::identity:
      return "identity";
    case Kind::power:
      return "power:" + std::to_string(p_);
    case Kind::table:
      return "table[" + std::to_string(table_.size()) + "]";
  }
  return "";
}

}  // namespace smdlab
