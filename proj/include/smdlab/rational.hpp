#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace smdlab {

// Exact rational on 64-bit integers, always reduced, denominator > 0.
// Intermediates run in __int128; results that do not fit back into int64
// after reduction throw std::overflow_error.
class Rational {
 public:
  Rational() = default;
  Rational(long long num) : n_(num) {}
  Rational(long long num, long long den) { assign(num, den); }

  long long num() const { return n_; }
  long long den() const { return d_; }
  bool is_zero() const { return n_ == 0; }
  double to_double() const { return static_cast<double>(n_) / static_cast<double>(d_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.n_) * b.d_ + i128(b.n_) * a.d_, i128(a.d_) * b.d_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.n_) * b.d_ - i128(b.n_) * a.d_, i128(a.d_) * b.d_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.n_) * b.n_, i128(a.d_) * b.d_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.n_ == 0) throw std::domain_error("Rational: division by zero");
    return make(i128(a.n_) * b.d_, i128(a.d_) * b.n_);
  }
  Rational operator-() const {
    Rational r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  std::string str() const {
    return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
  }

 private:
  using i128 = __int128;

  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static long long narrow(i128 v) {
    if (v > std::numeric_limits<long long>::max() ||
        v < std::numeric_limits<long long>::min())
      throw std::overflow_error("Rational: value exceeds 64-bit range");
    return static_cast<long long>(v);
  }

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Rational();
    i128 g = gcd128(n, d);
    Rational r;
    r.n_ = narrow(n / g);
    r.d_ = narrow(d / g);
    return r;
  }

  void assign(long long num, long long den) {
    Rational r = make(num, den);
    n_ = r.n_;
    d_ = r.d_;
  }

  long long n_ = 0;
  long long d_ = 1;
};

}  // namespace smdlab
