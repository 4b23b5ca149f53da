#include "smdlab/functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smdlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TargetFunction make_exp() {
  auto e = [](double t) { return std::exp(t); };
  return {e, e, e, Growth::exponential(1.0), "exp"};
}

TargetFunction make_exp_neg() {
  return {[](double t) { return std::exp(-t); },
          [](double t) { return -std::exp(-t); },
          [](double t) { return std::exp(-t); },
          Growth::bounded(), "exp_neg"};
}

TargetFunction make_sqrt() {
  return {[](double t) { return std::sqrt(t); },
          [](double t) { return 0.5 / std::sqrt(t); },
          [](double t) { return -0.25 / (t * std::sqrt(t)); },
          Growth::polynomial(1.0), "sqrt"};
}

TargetFunction make_x2sin2pix() {
  return {[](double t) { return t * t * std::sin(kTwoPi * t); },
          [](double t) {
            return 2.0 * t * std::sin(kTwoPi * t) + kTwoPi * t * t * std::cos(kTwoPi * t);
          },
          [](double t) {
            return 2.0 * std::sin(kTwoPi * t) + 4.0 * kTwoPi * t * std::cos(kTwoPi * t) -
                   kTwoPi * kTwoPi * t * t * std::sin(kTwoPi * t);
          },
          Growth::polynomial(2.0), "x2sin2pix"};
}

}  // namespace

TargetFunction monomial_function(int m) {
  if (m < 0 || m > 8) throw std::invalid_argument("monomial_function: m must lie in [0, 8]");
  auto powi = [](double t, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= t;
    return r;
  };
  TargetFunction g;
  g.f = [m, powi](double t) { return powi(t, m); };
  g.df = [m, powi](double t) { return m == 0 ? 0.0 : m * powi(t, m - 1); };
  g.d2f = [m, powi](double t) { return m <= 1 ? 0.0 : m * (m - 1) * powi(t, m - 2); };
  g.growth = m == 0 ? Growth::bounded() : Growth::polynomial(m);
  g.name = "t^" + std::to_string(m);
  return g;
}

TargetFunction builtin_function(const std::string& id) {
  if (id == "exp") return make_exp();
  if (id == "exp_neg") return make_exp_neg();
  if (id == "sqrt") return make_sqrt();
  if (id == "x2sin2pix") return make_x2sin2pix();
  if (id.rfind("t^", 0) == 0 && id.size() == 3 && id[2] >= '0' && id[2] <= '8')
    return monomial_function(id[2] - '0');
  std::string known;
  for (const auto& k : builtin_function_ids()) known += (known.empty() ? "" : ", ") + k;
  throw std::invalid_argument("unknown function id '" + id + "' (known: " + known + ")");
}

std::vector<std::string> builtin_function_ids() {
  std::vector<std::string> ids{"exp", "exp_neg", "sqrt", "x2sin2pix"};
  for (int m = 0; m <= 8; ++m) ids.push_back("t^" + std::to_string(m));
  return ids;
}

}  // namespace smdlab
