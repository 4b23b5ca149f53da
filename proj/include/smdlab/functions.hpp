#pragma once

#include <functional>
#include <string>
#include <vector>

namespace smdlab {

// Growth envelope of a target function on [0, inf); the evaluator uses it to
// reject integrals that do not converge (exponential rate a needs a < u_n).
struct Growth {
  enum class Kind { bounded, polynomial, exponential };
  Kind kind = Kind::bounded;
  double amount = 0.0;  // degree (polynomial) or rate a (exponential)

  static Growth bounded() { return {Kind::bounded, 0.0}; }
  static Growth polynomial(double degree) { return {Kind::polynomial, degree}; }
  static Growth exponential(double rate) { return {Kind::exponential, rate}; }
};

struct TargetFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;   // optional, analysis checks require it
  std::function<double(double)> d2f;  // optional
  Growth growth;
  std::string name;
};

// Registry ids: exp, exp_neg, sqrt, x2sin2pix, t^0 .. t^8.
// Throws std::invalid_argument for unknown ids.
TargetFunction builtin_function(const std::string& id);
std::vector<std::string> builtin_function_ids();
TargetFunction monomial_function(int m);  // t^m, 0 <= m <= 8

}  // namespace smdlab
