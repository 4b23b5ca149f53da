#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

namespace smdlab {

// Gauss rule for the weight s^alpha e^{-s} on (0, inf), normalized so the
// weights sum to one: sum_i w_i p(s_i) = E[p(S)] for S ~ Gamma(alpha+1, 1),
// exact for polynomials p of degree <= 2*order - 1. Nodes ascend.
struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix
// (diag 2k + alpha + 1, offdiag sqrt(k (k + alpha))). Normalized weights are
// the squared first eigenvector components, so Gamma(alpha+1) never appears
// and alpha in the thousands stays finite. order >= 2, alpha > -1.
LaguerreRule laguerre_rule(double alpha, int order);

// (j, order)-keyed rule cache; concurrent readers, synchronized inserts.
class LaguerreCache {
 public:
  std::shared_ptr<const LaguerreRule> get(long long j, int order) const;
  size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  mutable std::map<std::pair<long long, int>, std::shared_ptr<const LaguerreRule>> rules_;
};

// Process-wide cache used by the evaluator.
LaguerreCache& laguerre_cache();

}  // namespace smdlab
