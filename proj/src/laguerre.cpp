#include "smdlab/laguerre.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace smdlab {

LaguerreRule laguerre_rule(double alpha, int order) {
  if (!(alpha > -1.0) || !std::isfinite(alpha))
    throw std::domain_error("laguerre_rule: alpha must exceed -1");
  if (order < 2 || order > 4096)
    throw std::domain_error("laguerre_rule: order must lie in [2, 4096]");

  Eigen::VectorXd diag(order), sub(order - 1);
  for (int k = 0; k < order; ++k) diag[k] = 2.0 * k + alpha + 1.0;
  for (int k = 1; k < order; ++k) sub[k - 1] = std::sqrt(k * (k + alpha));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("laguerre_rule: tridiagonal eigensolver failed");

  LaguerreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  double wsum = 0.0;
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = es.eigenvalues()[i];
    double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = v0 * v0;
    wsum += rule.weights[i];
  }
  if (!(std::abs(wsum - 1.0) < 1e-8))
    throw std::runtime_error("laguerre_rule: weight normalization drifted");
  for (double& w : rule.weights) w /= wsum;
  return rule;
}

std::shared_ptr<const LaguerreRule> LaguerreCache::get(long long j, int order) const {
  {
    std::shared_lock lock(mu_);
    auto it = rules_.find({j, order});
    if (it != rules_.end()) return it->second;
  }
  auto rule = std::make_shared<const LaguerreRule>(
      laguerre_rule(static_cast<double>(j), order));
  std::unique_lock lock(mu_);
  auto [it, inserted] = rules_.emplace(std::make_pair(j, order), rule);
  return it->second;  // first writer wins on a race
}

size_t LaguerreCache::size() const {
  std::shared_lock lock(mu_);
  return rules_.size();
}

LaguerreCache& laguerre_cache() {
  static LaguerreCache cache;
  return cache;
}

}  // namespace smdlab
