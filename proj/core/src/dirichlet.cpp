#include "dirsbm/dirichlet.hpp"

#include <cmath>
#include <stdexcept>

namespace dirsbm {

double dirichlet_log_density(const Eigen::VectorXd& x, const Eigen::VectorXd& alpha) {
  const auto d = x.size();
  if (d != alpha.size()) throw std::invalid_argument("x and alpha dimensions differ");
  if (d < 2) throw std::invalid_argument("Dirichlet needs at least 2 parts");
  double sum_x = 0.0, sum_a = 0.0, val = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(alpha(j) > 0.0)) throw std::invalid_argument("concentrations must be > 0");
    if (!(x(j) > 0.0)) throw std::invalid_argument("x must be strictly positive");
    sum_x += x(j);
    sum_a += alpha(j);
    val += (alpha(j) - 1.0) * std::log(x(j)) - std::lgamma(alpha(j));
  }
  if (std::abs(sum_x - 1.0) > 1e-8) throw std::invalid_argument("x does not sum to one");
  val += std::lgamma(sum_a);
  if (!std::isfinite(val)) throw std::runtime_error("non-finite Dirichlet log density");
  return val;
}

Eigen::VectorXd dirichlet_sample(const Eigen::VectorXd& alpha, Rng& rng) {
  const auto d = alpha.size();
  if (d < 2) throw std::invalid_argument("Dirichlet needs at least 2 parts");
  Eigen::VectorXd g(d);
  double total = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(alpha(j) > 0.0)) throw std::invalid_argument("concentrations must be > 0");
    g(j) = rng.gamma(alpha(j));
    total += g(j);
  }
  // Tiny shapes can underflow to zero; nudge onto the open simplex.
  for (Eigen::Index j = 0; j < d; ++j) {
    if (g(j) <= 0.0) g(j) = 1e-300;
  }
  total = g.sum();
  return g / total;
}

Eigen::VectorXd aggregate_parts(const Eigen::VectorXd& x,
                                const std::vector<std::vector<int>>& groups) {
  const auto d = x.size();
  std::vector<bool> used(d, false);
  Eigen::VectorXd out(static_cast<Eigen::Index>(groups.size()));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double s = 0.0;
    for (int idx : groups[g]) {
      if (idx < 0 || idx >= d) throw std::invalid_argument("group index out of range");
      if (used[idx]) throw std::invalid_argument("group index repeated");
      used[idx] = true;
      s += x(idx);
    }
    out(static_cast<Eigen::Index>(g)) = s;
  }
  for (Eigen::Index j = 0; j < d; ++j)
    if (!used[j]) throw std::invalid_argument("groups do not cover every index");
  return out;
}

}  // namespace dirsbm
