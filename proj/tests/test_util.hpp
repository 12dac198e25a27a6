#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "dirsbm/dirichlet.hpp"
#include "dirsbm/inference.hpp"
#include "dirsbm/model.hpp"
#include "dirsbm/network.hpp"
#include "dirsbm/rng.hpp"

namespace test_util {

/// Random strictly positive composition matrix (zero diagonal, unit rows).
inline dirsbm::CompositionMatrix random_compositions(int n, dirsbm::Rng& rng) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) {
        x(i, j) = rng.uniform(0.05, 1.0);
        s += x(i, j);
      }
    for (int j = 0; j < n; ++j)
      if (j != i) x(i, j) /= s;
  }
  return dirsbm::CompositionMatrix(std::move(x));
}

/// Random block parameters with strictly positive concentrations.
inline dirsbm::DirichletBlockParams random_params(int K, dirsbm::Rng& rng) {
  dirsbm::DirichletBlockParams p;
  p.alpha.resize(K, K);
  for (int k = 0; k < K; ++k)
    for (int h = 0; h < K; ++h) p.alpha(k, h) = rng.uniform(0.3, 3.0);
  Eigen::VectorXd t(K);
  double s = 0.0;
  for (int k = 0; k < K; ++k) {
    t(k) = rng.uniform(0.2, 1.0);
    s += t(k);
  }
  p.theta = t / s;
  return p;
}

inline std::vector<int> random_labels(int n, int K, dirsbm::Rng& rng) {
  std::vector<int> labels(n);
  for (;;) {
    std::vector<bool> seen(K, false);
    for (int i = 0; i < n; ++i) {
      labels[i] = rng.uniform_int(K);
      seen[labels[i]] = true;
    }
    bool ok = true;
    for (bool b : seen) ok = ok && b;
    if (ok) return labels;
  }
}

/// Straightforward re-evaluation of the observed hybrid log-likelihood:
/// builds each node's concentration vector element by element and sums
/// theta-weighted Dirichlet densities. Independent of the library's cached
/// evaluation path.
inline double brute_hybrid_loglik(const dirsbm::CompositionMatrix& comp,
                                  const dirsbm::DirichletBlockParams& params,
                                  const std::vector<int>& labels) {
  const int n = comp.size();
  const int K = params.num_clusters();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd xi = comp.row_star_vector(i);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(K);
    for (int k = 0; k < K; ++k) {
      Eigen::VectorXd alpha(n - 1);
      int p = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) alpha(p++) = params.alpha(k, labels[j]);
      terms[k] = std::log(params.theta(k)) + dirsbm::dirichlet_log_density(xi, alpha);
      best = std::max(best, terms[k]);
    }
    double acc = 0.0;
    for (int k = 0; k < K; ++k) acc += std::exp(terms[k] - best);
    total += best + std::log(acc);
  }
  return total;
}

}  // namespace test_util
