#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "dirsbm/network.hpp"

namespace dirsbm {

/// Directed Gaussian SBM: edge (i, j) is N(mu(c_i, c_j), sigma2) with one
/// shared variance across blocks.
struct GaussianSbmParams {
  Eigen::MatrixXd mu;      // K x K block means
  double sigma2 = 1.0;     // shared variance, floored at 1e-10
  Eigen::VectorXd theta;   // K mixing proportions
};

/// Directed Bernoulli SBM on a binary adjacency matrix.
struct BernoulliSbmParams {
  Eigen::MatrixXd pi;      // K x K connection probabilities, inside (0, 1)
  Eigen::VectorXd theta;
};

/// Classification-EM fit of the directed Gaussian SBM on an n x n matrix
/// whose diagonal is ignored. Five random starts, best by complete-data
/// log-likelihood; runs that empty a cluster are restarted.
std::pair<std::vector<int>, GaussianSbmParams> fit_gaussian_sbm(const Eigen::MatrixXd& data,
                                                                int K, std::uint64_t seed);

/// Classification-EM fit of the directed Bernoulli SBM. Off-diagonal
/// entries must be 0 or 1. Block rates are Laplace-smoothed by half a
/// success and half a failure so they stay strictly inside (0, 1).
std::pair<std::vector<int>, BernoulliSbmParams> fit_bernoulli_sbm(const Eigen::MatrixXd& adj,
                                                                  int K, std::uint64_t seed);

/// CLR transform followed by a Gaussian SBM fit on the transformed matrix.
std::vector<int> clr_gaussian_pipeline(const CompositionMatrix& comp, int K,
                                       std::uint64_t seed);

}  // namespace dirsbm
