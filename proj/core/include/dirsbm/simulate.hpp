#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "dirsbm/network.hpp"

namespace dirsbm {

enum class Homogeneity { kLow, kMedium, kHigh };

Homogeneity homogeneity_from_string(const std::string& name);
std::string to_string(Homogeneity h);

/// Benchmark concentration matrices for K in {2, 3, 5} at three levels of
/// within/between-cluster parameter homogeneity. Higher homogeneity means
/// the clusters are harder to separate.
Eigen::MatrixXd preset_alpha(int K, Homogeneity level);

struct SimConfig {
  int n = 0;
  int K = 0;
  Eigen::MatrixXd alpha;    // K x K, strictly positive
  Eigen::VectorXd theta;    // defaults to uniform when empty
  double p0 = 0.0;          // share of off-diagonal weights zeroed, in [0, 1)
  double epsilon = 0.001;   // replacement value for the zeroed weights
  std::uint64_t seed = 0;
};

struct SimData {
  CompositionMatrix comp;
  std::vector<int> labels;  // ground truth, 0-based
};

struct SimDataRaw {
  CompositionMatrix comp;
  std::vector<int> labels;
  WeightedNetwork network;  // raw weights after zeroing and replacement
};

/// Draws labels from the mixing proportions (resampled until every cluster
/// is nonempty) and each node's composition row from the Dirichlet whose
/// concentration vector is set by the sender and receiver labels.
SimData simulate_dirsbm(const SimConfig& config);

/// Gamma-construction generator with zero-weighted edges: raw weights
/// y_ij ~ Gamma(alpha(c_i, c_j), 1), a uniformly chosen share p0 of the
/// off-diagonal entries set to zero, zeros replaced by epsilon, rows
/// normalized to compositions. With p0 = 0 the compositions are exact
/// draws from the same model as simulate_dirsbm.
SimDataRaw simulate_gamma_zeros(const SimConfig& config);

}  // namespace dirsbm
