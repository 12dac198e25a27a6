#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace dirsbm {

/// Block-level parameters of the Dirichlet SBM: a K x K matrix of strictly
/// positive concentrations (rows index the sender's cluster, columns the
/// receiver's) and the cluster mixing proportions.
struct DirichletBlockParams {
  Eigen::MatrixXd alpha;  // K x K, entries > 0
  Eigen::VectorXd theta;  // K, nonnegative, sums to one

  int num_clusters() const { return static_cast<int>(theta.size()); }
};

/// Hard labels plus the soft assignment probabilities from the last
/// expectation step. Labels are 0-based cluster indices.
struct ClusterState {
  std::vector<int> labels;  // size n, values in 0..K-1
  Eigen::MatrixXd resp;     // n x K, rows sum to one

  /// One-hot matrix implied by the hard labels.
  Eigen::MatrixXd one_hot(int K) const {
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), K);
    for (std::size_t i = 0; i < labels.size(); ++i) z(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
    return z;
  }
};

struct FitResult {
  DirichletBlockParams params;
  ClusterState state;
  double hybrid_loglik = 0.0;          // observed, at convergence
  double complete_loglik = 0.0;        // complete-data value at the hard assignment
  std::vector<double> loglik_trace;    // observed value per iteration
  int n_iters = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  int rescues = 0;                     // restarts forced by an emptied cluster
  std::vector<double> start_logliks;   // per-start finals when multi-started
};

}  // namespace dirsbm
