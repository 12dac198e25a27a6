#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "dirsbm/init.hpp"
#include "dirsbm/model.hpp"
#include "dirsbm/network.hpp"

namespace dirsbm {

/// Integrated completed likelihood of a converged fit on n nodes:
/// the complete-data hybrid log-likelihood at the hard assignment minus
/// half K^2 log n(n-1) for the concentration matrix and half (K-1) log n
/// for the free mixing proportions.
double icl(const FitResult& fit, int n);

struct IclEntry {
  int K = 0;
  double icl = 0.0;
  std::optional<FitResult> fit;  // absent when the fit failed
  std::string error;
};

struct IclTable {
  std::vector<IclEntry> entries;  // one per scanned K, ascending
  int best_K = 0;                 // argmax ICL over successful fits; ties go to smaller K
};

/// Multi-start fit per K in [k_min, k_max] and ICL comparison. Failures are
/// recorded per K and skipped in the selection.
IclTable select_k(const CompositionMatrix& comp, int k_min, int k_max,
                  const InitConfig& config);

/// Expected exchange proportions implied by a concentration matrix and
/// cluster sizes. W holds node-to-node expected proportions; V holds
/// cluster-to-cluster total shares and its rows sum to one. A singleton
/// cluster makes its within-cluster share zero, which is flagged.
struct ExchangeMatrices {
  Eigen::MatrixXd W;
  Eigen::MatrixXd V;
  Eigen::VectorXd cluster_sizes;
  bool has_singleton = false;
};

ExchangeMatrices exchange_matrices(const Eigen::MatrixXd& alpha,
                                   const Eigen::VectorXd& cluster_sizes);

}  // namespace dirsbm
