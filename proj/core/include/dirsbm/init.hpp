#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "dirsbm/model.hpp"
#include "dirsbm/network.hpp"
#include "dirsbm/rng.hpp"

namespace dirsbm {

enum class InitStrategy { kRandom, kKmeans, kClrKmeans, kSpectral, kBinSbm, kGausSbm };

InitStrategy init_strategy_from_string(const std::string& name);
std::string to_string(InitStrategy s);

struct InitConfig {
  InitStrategy strategy = InitStrategy::kRandom;
  int n_starts = 5;          // 5 suits simulations; 20 is recommended for real data
  int kmeans_restarts = 50;
  std::uint64_t seed = 0;
  int threads = 1;
  int max_iters = 100;
  double tol = 1e-5;
};

/// Uniform random partition with every cluster nonempty.
std::vector<int> init_random(int n, int K, Rng& rng);

/// Best-of-restarts k-means labels on the rows of `data`.
std::vector<int> init_kmeans(const Eigen::MatrixXd& data, int K, int restarts, Rng& rng);

/// Spectral start: eigendecomposition of the symmetrized composition
/// matrix, top-K eigenvectors by eigenvalue magnitude as the embedding,
/// rows normalized, then k-means.
std::vector<int> init_spectral(const CompositionMatrix& comp, int K, Rng& rng,
                               int kmeans_restarts = 10);

/// Binarizes at the mean off-diagonal weight and fits a Bernoulli SBM.
/// Falls back to a random partition when the binary matrix is all zeros or
/// all ones; `used_fallback` reports that when non-null.
std::vector<int> init_bin_sbm(const CompositionMatrix& comp, int K, Rng& rng,
                              bool* used_fallback = nullptr);

/// Gaussian SBM fitted directly to the raw compositions.
std::vector<int> init_gaus_sbm(const CompositionMatrix& comp, int K, Rng& rng);

/// Rows of the composition matrix with the diagonal removed (n x (n-1)),
/// the feature matrix used by the k-means starts.
Eigen::MatrixXd star_features(const CompositionMatrix& comp);

/// Same for the CLR-transformed matrix.
Eigen::MatrixXd clr_star_features(const CompositionMatrix& comp);

/// Runs `fit` from n_starts partitions produced by the configured strategy
/// (each start draws its own substream of the seed) and keeps the result
/// with the highest observed hybrid log-likelihood. Per-start finals are
/// recorded in the result. Starts run concurrently when threads > 1.
FitResult multi_start_fit(const CompositionMatrix& comp, int K, const InitConfig& config);

}  // namespace dirsbm
