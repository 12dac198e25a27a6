#include "dirsbm/selection.hpp"

#include <cmath>
#include <stdexcept>

namespace dirsbm {

double icl(const FitResult& fit, int n) {
  const int K = fit.params.num_clusters();
  const double edge_penalty =
      0.5 * K * K * std::log(static_cast<double>(n) * (n - 1));
  const double mixing_penalty = 0.5 * (K - 1) * std::log(static_cast<double>(n));
  return fit.complete_loglik - edge_penalty - mixing_penalty;
}

IclTable select_k(const CompositionMatrix& comp, int k_min, int k_max,
                  const InitConfig& config) {
  if (k_min < 1 || k_max < k_min) throw std::invalid_argument("invalid K range");
  IclTable table;
  for (int K = k_min; K <= k_max; ++K) {
    IclEntry entry;
    entry.K = K;
    InitConfig cfg = config;
    cfg.seed = mix_seed(config.seed, 0x4b00 + static_cast<std::uint64_t>(K));
    try {
      FitResult fr = multi_start_fit(comp, K, cfg);
      entry.icl = icl(fr, comp.size());
      entry.fit = std::move(fr);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    table.entries.push_back(std::move(entry));
  }
  int best = -1;
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    if (!e.fit) continue;
    if (best < 0 || e.icl > table.entries[best].icl) best = static_cast<int>(i);
  }
  if (best < 0) throw std::runtime_error("no K in the range produced a successful fit");
  table.best_K = table.entries[best].K;
  return table;
}

ExchangeMatrices exchange_matrices(const Eigen::MatrixXd& alpha,
                                   const Eigen::VectorXd& cluster_sizes) {
  const int K = static_cast<int>(alpha.rows());
  if (alpha.cols() != K) throw std::invalid_argument("concentration matrix must be square");
  if (cluster_sizes.size() != K)
    throw std::invalid_argument("cluster size vector does not match K");
  if ((alpha.array() <= 0.0).any())
    throw std::invalid_argument("concentrations must be strictly positive");
  double n = 0.0;
  for (int k = 0; k < K; ++k) {
    if (cluster_sizes(k) < 1.0) throw std::invalid_argument("cluster sizes must be >= 1");
    n += cluster_sizes(k);
  }
  if (n < 3.0) throw std::invalid_argument("need at least 3 nodes in total");

  ExchangeMatrices out;
  out.W.resize(K, K);
  out.V.resize(K, K);
  out.cluster_sizes = cluster_sizes;
  for (int k = 0; k < K; ++k) {
    double denom = (cluster_sizes(k) - 1.0) * alpha(k, k);
    for (int g = 0; g < K; ++g)
      if (g != k) denom += cluster_sizes(g) * alpha(k, g);
    if (!(denom > 0.0)) throw std::invalid_argument("zero denominator in exchange shares");
    for (int h = 0; h < K; ++h) {
      out.W(k, h) = alpha(k, h) / denom;
      out.V(k, h) = h == k ? (cluster_sizes(k) - 1.0) * alpha(k, k) / denom
                           : cluster_sizes(h) * alpha(k, h) / denom;
    }
    if (cluster_sizes(k) < 2.0) out.has_singleton = true;
  }
  return out;
}

}  // namespace dirsbm
