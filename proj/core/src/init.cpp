#include "dirsbm/init.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dirsbm/baselines.hpp"
#include "dirsbm/inference.hpp"
#include "dirsbm/kmeans.hpp"
#include "dirsbm/parallel.hpp"

namespace dirsbm {

InitStrategy init_strategy_from_string(const std::string& name) {
  if (name == "random") return InitStrategy::kRandom;
  if (name == "kmeans") return InitStrategy::kKmeans;
  if (name == "clr-kmeans" || name == "clr_kmeans") return InitStrategy::kClrKmeans;
  if (name == "spectral") return InitStrategy::kSpectral;
  if (name == "bin-sbm" || name == "bin_sbm" || name == "binsbm") return InitStrategy::kBinSbm;
  if (name == "gaus-sbm" || name == "gaus_sbm" || name == "gaussbm") return InitStrategy::kGausSbm;
  throw std::invalid_argument("unknown initialization strategy: " + name);
}

std::string to_string(InitStrategy s) {
  switch (s) {
    case InitStrategy::kRandom: return "random";
    case InitStrategy::kKmeans: return "kmeans";
    case InitStrategy::kClrKmeans: return "clr-kmeans";
    case InitStrategy::kSpectral: return "spectral";
    case InitStrategy::kBinSbm: return "bin-sbm";
    case InitStrategy::kGausSbm: return "gaus-sbm";
  }
  return "unknown";
}

std::vector<int> init_random(int n, int K, Rng& rng) {
  if (K < 1 || K > n) throw std::invalid_argument("need 1 <= K <= n");
  std::vector<int> labels(n);
  for (;;) {
    std::vector<bool> seen(K, false);
    for (int i = 0; i < n; ++i) {
      labels[i] = rng.uniform_int(K);
      seen[labels[i]] = true;
    }
    if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) return labels;
  }
}

std::vector<int> init_kmeans(const Eigen::MatrixXd& data, int K, int restarts, Rng& rng) {
  return kmeans(data, K, restarts, rng).labels;
}

Eigen::MatrixXd star_features(const CompositionMatrix& comp) {
  const int n = comp.size();
  Eigen::MatrixXd f(n, n - 1);
  for (int i = 0; i < n; ++i) f.row(i) = comp.row_star_vector(i).transpose();
  return f;
}

Eigen::MatrixXd clr_star_features(const CompositionMatrix& comp) {
  const ClrMatrix u = clr_transform(comp);
  const int n = comp.size();
  Eigen::MatrixXd f(n, n - 1);
  for (int i = 0; i < n; ++i) {
    int p = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      f(i, p++) = u.values()(i, j);
    }
  }
  return f;
}

std::vector<int> init_spectral(const CompositionMatrix& comp, int K, Rng& rng,
                               int kmeans_restarts) {
  const int n = comp.size();
  if (K < 1 || K > n) throw std::invalid_argument("need 1 <= K <= n");
  const Eigen::MatrixXd sym = 0.5 * (comp.values() + comp.values().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");

  // Pick the K eigenvectors with the largest absolute eigenvalues.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const Eigen::VectorXd& evals = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(evals(a)) > std::abs(evals(b));
  });
  Eigen::MatrixXd embed(n, K);
  for (int c = 0; c < K; ++c) embed.col(c) = solver.eigenvectors().col(order[c]);
  for (int i = 0; i < n; ++i) {
    const double norm = embed.row(i).norm();
    if (norm > 0.0) embed.row(i) /= norm;
  }
  return init_kmeans(embed, K, kmeans_restarts, rng);
}

std::vector<int> init_bin_sbm(const CompositionMatrix& comp, int K, Rng& rng,
                              bool* used_fallback) {
  const int n = comp.size();
  if (used_fallback) *used_fallback = false;
  const Eigen::MatrixXd& x = comp.values();
  const double mean = x.sum() / (static_cast<double>(n) * (n - 1));
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  int ones = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && x(i, j) > mean) {
        adj(i, j) = 1.0;
        ++ones;
      }
  if (ones == 0 || ones == n * (n - 1)) {
    if (used_fallback) *used_fallback = true;
    return init_random(n, K, rng);
  }
  return fit_bernoulli_sbm(adj, K, rng.next_u64()).first;
}

std::vector<int> init_gaus_sbm(const CompositionMatrix& comp, int K, Rng& rng) {
  return fit_gaussian_sbm(comp.values(), K, rng.next_u64()).first;
}

namespace {

std::vector<int> make_start(const CompositionMatrix& comp, int K, const InitConfig& config,
                            Rng& rng, const Eigen::MatrixXd* star, const Eigen::MatrixXd* clr) {
  switch (config.strategy) {
    case InitStrategy::kRandom:
      return init_random(comp.size(), K, rng);
    case InitStrategy::kKmeans:
      return init_kmeans(*star, K, config.kmeans_restarts, rng);
    case InitStrategy::kClrKmeans:
      return init_kmeans(*clr, K, config.kmeans_restarts, rng);
    case InitStrategy::kSpectral:
      return init_spectral(comp, K, rng);
    case InitStrategy::kBinSbm:
      return init_bin_sbm(comp, K, rng);
    case InitStrategy::kGausSbm:
      return init_gaus_sbm(comp, K, rng);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

FitResult multi_start_fit(const CompositionMatrix& comp, int K, const InitConfig& config) {
  if (config.n_starts < 1) throw std::invalid_argument("n_starts must be >= 1");
  if (config.kmeans_restarts < 1) throw std::invalid_argument("kmeans_restarts must be >= 1");

  // Feature matrices shared read-only across starts.
  Eigen::MatrixXd star, clr;
  if (config.strategy == InitStrategy::kKmeans) star = star_features(comp);
  if (config.strategy == InitStrategy::kClrKmeans) clr = clr_star_features(comp);

  const int n_starts = config.n_starts;
  std::vector<FitResult> results(n_starts);
  std::vector<bool> ok(n_starts, false);
  std::vector<std::string> errors(n_starts);

  parallel_for(n_starts, std::max(config.threads, 1), [&](int s) {
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(s)));
    try {
      const std::vector<int> labels0 = make_start(comp, K, config, rng, &star, &clr);
      FitOptions opts;
      opts.max_iters = config.max_iters;
      opts.tol = config.tol;
      opts.seed = mix_seed(config.seed, 0x1000 + static_cast<std::uint64_t>(s));
      results[s] = fit(comp, K, labels0, opts);
      ok[s] = true;
    } catch (const std::exception& e) {
      errors[s] = e.what();
    }
  });

  int best = -1;
  std::vector<double> start_logliks(n_starts,
                                    -std::numeric_limits<double>::infinity());
  for (int s = 0; s < n_starts; ++s) {
    if (!ok[s]) continue;
    start_logliks[s] = results[s].hybrid_loglik;
    if (best < 0 || results[s].hybrid_loglik > results[best].hybrid_loglik) best = s;
  }
  if (best < 0) {
    std::string detail = errors.empty() ? "" : errors[0];
    throw std::runtime_error("all starts failed: " + detail);
  }
  FitResult out = std::move(results[best]);
  out.start_logliks = std::move(start_logliks);
  return out;
}

}  // namespace dirsbm
