#include "dirsbm/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dirsbm/rng.hpp"

namespace dirsbm {

namespace {

constexpr double kSigmaFloor = 1e-10;
constexpr int kMaxSweeps = 100;
constexpr int kStarts = 5;
constexpr int kMaxRunRetries = 10;

struct EmptyClusterError : std::runtime_error {
  EmptyClusterError() : std::runtime_error("cluster emptied in baseline fit") {}
};

std::vector<int> random_partition(int n, int K, Rng& rng) {
  std::vector<int> labels(n);
  for (;;) {
    std::vector<bool> seen(K, false);
    for (int i = 0; i < n; ++i) {
      labels[i] = rng.uniform_int(K);
      seen[labels[i]] = true;
    }
    bool ok = true;
    for (bool s : seen) ok = ok && s;
    if (ok) return labels;
  }
}

Eigen::VectorXd cluster_counts(const std::vector<int>& labels, int K) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(K);
  for (int l : labels) c(l) += 1.0;
  return c;
}

// ---------------------------------------------------------------------------
// Gaussian blocks

GaussianSbmParams gaussian_m_step(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                                  int K) {
  const int n = static_cast<int>(x.rows());
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(K, K);
  Eigen::MatrixXd cnts = Eigen::MatrixXd::Zero(K, K);
  double grand_sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      sums(labels[i], labels[j]) += x(i, j);
      cnts(labels[i], labels[j]) += 1.0;
      grand_sum += x(i, j);
    }
  const double grand_mean = grand_sum / (static_cast<double>(n) * (n - 1));
  GaussianSbmParams p;
  p.mu = Eigen::MatrixXd::Constant(K, K, grand_mean);
  for (int k = 0; k < K; ++k)
    for (int h = 0; h < K; ++h)
      if (cnts(k, h) > 0.0) p.mu(k, h) = sums(k, h) / cnts(k, h);
  double ss = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double r = x(i, j) - p.mu(labels[i], labels[j]);
      ss += r * r;
    }
  p.sigma2 = std::max(ss / (static_cast<double>(n) * (n - 1)), kSigmaFloor);
  p.theta = cluster_counts(labels, K) / n;
  return p;
}

double gaussian_complete_loglik(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                                const GaussianSbmParams& p) {
  const int n = static_cast<int>(x.rows());
  const double log_norm = -0.5 * std::log(2.0 * M_PI * p.sigma2);
  const double inv2s = 0.5 / p.sigma2;
  double ll = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double r = x(i, j) - p.mu(labels[i], labels[j]);
      ll += log_norm - inv2s * r * r;
    }
  for (int i = 0; i < n; ++i) ll += std::log(std::max(p.theta(labels[i]), 1e-300));
  return ll;
}

/// One sequential reassignment pass; returns whether any label moved.
bool gaussian_sweep(const Eigen::MatrixXd& x, std::vector<int>& labels, int K,
                    const GaussianSbmParams& p) {
  const int n = static_cast<int>(x.rows());
  const double inv2s = 0.5 / p.sigma2;
  bool changed = false;
  for (int i = 0; i < n; ++i) {
    int best_k = labels[i];
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k) {
      double score = std::log(std::max(p.theta(k), 1e-300));
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double r_out = x(i, j) - p.mu(k, labels[j]);
        const double r_in = x(j, i) - p.mu(labels[j], k);
        score -= inv2s * (r_out * r_out + r_in * r_in);
      }
      if (k == labels[i] ? score >= best : score > best) {
        best = score;
        best_k = k;
      }
    }
    if (best_k != labels[i]) {
      labels[i] = best_k;
      changed = true;
    }
  }
  return changed;
}

std::pair<std::vector<int>, GaussianSbmParams> gaussian_run(const Eigen::MatrixXd& x, int K,
                                                            Rng& rng) {
  const int n = static_cast<int>(x.rows());
  std::vector<int> labels = random_partition(n, K, rng);
  GaussianSbmParams p;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    p = gaussian_m_step(x, labels, K);
    const bool changed = gaussian_sweep(x, labels, K, p);
    if ((cluster_counts(labels, K).array() < 0.5).any()) throw EmptyClusterError();
    if (!changed) break;
  }
  p = gaussian_m_step(x, labels, K);
  return {labels, p};
}

// ---------------------------------------------------------------------------
// Bernoulli blocks

BernoulliSbmParams bernoulli_m_step(const Eigen::MatrixXd& adj, const std::vector<int>& labels,
                                    int K) {
  const int n = static_cast<int>(adj.rows());
  Eigen::MatrixXd ones = Eigen::MatrixXd::Zero(K, K);
  Eigen::MatrixXd cnts = Eigen::MatrixXd::Zero(K, K);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      ones(labels[i], labels[j]) += adj(i, j);
      cnts(labels[i], labels[j]) += 1.0;
    }
  BernoulliSbmParams p;
  p.pi = (ones.array() + 0.5) / (cnts.array() + 1.0);  // stays inside (0, 1)
  p.theta = cluster_counts(labels, K) / n;
  return p;
}

double bernoulli_complete_loglik(const Eigen::MatrixXd& adj, const std::vector<int>& labels,
                                 const BernoulliSbmParams& p) {
  const int n = static_cast<int>(adj.rows());
  const Eigen::MatrixXd logp = p.pi.array().log();
  const Eigen::MatrixXd log1p = (1.0 - p.pi.array()).log();
  double ll = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      ll += adj(i, j) > 0.5 ? logp(labels[i], labels[j]) : log1p(labels[i], labels[j]);
    }
  for (int i = 0; i < n; ++i) ll += std::log(std::max(p.theta(labels[i]), 1e-300));
  return ll;
}

bool bernoulli_sweep(const Eigen::MatrixXd& adj, std::vector<int>& labels, int K,
                     const BernoulliSbmParams& p) {
  const int n = static_cast<int>(adj.rows());
  const Eigen::MatrixXd logp = p.pi.array().log();
  const Eigen::MatrixXd log1p = (1.0 - p.pi.array()).log();
  bool changed = false;
  for (int i = 0; i < n; ++i) {
    int best_k = labels[i];
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k) {
      double score = std::log(std::max(p.theta(k), 1e-300));
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        score += adj(i, j) > 0.5 ? logp(k, labels[j]) : log1p(k, labels[j]);
        score += adj(j, i) > 0.5 ? logp(labels[j], k) : log1p(labels[j], k);
      }
      if (k == labels[i] ? score >= best : score > best) {
        best = score;
        best_k = k;
      }
    }
    if (best_k != labels[i]) {
      labels[i] = best_k;
      changed = true;
    }
  }
  return changed;
}

std::pair<std::vector<int>, BernoulliSbmParams> bernoulli_run(const Eigen::MatrixXd& adj, int K,
                                                              Rng& rng) {
  const int n = static_cast<int>(adj.rows());
  std::vector<int> labels = random_partition(n, K, rng);
  BernoulliSbmParams p;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    p = bernoulli_m_step(adj, labels, K);
    const bool changed = bernoulli_sweep(adj, labels, K, p);
    if ((cluster_counts(labels, K).array() < 0.5).any()) throw EmptyClusterError();
    if (!changed) break;
  }
  p = bernoulli_m_step(adj, labels, K);
  return {labels, p};
}

void check_square(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 3)
    throw std::invalid_argument("matrix must be square with at least 3 rows");
}

}  // namespace

std::pair<std::vector<int>, GaussianSbmParams> fit_gaussian_sbm(const Eigen::MatrixXd& data,
                                                                int K, std::uint64_t seed) {
  check_square(data);
  if (!data.allFinite()) throw std::invalid_argument("data must be finite");
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  const int n = static_cast<int>(data.rows());
  if (K > n) throw std::invalid_argument("K exceeds node count");

  if (K == 1) {
    std::vector<int> labels(n, 0);
    return {labels, gaussian_m_step(data, labels, 1)};
  }

  Rng rng(seed);
  double best_ll = -std::numeric_limits<double>::infinity();
  std::pair<std::vector<int>, GaussianSbmParams> best;
  bool found = false;
  for (int s = 0; s < kStarts; ++s) {
    Rng run_rng = rng.fork(s);
    for (int attempt = 0; attempt < kMaxRunRetries; ++attempt) {
      try {
        auto run = gaussian_run(data, K, run_rng);
        const double ll = gaussian_complete_loglik(data, run.first, run.second);
        if (!found || ll > best_ll) {
          best_ll = ll;
          best = std::move(run);
          found = true;
        }
        break;
      } catch (const EmptyClusterError&) {
        continue;
      }
    }
  }
  if (!found) throw std::runtime_error("all Gaussian SBM starts emptied a cluster");
  return best;
}

std::pair<std::vector<int>, BernoulliSbmParams> fit_bernoulli_sbm(const Eigen::MatrixXd& adj,
                                                                  int K, std::uint64_t seed) {
  check_square(adj);
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  const int n = static_cast<int>(adj.rows());
  if (K > n) throw std::invalid_argument("K exceeds node count");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && adj(i, j) != 0.0 && adj(i, j) != 1.0)
        throw std::invalid_argument("adjacency entries must be 0 or 1");

  if (K == 1) {
    std::vector<int> labels(n, 0);
    return {labels, bernoulli_m_step(adj, labels, 1)};
  }

  Rng rng(seed);
  double best_ll = -std::numeric_limits<double>::infinity();
  std::pair<std::vector<int>, BernoulliSbmParams> best;
  bool found = false;
  for (int s = 0; s < kStarts; ++s) {
    Rng run_rng = rng.fork(s);
    for (int attempt = 0; attempt < kMaxRunRetries; ++attempt) {
      try {
        auto run = bernoulli_run(adj, K, run_rng);
        const double ll = bernoulli_complete_loglik(adj, run.first, run.second);
        if (!found || ll > best_ll) {
          best_ll = ll;
          best = std::move(run);
          found = true;
        }
        break;
      } catch (const EmptyClusterError&) {
        continue;
      }
    }
  }
  if (!found) throw std::runtime_error("all Bernoulli SBM starts emptied a cluster");
  return best;
}

std::vector<int> clr_gaussian_pipeline(const CompositionMatrix& comp, int K,
                                       std::uint64_t seed) {
  const ClrMatrix u = clr_transform(comp);
  return fit_gaussian_sbm(u.values(), K, seed).first;
}

}  // namespace dirsbm
