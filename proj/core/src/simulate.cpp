#include "dirsbm/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "dirsbm/dirichlet.hpp"
#include "dirsbm/inference.hpp"
#include "dirsbm/rng.hpp"

namespace dirsbm {

Homogeneity homogeneity_from_string(const std::string& name) {
  if (name == "low") return Homogeneity::kLow;
  if (name == "medium") return Homogeneity::kMedium;
  if (name == "high") return Homogeneity::kHigh;
  throw std::invalid_argument("unknown homogeneity level: " + name);
}

std::string to_string(Homogeneity h) {
  switch (h) {
    case Homogeneity::kLow: return "low";
    case Homogeneity::kMedium: return "medium";
    case Homogeneity::kHigh: return "high";
  }
  return "unknown";
}

Eigen::MatrixXd preset_alpha(int K, Homogeneity level) {
  Eigen::MatrixXd a(K, K);
  if (K == 2) {
    switch (level) {
      case Homogeneity::kLow:    a << 1.0, 0.6, 0.8, 1.5; break;
      case Homogeneity::kMedium: a << 1.0, 0.6, 0.9, 1.4; break;
      case Homogeneity::kHigh:   a << 1.0, 0.8, 0.9, 1.5; break;
    }
    return a;
  }
  if (K == 3) {
    switch (level) {
      case Homogeneity::kLow:
        a << 1.0, 0.6, 0.2,
             0.6, 1.5, 0.5,
             0.3, 0.4, 1.2;
        break;
      case Homogeneity::kMedium:
        a << 1.0, 0.7, 0.5,
             0.9, 1.5, 0.6,
             0.4, 0.5, 1.2;
        break;
      case Homogeneity::kHigh:
        a << 1.0, 0.7, 0.5,
             0.9, 1.3, 0.7,
             0.6, 0.5, 1.2;
        break;
    }
    return a;
  }
  if (K == 5) {
    switch (level) {
      case Homogeneity::kLow:
        a << 1.0, 0.6, 0.2, 0.3, 0.5,
             0.6, 1.5, 0.5, 0.4, 0.7,
             0.3, 0.4, 1.2, 0.5, 0.2,
             0.7, 0.5, 0.3, 1.4, 0.4,
             0.5, 0.7, 0.8, 0.6, 1.7;
        break;
      case Homogeneity::kMedium:
        a << 1.0, 0.7, 0.5, 0.4, 0.6,
             0.9, 1.5, 0.6, 0.5, 0.7,
             0.4, 0.5, 1.2, 0.6, 0.3,
             0.8, 0.6, 0.4, 1.4, 0.5,
             0.5, 0.8, 0.9, 0.7, 1.7;
        break;
      case Homogeneity::kHigh:
        a << 1.0, 0.7, 0.5, 0.4, 0.6,
             0.9, 1.3, 0.7, 0.5, 0.8,
             0.6, 0.7, 1.2, 0.8, 0.5,
             0.8, 0.6, 0.4, 1.4, 0.7,
             0.7, 0.8, 0.9, 0.6, 1.6;
        break;
    }
    return a;
  }
  throw std::invalid_argument("presets exist only for K in {2, 3, 5}");
}

namespace {

void check_config(const SimConfig& c, Eigen::VectorXd& theta) {
  if (c.n < 3) throw std::invalid_argument("need n >= 3");
  if (c.K < 1 || c.K > c.n) throw std::invalid_argument("need 1 <= K <= n");
  if (c.alpha.rows() != c.K || c.alpha.cols() != c.K)
    throw std::invalid_argument("alpha must be K x K");
  if ((c.alpha.array() <= 0.0).any())
    throw std::invalid_argument("alpha entries must be strictly positive");
  if (!(c.p0 >= 0.0 && c.p0 < 1.0)) throw std::invalid_argument("p0 must lie in [0, 1)");
  if (!(c.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (c.theta.size() == 0) {
    theta = Eigen::VectorXd::Constant(c.K, 1.0 / c.K);
  } else {
    if (c.theta.size() != c.K) throw std::invalid_argument("theta must have K entries");
    if ((c.theta.array() <= 0.0).any() || std::abs(c.theta.sum() - 1.0) > 1e-8)
      throw std::invalid_argument("theta must be a positive probability vector");
    theta = c.theta;
  }
}

std::vector<int> draw_labels(int n, int K, const Eigen::VectorXd& theta, Rng& rng) {
  std::vector<int> labels(n);
  for (;;) {
    std::vector<bool> seen(K, false);
    for (int i = 0; i < n; ++i) {
      labels[i] = rng.categorical(theta.data(), K);
      seen[labels[i]] = true;
    }
    bool ok = true;
    for (bool s : seen) ok = ok && s;
    if (ok) return labels;
  }
}

}  // namespace

SimData simulate_dirsbm(const SimConfig& config) {
  Eigen::VectorXd theta;
  check_config(config, theta);
  if (config.p0 != 0.0)
    throw std::invalid_argument("simulate_dirsbm handles only p0 = 0; use the gamma generator");
  Rng rng(config.seed);
  const int n = config.n;
  const std::vector<int> labels = draw_labels(n, config.K, theta, rng);

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd alpha_i = row_alpha_vector(i, labels[i], labels, config.alpha);
    const Eigen::VectorXd row = dirichlet_sample(alpha_i, rng);
    int p = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) x(i, j) = row(p++);
  }
  return SimData{CompositionMatrix(std::move(x)), labels};
}

SimDataRaw simulate_gamma_zeros(const SimConfig& config) {
  Eigen::VectorXd theta;
  check_config(config, theta);
  Rng rng(config.seed);
  const int n = config.n;
  const std::vector<int> labels = draw_labels(n, config.K, theta, rng);

  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        // Floor keeps a small-shape draw that underflowed from masquerading
        // as a zero-weighted edge.
        y(i, j) = std::max(rng.gamma(config.alpha(labels[i], labels[j])), 1e-300);

  // Zero out a fixed share of the off-diagonal cells, chosen uniformly.
  const int cells = n * (n - 1);
  const int zeros = static_cast<int>(std::floor(config.p0 * cells));
  if (zeros > 0) {
    std::vector<std::pair<int, int>> offdiag;
    offdiag.reserve(cells);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) offdiag.emplace_back(i, j);
    // Partial Fisher-Yates over the first `zeros` positions.
    for (int t = 0; t < zeros; ++t) {
      const int pick = t + rng.uniform_int(cells - t);
      std::swap(offdiag[t], offdiag[pick]);
      y(offdiag[t].first, offdiag[t].second) = 0.0;
    }
    for (int t = 0; t < zeros; ++t)
      y(offdiag[t].first, offdiag[t].second) = config.epsilon;
  }

  WeightedNetwork net(y);
  CompositionMatrix comp = to_compositions(net);
  return SimDataRaw{std::move(comp), labels, std::move(net)};
}

}  // namespace dirsbm
