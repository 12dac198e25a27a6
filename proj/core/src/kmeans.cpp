#include "dirsbm/kmeans.hpp"

#include <limits>
#include <stdexcept>

namespace dirsbm {

namespace {

Eigen::MatrixXd seed_plus_plus(const Eigen::MatrixXd& data, int k, Rng& rng) {
  const int n = static_cast<int>(data.rows());
  Eigen::MatrixXd centers(k, data.cols());
  centers.row(0) = data.row(rng.uniform_int(n));
  Eigen::VectorXd d2 =
      (data.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    int pick;
    if (total <= 0.0) {
      pick = rng.uniform_int(n);  // all points coincide with chosen centers
    } else {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        acc += d2(i);
        if (target <= acc) {
          pick = i;
          break;
        }
      }
    }
    centers.row(c) = data.row(pick);
    d2 = d2.cwiseMin(
        (data.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

KmeansResult run_once(const Eigen::MatrixXd& data, int k, Rng& rng, int max_iters) {
  const int n = static_cast<int>(data.rows());
  Eigen::MatrixXd centers = seed_plus_plus(data, k, rng);
  std::vector<int> labels(n, 0);
  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (data.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (data.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
    }
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, data.cols());
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(k);
    for (int i = 0; i < n; ++i) {
      sums.row(labels[i]) += data.row(i);
      counts(labels[i]) += 1;
    }
    for (int c = 0; c < k; ++c) {
      if (counts(c) == 0) {
        // Move the point farthest from its center into the empty cluster.
        int far = 0;
        double far_d = -1.0;
        for (int i = 0; i < n; ++i) {
          const double d = (data.row(i) - centers.row(labels[i])).squaredNorm();
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centers.row(c) = data.row(far);
        labels[far] = c;
        changed = true;
      } else {
        centers.row(c) = sums.row(c) / counts(c);
      }
    }
    if (!changed) break;
  }
  KmeansResult res;
  res.labels = labels;
  res.centers = centers;
  res.inertia = 0.0;
  for (int i = 0; i < n; ++i)
    res.inertia += (data.row(i) - centers.row(labels[i])).squaredNorm();
  return res;
}

bool all_nonempty(const std::vector<int>& labels, int k) {
  std::vector<bool> seen(k, false);
  for (int l : labels) seen[l] = true;
  for (bool s : seen)
    if (!s) return false;
  return true;
}

}  // namespace

KmeansResult kmeans(const Eigen::MatrixXd& data, int k, int restarts, Rng& rng,
                    int max_iters) {
  const int n = static_cast<int>(data.rows());
  if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
  if (k > n) throw std::invalid_argument("kmeans: k exceeds number of points");
  if (restarts < 1) throw std::invalid_argument("kmeans: restarts must be >= 1");
  if (!data.allFinite()) throw std::invalid_argument("kmeans: data must be finite");

  KmeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    KmeansResult cur = run_once(data, k, rng, max_iters);
    for (int retry = 0; retry < 5 && !all_nonempty(cur.labels, k); ++retry)
      cur = run_once(data, k, rng, max_iters);
    if (cur.inertia < best.inertia) best = std::move(cur);
  }
  return best;
}

}  // namespace dirsbm
