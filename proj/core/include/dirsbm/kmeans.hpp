#pragma once

#include <Eigen/Core>
#include <vector>

#include "dirsbm/rng.hpp"

namespace dirsbm {

struct KmeansResult {
  std::vector<int> labels;   // 0-based, all k clusters nonempty
  Eigen::MatrixXd centers;   // k x d
  double inertia = 0.0;      // within-cluster sum of squares
};

/// Lloyd's algorithm with k-means++ seeding, best of `restarts` runs by
/// within-cluster sum of squares. A run whose final labeling leaves a
/// cluster empty is reseeded. Rows of `data` are the observations.
KmeansResult kmeans(const Eigen::MatrixXd& data, int k, int restarts, Rng& rng,
                    int max_iters = 100);

}  // namespace dirsbm
