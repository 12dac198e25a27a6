#pragma once

#include <Eigen/Core>
#include <vector>

namespace dirsbm {

/// Adjusted Rand index between two partitions of the same items. Label
/// values are arbitrary; the index is 1 for partitions identical up to
/// relabeling and has expectation 0 under chance.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

/// Frobenius distance between a true block-parameter matrix and an
/// estimate, after aligning the estimate's cluster order to the truth
/// (best simultaneous row-and-column permutation; exhaustive for K <= 8,
/// greedy beyond).
double frobenius_distance(const Eigen::MatrixXd& truth, const Eigen::MatrixXd& estimate);

}  // namespace dirsbm
