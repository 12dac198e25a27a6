#pragma once

#include <Eigen/Core>
#include <vector>

#include "dirsbm/rng.hpp"

namespace dirsbm {

/// Log density of Dir(alpha) at x. Requires matching dimensions >= 2,
/// strictly positive x summing to one (within 1e-8), and strictly positive
/// concentrations. All work is done in log space.
double dirichlet_log_density(const Eigen::VectorXd& x, const Eigen::VectorXd& alpha);

/// Draw from Dir(alpha) via independent Gamma(alpha_j, 1) variables
/// normalized by their sum. Output lies on the open simplex.
Eigen::VectorXd dirichlet_sample(const Eigen::VectorXd& alpha, Rng& rng);

/// Sums the parts of x over `groups`, which must partition 0..d-1.
/// For a Dirichlet draw the result is again Dirichlet with summed
/// concentrations, which is what makes cluster-level aggregation exact.
Eigen::VectorXd aggregate_parts(const Eigen::VectorXd& x,
                                const std::vector<std::vector<int>>& groups);

}  // namespace dirsbm
