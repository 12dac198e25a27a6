#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "dirsbm/model.hpp"
#include "dirsbm/network.hpp"

namespace dirsbm {

/// Concentration vector seen by sender i under candidate cluster k: the
/// entry for receiver j is alpha(k, labels[j]), receivers ordered by node
/// index with i removed. labels[i] itself is ignored.
Eigen::VectorXd row_alpha_vector(int i, int k, const std::vector<int>& labels,
                                 const Eigen::MatrixXd& alpha);

/// Observed hybrid log-likelihood: each node contributes the log of a
/// theta-weighted mixture of Dirichlet densities over its own candidate
/// cluster, with all other labels held fixed at `labels`. Computed with
/// log-sum-exp throughout.
double hybrid_loglik(const CompositionMatrix& comp, const DirichletBlockParams& params,
                     const std::vector<int>& labels);

/// Complete-data hybrid log-likelihood at a hard assignment `hard`:
/// sum of the assigned-component log densities plus log mixing weights,
/// with receiver labels taken from `labels`.
double complete_hybrid_loglik(const CompositionMatrix& comp,
                              const DirichletBlockParams& params,
                              const std::vector<int>& labels,
                              const std::vector<int>& hard);

/// Expectation step: n x K row-stochastic matrix with entry (i, k)
/// proportional to theta_k times the Dirichlet density of row i under
/// candidate cluster k, the other labels fixed.
Eigen::MatrixXd e_step(const CompositionMatrix& comp, const DirichletBlockParams& params,
                       const std::vector<int>& labels);

/// Classification step: visits nodes in ascending index order and moves
/// each to the label maximizing the observed hybrid log-likelihood of the
/// whole network, updates taking effect immediately. Ties keep the
/// incumbent label, then prefer the lowest index. Never decreases the
/// objective.
std::vector<int> c_step(const CompositionMatrix& comp, const DirichletBlockParams& params,
                        std::vector<int> labels);

/// Closed-form mixing-proportion update: column means of the
/// responsibilities.
Eigen::VectorXd m_step_theta(const Eigen::MatrixXd& resp);

/// Expected complete-data hybrid log-likelihood as a function of the
/// concentration matrix, holding responsibilities and reference labels
/// fixed (the mixing-weight part is omitted as constant). Fills `grad`
/// when non-null; the gradient is analytic via digamma functions.
double m_step_alpha_objective(const CompositionMatrix& comp, const Eigen::MatrixXd& resp,
                              const std::vector<int>& labels, const Eigen::MatrixXd& alpha,
                              Eigen::MatrixXd* grad = nullptr);

/// Numeric concentration update: maximizes m_step_alpha_objective over the
/// box [1e-6, 50] per entry with a bounded quasi-Newton optimizer warm
/// started at `alpha_init`. The returned objective value never falls below
/// the one at `alpha_init`.
Eigen::MatrixXd m_step_alpha(const CompositionMatrix& comp, const Eigen::MatrixXd& resp,
                             const std::vector<int>& labels, const Eigen::MatrixXd& alpha_init);

/// Matches mixture-component order to hard-label order. Returns p with
/// p[cluster] = component index whose argmax-responsibility nodes agree
/// best with that cluster (maximum-agreement matching; exhaustive for
/// K <= 8). `degenerate` is set when either side has an empty cluster.
std::vector<int> align_cluster_order(const Eigen::MatrixXd& resp,
                                     const std::vector<int>& labels,
                                     bool* degenerate = nullptr);

struct FitOptions {
  int max_iters = 100;
  double tol = 1e-5;          // relative change of the observed hybrid log-likelihood
  std::uint64_t seed = 0;     // drives restarts after an emptied cluster
  int max_rescues = 3;
};

/// Full classification-EM fit at fixed K from a given starting partition.
/// Iterates expectation, classification and maximization steps until the
/// relative change of the observed hybrid log-likelihood drops below tol.
/// Component order is aligned to the final hard partition on exit.
FitResult fit(const CompositionMatrix& comp, int K, const std::vector<int>& init_labels,
              const FitOptions& opts = {});

/// Bounds applied to every concentration entry during the numeric update.
inline constexpr double kAlphaLower = 1e-6;
inline constexpr double kAlphaUpper = 50.0;

}  // namespace dirsbm
