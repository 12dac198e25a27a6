#pragma once

#include <Eigen/Core>
#include <functional>

namespace dirsbm {

/// Objective callback: returns f(x) and fills `grad` with the gradient.
using ObjectiveFn = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

struct BoundedMinimizeOptions {
  int max_iters = 200;
  int history = 8;          // L-BFGS memory
  double pg_tol = 1e-7;     // inf-norm of the projected gradient
  double rel_f_tol = 1e-12; // relative objective change
};

struct BoundedMinimizeResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int n_iters = 0;
  bool converged = false;
};

/// Box-constrained minimization with limited-memory BFGS directions,
/// projection onto the box, and Armijo backtracking. Steps are accepted only
/// when they decrease the objective, so the returned value never exceeds
/// f(x0). If the quasi-Newton direction yields no decrease the memory is
/// dropped and a projected-gradient step is tried before giving up.
BoundedMinimizeResult minimize_bounded(const ObjectiveFn& fn, Eigen::VectorXd x0,
                                       const Eigen::VectorXd& lower,
                                       const Eigen::VectorXd& upper,
                                       const BoundedMinimizeOptions& opts = {});

}  // namespace dirsbm
