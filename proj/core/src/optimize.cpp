#include "dirsbm/optimize.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace dirsbm {

namespace {

Eigen::VectorXd clamp(const Eigen::VectorXd& x, const Eigen::VectorXd& lo,
                      const Eigen::VectorXd& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace

BoundedMinimizeResult minimize_bounded(const ObjectiveFn& fn, Eigen::VectorXd x0,
                                       const Eigen::VectorXd& lower,
                                       const Eigen::VectorXd& upper,
                                       const BoundedMinimizeOptions& opts) {
  const auto dim = x0.size();
  if (lower.size() != dim || upper.size() != dim)
    throw std::invalid_argument("bound dimensions do not match x0");
  if (((upper - lower).array() < 0).any())
    throw std::invalid_argument("upper bound below lower bound");

  Eigen::VectorXd x = clamp(x0, lower, upper);
  Eigen::VectorXd g(dim);
  double f = fn(x, g);
  if (!std::isfinite(f)) throw std::runtime_error("objective not finite at start point");

  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;

  BoundedMinimizeResult res;
  res.converged = false;

  constexpr double kArmijo = 1e-4;
  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    // Projected-gradient stationarity test.
    const Eigen::VectorXd pg = x - clamp(x - g, lower, upper);
    if (pg.lpNorm<Eigen::Infinity>() < opts.pg_tol) {
      res.converged = true;
      break;
    }

    // Two-loop recursion for the L-BFGS direction.
    Eigen::VectorXd d = -g;
    if (!s_hist.empty()) {
      const int m = static_cast<int>(s_hist.size());
      std::vector<double> alpha_coef(m);
      for (int i = m - 1; i >= 0; --i) {
        alpha_coef[i] = rho_hist[i] * s_hist[i].dot(d);
        d -= alpha_coef[i] * y_hist[i];
      }
      const double gamma =
          s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
      d *= gamma;
      for (int i = 0; i < m; ++i) {
        const double beta = rho_hist[i] * y_hist[i].dot(d);
        d += (alpha_coef[i] - beta) * s_hist[i];
      }
    }

    // Backtracking over projected trial points; retry along the steepest
    // descent direction if the quasi-Newton one fails.
    bool accepted = false;
    Eigen::VectorXd x_new(dim), g_new(dim);
    double f_new = f;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      if (attempt == 1) {
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
        d = -g;
      }
      double t = 1.0;
      for (int ls = 0; ls < 50; ++ls, t *= 0.5) {
        x_new = clamp(x + t * d, lower, upper);
        const Eigen::VectorXd step = x_new - x;
        if (step.lpNorm<Eigen::Infinity>() == 0.0) break;
        const double directional = g.dot(step);
        if (directional > 0.0) continue;  // projection turned it uphill
        f_new = fn(x_new, g_new);
        if (std::isfinite(f_new) && f_new <= f + kArmijo * directional) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      // No descent step exists along either direction: treat as converged.
      res.converged = true;
      break;
    }

    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd yv = g_new - g;
    const double sy = s.dot(yv);
    if (sy > 1e-10 * s.norm() * yv.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(yv);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > opts.history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    const double drop = f - f_new;
    x = x_new;
    g = g_new;
    f = f_new;
    if (drop <= opts.rel_f_tol * (std::abs(f) + 1.0)) {
      res.converged = true;
      ++iter;
      break;
    }
  }

  res.x = x;
  res.f = f;
  res.n_iters = iter;
  return res;
}

}  // namespace dirsbm
