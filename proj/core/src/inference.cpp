#include "dirsbm/inference.hpp"

#include <unsupported/Eigen/SpecialFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dirsbm/optimize.hpp"
#include "dirsbm/rng.hpp"

namespace dirsbm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double digamma(double x) { return Eigen::numext::digamma(x); }

struct EmptyClusterError : std::runtime_error {
  EmptyClusterError() : std::runtime_error("a cluster emptied during the classification step") {}
};

void check_labels(const std::vector<int>& labels, int n, int K) {
  if (static_cast<int>(labels.size()) != n)
    throw std::invalid_argument("label vector size does not match node count");
  for (int l : labels)
    if (l < 0 || l >= K) throw std::invalid_argument("label out of range");
}

void check_params(const DirichletBlockParams& p) {
  const int K = p.num_clusters();
  if (p.alpha.rows() != K || p.alpha.cols() != K)
    throw std::invalid_argument("concentration matrix shape does not match theta");
  if ((p.alpha.array() <= 0.0).any())
    throw std::invalid_argument("concentrations must be strictly positive");
  if ((p.theta.array() < 0.0).any() || std::abs(p.theta.sum() - 1.0) > 1e-8)
    throw std::invalid_argument("mixing proportions must be a probability vector");
}

/// Label-dependent sufficient statistics of the composition matrix.
/// L(i, h) accumulates log x_ij over receivers j != i currently in
/// cluster h; relabeling one node updates a single column pair.
struct LabelCache {
  int n;
  int K;
  Eigen::MatrixXd logx;        // n x n, zero diagonal
  Eigen::VectorXd row_logsum;  // per-row sum of off-diagonal log entries
  std::vector<int> labels;
  Eigen::VectorXd counts;      // cluster sizes as reals
  Eigen::MatrixXd L;           // n x K

  LabelCache(const CompositionMatrix& comp, int K_, std::vector<int> labels_)
      : n(comp.size()), K(K_), labels(std::move(labels_)) {
    check_labels(labels, n, K);
    logx = comp.values().array().max(1e-300).log().matrix();
    logx.diagonal().setZero();
    row_logsum = logx.rowwise().sum();
    counts = Eigen::VectorXd::Zero(K);
    L = Eigen::MatrixXd::Zero(n, K);
    for (int j = 0; j < n; ++j) {
      counts(labels[j]) += 1.0;
      L.col(labels[j]) += logx.col(j);  // diagonal zeros drop the self term
    }
  }

  void relabel(int i, int k) {
    const int old = labels[i];
    if (old == k) return;
    counts(old) -= 1.0;
    counts(k) += 1.0;
    L.col(old) -= logx.col(i);
    L.col(k) += logx.col(i);
    labels[i] = k;
  }

  bool any_empty() const { return (counts.array() < 0.5).any(); }
};

/// n x K matrix of log Dirichlet densities: entry (i, k) is the log density
/// of row i when sender i is in cluster k and all other labels follow the
/// cache. Everything reduces to cluster-level sums, so the per-entry cost
/// is O(K).
Eigen::MatrixXd log_density_matrix(const LabelCache& c, const Eigen::MatrixXd& alpha) {
  const int K = c.K;
  const Eigen::MatrixXd lgA = alpha.array().lgamma().matrix();
  const Eigen::VectorXd q = alpha * c.counts;    // per-component total concentration + own-label slack
  const Eigen::VectorXd T = lgA * c.counts;
  // S(a, k): total concentration for a sender whose own label is a.
  Eigen::MatrixXd lgS(K, K);
  for (int a = 0; a < K; ++a)
    for (int k = 0; k < K; ++k) lgS(a, k) = std::lgamma(q(k) - alpha(k, a));
  const Eigen::MatrixXd D = c.L * alpha.transpose();  // (i, k) -> sum_h alpha_kh L(i, h)

  Eigen::MatrixXd dens(c.n, K);
  for (int i = 0; i < c.n; ++i) {
    const int a = c.labels[i];
    for (int k = 0; k < K; ++k)
      dens(i, k) = lgS(a, k) - (T(k) - lgA(k, a)) + D(i, k) - c.row_logsum(i);
  }
  return dens;
}

double log_sum_exp_row(const Eigen::RowVectorXd& v) {
  const double m = v.maxCoeff();
  if (m == kNegInf) return kNegInf;
  return m + std::log((v.array() - m).exp().sum());
}

Eigen::VectorXd log_theta(const Eigen::VectorXd& theta) {
  Eigen::VectorXd lt(theta.size());
  for (Eigen::Index k = 0; k < theta.size(); ++k)
    lt(k) = theta(k) > 0.0 ? std::log(theta(k)) : kNegInf;
  return lt;
}

double observed_loglik(const LabelCache& c, const DirichletBlockParams& p) {
  const Eigen::MatrixXd dens = log_density_matrix(c, p.alpha);
  const Eigen::VectorXd lt = log_theta(p.theta);
  double total = 0.0;
  for (int i = 0; i < c.n; ++i) {
    const Eigen::RowVectorXd row = dens.row(i) + lt.transpose();
    total += log_sum_exp_row(row);
  }
  return total;
}

Eigen::MatrixXd responsibilities(const LabelCache& c, const DirichletBlockParams& p) {
  const Eigen::MatrixXd dens = log_density_matrix(c, p.alpha);
  const Eigen::VectorXd lt = log_theta(p.theta);
  Eigen::MatrixXd resp(c.n, c.K);
  for (int i = 0; i < c.n; ++i) {
    Eigen::RowVectorXd row = dens.row(i) + lt.transpose();
    const double lse = log_sum_exp_row(row);
    if (lse == kNegInf)
      throw std::runtime_error("assignment probabilities underflowed for a node");
    resp.row(i) = (row.array() - lse).exp();
  }
  return resp;
}

/// Shared reductions for the concentration update: everything the
/// objective needs that does not depend on alpha.
struct AlphaObjective {
  int K;
  Eigen::VectorXd counts;
  Eigen::MatrixXd zc;      // (a, k): responsibility mass of component k among nodes labeled a
  Eigen::MatrixXd G;       // (k, h): responsibility-weighted log sums
  double constant;         // -sum_i row_logsum(i)

  AlphaObjective(const LabelCache& c, const Eigen::MatrixXd& resp) : K(c.K), counts(c.counts) {
    if (resp.rows() != c.n || resp.cols() != c.K)
      throw std::invalid_argument("responsibility matrix has wrong shape");
    zc = Eigen::MatrixXd::Zero(K, K);
    for (int i = 0; i < c.n; ++i) zc.row(c.labels[i]) += resp.row(i);
    G = resp.transpose() * c.L;
    constant = -c.row_logsum.sum();
  }

  double eval(const Eigen::MatrixXd& alpha, Eigen::MatrixXd* grad) const {
    const Eigen::MatrixXd lgA = alpha.array().lgamma().matrix();
    const Eigen::VectorXd q = alpha * counts;
    const Eigen::VectorXd T = lgA * counts;
    double obj = constant + (alpha.array() * G.array()).sum();
    if (grad) *grad = G;
    for (int a = 0; a < K; ++a) {
      for (int k = 0; k < K; ++k) {
        const double w = zc(a, k);
        const double s = q(k) - alpha(k, a);
        obj += w * (std::lgamma(s) - T(k) + lgA(k, a));
        if (grad && w != 0.0) {
          const double psi_s = digamma(s);
          for (int h = 0; h < K; ++h) {
            const double mult = counts(h) - (h == a ? 1.0 : 0.0);
            (*grad)(k, h) += w * mult * (psi_s - digamma(alpha(k, h)));
          }
        }
      }
    }
    return obj;
  }
};

Eigen::MatrixXd maximize_alpha(const AlphaObjective& objective, const Eigen::MatrixXd& alpha_init) {
  const int K = objective.K;
  const auto dim = static_cast<Eigen::Index>(K) * K;
  Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(alpha_init.data(), dim);
  const Eigen::VectorXd lo = Eigen::VectorXd::Constant(dim, kAlphaLower);
  const Eigen::VectorXd hi = Eigen::VectorXd::Constant(dim, kAlphaUpper);
  Eigen::MatrixXd grad(K, K);
  auto neg = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const Eigen::MatrixXd a = Eigen::Map<const Eigen::MatrixXd>(x.data(), K, K);
    const double f = objective.eval(a, &grad);
    g = -Eigen::Map<const Eigen::VectorXd>(grad.data(), dim);
    return -f;
  };
  const auto res = minimize_bounded(neg, x0, lo, hi);
  if (!res.x.allFinite())
    throw std::runtime_error("concentration update failed: non-finite optimum");
  return Eigen::Map<const Eigen::MatrixXd>(res.x.data(), K, K);
}

/// One greedy relabeling pass in ascending node order; each move is applied
/// immediately. Ties keep the incumbent label, then the lowest index.
void greedy_sweep(LabelCache& cache, const DirichletBlockParams& params) {
  for (int i = 0; i < cache.n; ++i) {
    const int incumbent = cache.labels[i];
    double best_val = kNegInf;
    int best_k = incumbent;
    for (int k = 0; k < cache.K; ++k) {
      cache.relabel(i, k);
      const double val = observed_loglik(cache, params);
      if (k == incumbent ? val >= best_val : val > best_val) {
        best_val = val;
        best_k = k;
      }
    }
    cache.relabel(i, best_k);
  }
}

std::vector<int> hard_assignment(const Eigen::MatrixXd& resp) {
  std::vector<int> hard(resp.rows());
  for (Eigen::Index i = 0; i < resp.rows(); ++i) {
    Eigen::Index k;
    resp.row(i).maxCoeff(&k);
    hard[i] = static_cast<int>(k);
  }
  return hard;
}

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

FitResult run_cem(const CompositionMatrix& comp, int K, const std::vector<int>& init_labels,
                  const FitOptions& opts) {
  const int n = comp.size();
  LabelCache cache(comp, K, init_labels);
  if (cache.any_empty())
    throw std::invalid_argument("initial partition must use every cluster");

  DirichletBlockParams params;
  // Fit the starting partition before the first expectation step.
  Eigen::MatrixXd resp = Eigen::MatrixXd::Zero(n, K);
  for (int i = 0; i < n; ++i) resp(i, cache.labels[i]) = 1.0;
  params.theta = resp.colwise().mean();
  params.alpha = maximize_alpha(AlphaObjective(cache, resp), Eigen::MatrixXd::Ones(K, K));

  FitResult out;
  out.seed = opts.seed;
  double ll = observed_loglik(cache, params);
  if (!std::isfinite(ll)) throw std::runtime_error("non-finite hybrid log-likelihood");
  out.loglik_trace.push_back(ll);

  for (int t = 1; t <= opts.max_iters; ++t) {
    resp = responsibilities(cache, params);
    greedy_sweep(cache, params);
    if (cache.any_empty()) throw EmptyClusterError();

    params.theta = resp.colwise().mean();
    params.alpha = maximize_alpha(AlphaObjective(cache, resp), params.alpha);

    const double ll_new = observed_loglik(cache, params);
    if (!std::isfinite(ll_new)) throw std::runtime_error("non-finite hybrid log-likelihood");
    out.loglik_trace.push_back(ll_new);
    out.n_iters = t;
    if (std::abs(ll_new - ll) < opts.tol * std::abs(ll_new)) {
      out.converged = true;
      ll = ll_new;
      break;
    }
    ll = ll_new;
  }

  // Match component order to the hard partition and reorder parameters.
  const std::vector<int> perm = align_cluster_order(resp, cache.labels);
  Eigen::MatrixXd alpha_aligned(K, K);
  Eigen::VectorXd theta_aligned(K);
  Eigen::MatrixXd resp_aligned(n, K);
  for (int cl = 0; cl < K; ++cl) {
    alpha_aligned.row(cl) = params.alpha.row(perm[cl]);
    theta_aligned(cl) = params.theta(perm[cl]);
    resp_aligned.col(cl) = resp.col(perm[cl]);
  }
  params.alpha = alpha_aligned;
  params.theta = theta_aligned;

  out.params = params;
  out.state.labels = cache.labels;
  out.state.resp = resp_aligned;
  out.hybrid_loglik = ll;

  const std::vector<int> hard = hard_assignment(resp_aligned);
  const Eigen::MatrixXd dens = log_density_matrix(cache, params.alpha);
  const Eigen::VectorXd lt = log_theta(params.theta);
  double complete = 0.0;
  for (int i = 0; i < n; ++i) complete += dens(i, hard[i]) + lt(hard[i]);
  out.complete_loglik = complete;
  return out;
}

}  // namespace

Eigen::VectorXd row_alpha_vector(int i, int k, const std::vector<int>& labels,
                                 const Eigen::MatrixXd& alpha) {
  const int n = static_cast<int>(labels.size());
  const int K = static_cast<int>(alpha.rows());
  if (i < 0 || i >= n) throw std::invalid_argument("node index out of range");
  if (k < 0 || k >= K) throw std::invalid_argument("cluster index out of range");
  Eigen::VectorXd v(n - 1);
  int p = 0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    if (labels[j] < 0 || labels[j] >= static_cast<int>(alpha.cols()))
      throw std::invalid_argument("receiver label out of range");
    v(p++) = alpha(k, labels[j]);
  }
  return v;
}

double hybrid_loglik(const CompositionMatrix& comp, const DirichletBlockParams& params,
                     const std::vector<int>& labels) {
  check_params(params);
  LabelCache cache(comp, params.num_clusters(), labels);
  const double ll = observed_loglik(cache, params);
  if (!std::isfinite(ll))
    throw std::runtime_error("non-finite hybrid log-likelihood");
  return ll;
}

double complete_hybrid_loglik(const CompositionMatrix& comp, const DirichletBlockParams& params,
                              const std::vector<int>& labels, const std::vector<int>& hard) {
  check_params(params);
  const int K = params.num_clusters();
  LabelCache cache(comp, K, labels);
  check_labels(hard, comp.size(), K);
  const Eigen::MatrixXd dens = log_density_matrix(cache, params.alpha);
  const Eigen::VectorXd lt = log_theta(params.theta);
  double total = 0.0;
  for (int i = 0; i < comp.size(); ++i) total += dens(i, hard[i]) + lt(hard[i]);
  return total;
}

Eigen::MatrixXd e_step(const CompositionMatrix& comp, const DirichletBlockParams& params,
                       const std::vector<int>& labels) {
  check_params(params);
  LabelCache cache(comp, params.num_clusters(), labels);
  return responsibilities(cache, params);
}

std::vector<int> c_step(const CompositionMatrix& comp, const DirichletBlockParams& params,
                        std::vector<int> labels) {
  check_params(params);
  LabelCache cache(comp, params.num_clusters(), std::move(labels));
  greedy_sweep(cache, params);
  return cache.labels;
}

Eigen::VectorXd m_step_theta(const Eigen::MatrixXd& resp) {
  if (resp.rows() == 0) throw std::invalid_argument("empty responsibility matrix");
  return resp.colwise().mean();
}

double m_step_alpha_objective(const CompositionMatrix& comp, const Eigen::MatrixXd& resp,
                              const std::vector<int>& labels, const Eigen::MatrixXd& alpha,
                              Eigen::MatrixXd* grad) {
  LabelCache cache(comp, static_cast<int>(alpha.rows()), labels);
  return AlphaObjective(cache, resp).eval(alpha, grad);
}

Eigen::MatrixXd m_step_alpha(const CompositionMatrix& comp, const Eigen::MatrixXd& resp,
                             const std::vector<int>& labels, const Eigen::MatrixXd& alpha_init) {
  if ((alpha_init.array() <= 0.0).any())
    throw std::invalid_argument("alpha_init must be strictly positive");
  LabelCache cache(comp, static_cast<int>(alpha_init.rows()), labels);
  return maximize_alpha(AlphaObjective(cache, resp), alpha_init);
}

std::vector<int> align_cluster_order(const Eigen::MatrixXd& resp,
                                     const std::vector<int>& labels, bool* degenerate) {
  const int K = static_cast<int>(resp.cols());
  check_labels(labels, static_cast<int>(resp.rows()), K);
  const std::vector<int> hard = hard_assignment(resp);

  Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(K, K);
  for (std::size_t i = 0; i < labels.size(); ++i) confusion(hard[i], labels[i]) += 1.0;
  if (degenerate) {
    *degenerate = (confusion.rowwise().sum().array() < 0.5).any() ||
                  (confusion.colwise().sum().array() < 0.5).any();
  }

  std::vector<int> perm(K);
  std::iota(perm.begin(), perm.end(), 0);
  if (K <= 8) {
    std::vector<int> best = perm;
    double best_score = -1.0;
    do {
      double score = 0.0;
      for (int cl = 0; cl < K; ++cl) score += confusion(perm[cl], cl);
      if (score > best_score) {
        best_score = score;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  // Greedy matching for large K: repeatedly take the biggest remaining cell.
  std::vector<int> assign(K, -1);
  std::vector<bool> row_used(K, false), col_used(K, false);
  for (int step = 0; step < K; ++step) {
    int bi = -1, bj = -1;
    double best = -1.0;
    for (int i = 0; i < K; ++i) {
      if (row_used[i]) continue;
      for (int j = 0; j < K; ++j) {
        if (col_used[j]) continue;
        if (confusion(i, j) > best) {
          best = confusion(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    assign[bj] = bi;
    row_used[bi] = true;
    col_used[bj] = true;
  }
  return assign;
}

FitResult fit(const CompositionMatrix& comp, int K, const std::vector<int>& init_labels,
              const FitOptions& opts) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  Rng rescue_rng(mix_seed(opts.seed, 0x7e5cUL));
  std::vector<int> labels = init_labels;
  for (int attempt = 0; ; ++attempt) {
    try {
      FitResult out = run_cem(comp, K, labels, opts);
      out.rescues = attempt;
      return out;
    } catch (const EmptyClusterError&) {
      if (attempt >= opts.max_rescues) throw;
      labels = random_partition(comp.size(), K, rescue_rng);
    }
  }
}

}  // namespace dirsbm
