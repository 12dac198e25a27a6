#include "dirsbm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace dirsbm {

namespace {

std::vector<int> relabel_dense(const std::vector<int>& labels, int& k_out) {
  std::map<int, int> remap;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
    (void)inserted;
  }
  k_out = static_cast<int>(remap.size());
  return out;
}

double comb2(double m) { return m * (m - 1.0) / 2.0; }

double frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return std::sqrt((a - b).squaredNorm());
}

}  // namespace

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("partitions have different lengths");
  if (a.empty()) throw std::invalid_argument("partitions are empty");
  int ka = 0, kb = 0;
  const std::vector<int> la = relabel_dense(a, ka);
  const std::vector<int> lb = relabel_dense(b, kb);
  Eigen::MatrixXd cont = Eigen::MatrixXd::Zero(ka, kb);
  for (std::size_t i = 0; i < la.size(); ++i) cont(la[i], lb[i]) += 1.0;

  double sum_ij = 0.0;
  for (int i = 0; i < ka; ++i)
    for (int j = 0; j < kb; ++j) sum_ij += comb2(cont(i, j));
  double sum_a = 0.0, sum_b = 0.0;
  for (int i = 0; i < ka; ++i) sum_a += comb2(cont.row(i).sum());
  for (int j = 0; j < kb; ++j) sum_b += comb2(cont.col(j).sum());

  const double total = comb2(static_cast<double>(a.size()));
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;  // both partitions trivial
  return (sum_ij - expected) / (max_index - expected);
}

double frobenius_distance(const Eigen::MatrixXd& truth, const Eigen::MatrixXd& estimate) {
  if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols())
    throw std::invalid_argument("matrix shapes differ");
  if (truth.rows() != truth.cols()) return frobenius(truth, estimate);

  const int k = static_cast<int>(truth.rows());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);

  auto permuted_distance = [&](const std::vector<int>& p) {
    double ss = 0.0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const double d = truth(i, j) - estimate(p[i], p[j]);
        ss += d * d;
      }
    return std::sqrt(ss);
  };

  if (k <= 8) {
    double best = std::numeric_limits<double>::infinity();
    do {
      best = std::min(best, permuted_distance(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }

  // Greedy row matching on squared row-plus-column cost for large K.
  std::vector<bool> used(k, false);
  std::vector<int> assign(k, -1);
  for (int i = 0; i < k; ++i) {
    double best_cost = std::numeric_limits<double>::infinity();
    int best_j = -1;
    for (int j = 0; j < k; ++j) {
      if (used[j]) continue;
      const double cost = (truth.row(i) - estimate.row(j)).squaredNorm() +
                          (truth.col(i) - estimate.col(j)).squaredNorm();
      if (cost < best_cost) {
        best_cost = cost;
        best_j = j;
      }
    }
    assign[i] = best_j;
    used[best_j] = true;
  }
  return permuted_distance(assign);
}

}  // namespace dirsbm
