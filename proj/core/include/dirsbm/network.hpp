#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace dirsbm {

/// Directed weighted network with no self-loops. The weight matrix stores a
/// literal zero on the diagonal and all reductions skip it. Immutable after
/// construction, safe to share across threads.
class WeightedNetwork {
 public:
  /// Validates: square matrix, n >= 3, exactly zero diagonal, finite
  /// nonnegative off-diagonal entries. Node ids default to v1..vn.
  WeightedNetwork(Eigen::MatrixXd weights, std::vector<std::string> node_ids = {});

  int size() const { return static_cast<int>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const { return weights_; }
  const std::vector<std::string>& node_ids() const { return node_ids_; }

 private:
  Eigen::MatrixXd weights_;
  std::vector<std::string> node_ids_;
};

/// Row-stochastic matrix of sending proportions with zero diagonal: row i
/// holds the fraction of node i's total outgoing weight sent to each other
/// node. Off-diagonal entries are strictly positive.
class CompositionMatrix {
 public:
  explicit CompositionMatrix(Eigen::MatrixXd comp, std::vector<std::string> node_ids = {});

  int size() const { return static_cast<int>(comp_.rows()); }
  const Eigen::MatrixXd& values() const { return comp_; }
  const std::vector<std::string>& node_ids() const { return node_ids_; }

  /// Lightweight view of row i with the diagonal entry removed: the
  /// (n-1)-dimensional composition vector of sender i. No copy is made.
  class RowView {
   public:
    RowView(const Eigen::MatrixXd& m, int i) : m_(&m), i_(i) {}
    int size() const { return static_cast<int>(m_->cols()) - 1; }
    double operator[](int j) const { return (*m_)(i_, j < i_ ? j : j + 1); }

   private:
    const Eigen::MatrixXd* m_;
    int i_;
  };
  RowView row_star(int i) const { return RowView(comp_, i); }

  /// Row i without its diagonal entry, materialized as an (n-1)-vector.
  Eigen::VectorXd row_star_vector(int i) const;

 private:
  Eigen::MatrixXd comp_;
  std::vector<std::string> node_ids_;
};

/// Centered log-ratio coordinates of a composition matrix; diagonal is zero
/// by convention and each row's off-diagonal entries sum to zero.
class ClrMatrix {
 public:
  explicit ClrMatrix(Eigen::MatrixXd u, std::vector<std::string> node_ids = {});

  int size() const { return static_cast<int>(u_.rows()); }
  const Eigen::MatrixXd& values() const { return u_; }
  const std::vector<std::string>& node_ids() const { return node_ids_; }

 private:
  Eigen::MatrixXd u_;
  std::vector<std::string> node_ids_;
};

enum class NetworkFormat { kEdgeList, kDenseMatrix };

/// Loads a network from CSV.
///
/// Edge-list format: header "src,dst,weight", one directed edge per row;
/// pairs not listed get weight zero. Dense format: first row and first
/// column carry node ids. The diagonal is forced to zero either way.
WeightedNetwork load_network(const std::string& path, NetworkFormat format);

/// Writes the dense-matrix CSV form (ids in first row/column).
void save_network_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& node_ids,
                      int significant_digits = 12);

/// Replaces every zero off-diagonal weight with `epsilon` (> 0). Positive
/// weights and the diagonal are untouched.
WeightedNetwork replace_zeros(const WeightedNetwork& net, double epsilon);

/// Normalizes each row by its off-diagonal sum. All off-diagonal weights
/// must be strictly positive; run replace_zeros first if needed.
CompositionMatrix to_compositions(const WeightedNetwork& net);

/// Centered log-ratio transform of each row's off-diagonal composition:
/// u_ij = log(x_ij / g_i) with g_i the geometric mean of the n-1 parts.
ClrMatrix clr_transform(const CompositionMatrix& comp);

/// CLR of a plain composition vector (all parts strictly positive).
Eigen::VectorXd clr_vector(const Eigen::VectorXd& composition);

}  // namespace dirsbm
