#include "dirsbm/network.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "dirsbm/csv.hpp"

namespace dirsbm {

namespace {

std::vector<std::string> default_ids(int n) {
  std::vector<std::string> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = "v" + std::to_string(i + 1);
  return ids;
}

void check_ids(int n, std::vector<std::string>& ids) {
  if (ids.empty()) {
    ids = default_ids(n);
  } else if (static_cast<int>(ids.size()) != n) {
    throw std::invalid_argument("node id count does not match matrix size");
  }
}

}  // namespace

WeightedNetwork::WeightedNetwork(Eigen::MatrixXd weights, std::vector<std::string> node_ids)
    : weights_(std::move(weights)), node_ids_(std::move(node_ids)) {
  const auto n = weights_.rows();
  if (weights_.cols() != n) throw std::invalid_argument("weight matrix must be square");
  if (n < 3) throw std::invalid_argument("network needs at least 3 nodes");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0)
      throw std::invalid_argument("self-loop weights are not allowed");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double w = weights_(i, j);
      if (!std::isfinite(w)) throw std::invalid_argument("non-finite edge weight");
      if (w < 0.0) throw std::invalid_argument("negative edge weight");
    }
  }
  check_ids(static_cast<int>(n), node_ids_);
}

CompositionMatrix::CompositionMatrix(Eigen::MatrixXd comp, std::vector<std::string> node_ids)
    : comp_(std::move(comp)), node_ids_(std::move(node_ids)) {
  const auto n = comp_.rows();
  if (comp_.cols() != n) throw std::invalid_argument("composition matrix must be square");
  if (n < 3) throw std::invalid_argument("composition matrix needs at least 3 nodes");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (comp_(i, i) != 0.0)
      throw std::invalid_argument("composition diagonal must be exactly zero");
    double row_sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double x = comp_(i, j);
      if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument("off-diagonal compositions must be strictly positive");
      row_sum += x;
    }
    if (std::abs(row_sum - 1.0) > 1e-10)
      throw std::invalid_argument("composition row does not sum to one");
  }
  check_ids(static_cast<int>(n), node_ids_);
}

Eigen::VectorXd CompositionMatrix::row_star_vector(int i) const {
  const int n = size();
  Eigen::VectorXd v(n - 1);
  int p = 0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    v(p++) = comp_(i, j);
  }
  return v;
}

ClrMatrix::ClrMatrix(Eigen::MatrixXd u, std::vector<std::string> node_ids)
    : u_(std::move(u)), node_ids_(std::move(node_ids)) {
  const auto n = u_.rows();
  if (u_.cols() != n) throw std::invalid_argument("clr matrix must be square");
  for (Eigen::Index i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) row_sum += u_(i, j);
    if (std::abs(row_sum) > 1e-8)
      throw std::invalid_argument("clr row is not zero-centered");
  }
  check_ids(static_cast<int>(n), node_ids_);
}

WeightedNetwork load_network(const std::string& path, NetworkFormat format) {
  const auto rows = read_csv(path);
  if (rows.empty()) throw std::runtime_error("empty network file: " + path);

  if (format == NetworkFormat::kDenseMatrix) {
    const int n = static_cast<int>(rows.size()) - 1;
    if (n < 1) throw std::runtime_error("dense matrix file has no data rows: " + path);
    std::vector<std::string> ids;
    for (std::size_t j = 1; j < rows[0].size(); ++j) ids.push_back(rows[0][j]);
    if (static_cast<int>(ids.size()) != n)
      throw std::runtime_error("dense matrix header/row count mismatch: " + path);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      const auto& r = rows[i + 1];
      if (static_cast<int>(r.size()) != n + 1)
        throw std::runtime_error("dense matrix row has wrong width: " + path);
      if (r[0] != ids[i])
        throw std::runtime_error("dense matrix row id '" + r[0] + "' does not match header");
      for (int j = 0; j < n; ++j) {
        double w;
        try {
          w = std::stod(r[j + 1]);
        } catch (const std::exception&) {
          throw std::runtime_error("non-numeric weight '" + r[j + 1] + "' in " + path);
        }
        m(i, j) = w;
      }
      m(i, i) = 0.0;
    }
    return WeightedNetwork(std::move(m), std::move(ids));
  }

  // Edge list: src,dst,weight with a header row.
  std::size_t first = 0;
  if (!rows[0].empty() && (rows[0][0] == "src" || rows[0][0] == "source")) first = 1;
  std::map<std::string, int> index;
  std::vector<std::string> ids;
  struct Edge {
    int src, dst;
    double w;
  };
  std::vector<Edge> edges;
  auto intern = [&](const std::string& id) {
    auto [it, inserted] = index.emplace(id, static_cast<int>(ids.size()));
    if (inserted) ids.push_back(id);
    return it->second;
  };
  for (std::size_t r = first; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 3)
      throw std::runtime_error("edge list rows must be src,dst,weight: " + path);
    const int s = intern(row[0]);
    const int d = intern(row[1]);
    double w;
    try {
      w = std::stod(row[2]);
    } catch (const std::exception&) {
      throw std::runtime_error("non-numeric weight '" + row[2] + "' in " + path);
    }
    if (w < 0.0) throw std::runtime_error("negative edge weight in " + path);
    edges.push_back({s, d, w});
  }
  const int n = static_cast<int>(ids.size());
  if (n < 3) throw std::runtime_error("network needs at least 3 nodes: " + path);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> seen =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
  for (const auto& e : edges) {
    if (e.src == e.dst) continue;  // self-loops are dropped
    if (seen(e.src, e.dst) && m(e.src, e.dst) != e.w)
      throw std::runtime_error("duplicate edge with conflicting weight: " + ids[e.src] +
                               " -> " + ids[e.dst]);
    seen(e.src, e.dst) = true;
    m(e.src, e.dst) = e.w;
  }
  return WeightedNetwork(std::move(m), std::move(ids));
}

void save_network_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& node_ids, int significant_digits) {
  const int n = static_cast<int>(m.rows());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "id";
  for (int j = 0; j < n; ++j) out << ',' << node_ids[j];
  out << '\n';
  for (int i = 0; i < n; ++i) {
    out << node_ids[i];
    for (int j = 0; j < n; ++j) out << ',' << format_double(m(i, j), significant_digits);
    out << '\n';
  }
}

WeightedNetwork replace_zeros(const WeightedNetwork& net, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  Eigen::MatrixXd m = net.weights();
  const int n = net.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && m(i, j) == 0.0) m(i, j) = epsilon;
  return WeightedNetwork(std::move(m), net.node_ids());
}

CompositionMatrix to_compositions(const WeightedNetwork& net) {
  const int n = net.size();
  const Eigen::MatrixXd& w = net.weights();
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!(w(i, j) > 0.0))
        throw std::invalid_argument(
            "zero off-diagonal weight; apply replace_zeros before normalizing");
      row_sum += w(i, j);
    }
    for (int j = 0; j < n; ++j)
      if (i != j) x(i, j) = w(i, j) / row_sum;
  }
  return CompositionMatrix(std::move(x), net.node_ids());
}

ClrMatrix clr_transform(const CompositionMatrix& comp) {
  const int n = comp.size();
  const Eigen::MatrixXd& x = comp.values();
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double mean_log = 0.0;
    for (int j = 0; j < n; ++j)
      if (i != j) mean_log += std::log(x(i, j));
    mean_log /= (n - 1);
    for (int j = 0; j < n; ++j)
      if (i != j) u(i, j) = std::log(x(i, j)) - mean_log;
  }
  return ClrMatrix(std::move(u), comp.node_ids());
}

Eigen::VectorXd clr_vector(const Eigen::VectorXd& composition) {
  const auto d = composition.size();
  if (d < 2) throw std::invalid_argument("composition needs at least 2 parts");
  double mean_log = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(composition(j) > 0.0))
      throw std::invalid_argument("composition parts must be strictly positive");
    mean_log += std::log(composition(j));
  }
  mean_log /= static_cast<double>(d);
  Eigen::VectorXd u(d);
  for (Eigen::Index j = 0; j < d; ++j) u(j) = std::log(composition(j)) - mean_log;
  return u;
}

}  // namespace dirsbm
