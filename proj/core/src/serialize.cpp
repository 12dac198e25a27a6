#include "dirsbm/serialize.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "dirsbm/csv.hpp"

namespace dirsbm {

std::string fit_result_to_json(const FitResult& fit, double icl_value,
                               const std::vector<std::string>& node_ids,
                               const std::map<std::string, std::string>& config_echo) {
  nlohmann::json doc;
  doc["schema"] = "dirsbm-fit/1";
  doc["k"] = fit.params.num_clusters();
  doc["seed"] = fit.seed;
  doc["converged"] = fit.converged;
  doc["n_iters"] = fit.n_iters;
  doc["rescues"] = fit.rescues;
  doc["hybrid_loglik"] = fit.hybrid_loglik;
  doc["complete_loglik"] = fit.complete_loglik;
  doc["icl"] = icl_value;

  nlohmann::json labels = nlohmann::json::array();
  for (std::size_t i = 0; i < fit.state.labels.size(); ++i) {
    nlohmann::json entry;
    entry["node_id"] = i < node_ids.size() ? node_ids[i] : ("v" + std::to_string(i + 1));
    entry["cluster"] = fit.state.labels[i] + 1;
    labels.push_back(entry);
  }
  doc["labels"] = labels;

  const int K = fit.params.num_clusters();
  nlohmann::json alpha = nlohmann::json::array();
  for (int k = 0; k < K; ++k) {
    nlohmann::json row = nlohmann::json::array();
    for (int h = 0; h < K; ++h) row.push_back(fit.params.alpha(k, h));
    alpha.push_back(row);
  }
  doc["alpha"] = alpha;

  nlohmann::json theta = nlohmann::json::array();
  for (int k = 0; k < K; ++k) theta.push_back(fit.params.theta(k));
  doc["theta"] = theta;

  doc["loglik_trace"] = fit.loglik_trace;
  if (!fit.start_logliks.empty()) doc["start_logliks"] = fit.start_logliks;
  doc["config"] = config_echo;
  return doc.dump(2);
}

void write_labels_csv(const std::string& path, const std::vector<int>& labels,
                      const std::vector<std::string>& node_ids) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "node_id,cluster\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string id =
        i < node_ids.size() ? node_ids[i] : ("v" + std::to_string(i + 1));
    out << id << ',' << labels[i] + 1 << '\n';
  }
}

std::pair<std::vector<int>, std::vector<std::string>> read_labels_csv(const std::string& path) {
  const auto rows = read_csv(path);
  std::vector<int> labels;
  std::vector<std::string> ids;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r == 0 && !rows[r].empty() && rows[r][0] == "node_id") continue;
    if (rows[r].size() != 2)
      throw std::runtime_error("labels file rows must be node_id,cluster: " + path);
    ids.push_back(rows[r][0]);
    labels.push_back(std::stoi(rows[r][1]) - 1);
  }
  return {labels, ids};
}

void write_trace_csv(const std::string& path, const std::vector<double>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "iter,hybrid_loglik\n";
  for (std::size_t t = 0; t < trace.size(); ++t)
    out << t << ',' << format_double(trace[t], 17) << '\n';
}

}  // namespace dirsbm
