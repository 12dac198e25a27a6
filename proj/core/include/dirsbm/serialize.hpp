#pragma once

#include <map>
#include <string>
#include <vector>

#include "dirsbm/model.hpp"

namespace dirsbm {

/// JSON document for a fit: labels (1-based), concentration matrix, mixing
/// proportions, log-likelihood trace, ICL, seed and a caller-supplied
/// configuration echo. The field schema is stable across versions.
std::string fit_result_to_json(const FitResult& fit, double icl_value,
                               const std::vector<std::string>& node_ids,
                               const std::map<std::string, std::string>& config_echo);

/// labels CSV with header "node_id,cluster"; clusters are 1-based.
void write_labels_csv(const std::string& path, const std::vector<int>& labels,
                      const std::vector<std::string>& node_ids);

/// Reads labels back (returns 0-based labels and ids in file order).
std::pair<std::vector<int>, std::vector<std::string>> read_labels_csv(const std::string& path);

/// trace CSV with header "iter,hybrid_loglik".
void write_trace_csv(const std::string& path, const std::vector<double>& trace);

}  // namespace dirsbm
