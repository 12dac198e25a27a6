#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace dirsbm {

/// Rows of comma-separated cells. Cells are trimmed of surrounding
/// whitespace; blank lines and lines starting with '#' are skipped.
/// Quoting is not supported, so cell values must not contain commas.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

/// Writes `rows` as CSV, one record per line.
void write_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows);

/// Formats a double with the given number of significant digits.
std::string format_double(double value, int significant_digits = 17);

/// Writes a plain numeric matrix, no header, `significant_digits` precision.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      int significant_digits = 17);

/// Reads a plain numeric matrix (no header, rectangular).
Eigen::MatrixXd read_matrix_csv(const std::string& path);

/// FNV-1a digest of a file's bytes, as a 16-hex-digit string.
std::string file_digest(const std::string& path);

}  // namespace dirsbm
