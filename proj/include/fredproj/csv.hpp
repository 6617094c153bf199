#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>

namespace fredproj {

// RFC-4180 style numeric CSV: one row per line, comma separated, '.' decimal
// separator, no header. Vectors are stored as a single column.

Eigen::MatrixXd load_csv_matrix(const std::filesystem::path& path);
Eigen::VectorXd load_csv_vector(const std::filesystem::path& path);

void save_csv_matrix(const std::filesystem::path& path,
                     const Eigen::MatrixXd& m);
void save_csv_vector(const std::filesystem::path& path,
                     const Eigen::VectorXd& v);

/// "%.17g" rendering; 17 significant digits round-trip doubles exactly.
std::string format_double(double x);

}  // namespace fredproj
