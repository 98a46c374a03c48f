// MatrixMarket and plain-text vector I/O.

#pragma once

#include <string>

#include <Eigen/Sparse>

namespace hhomg {

/// Coordinate format, symmetric storage (lower triangle), 1-based indices.
void write_matrix_market(const Eigen::SparseMatrix<double, Eigen::RowMajor>& A,
                         const std::string& path);

/// Coordinate format, general storage; for rectangular matrices such as the
/// injection operators.
void write_matrix_market_general(const Eigen::SparseMatrix<double, Eigen::RowMajor>& A,
                                 const std::string& path);

/// Reads coordinate real general/symmetric files.
Eigen::SparseMatrix<double, Eigen::RowMajor> read_matrix_market(const std::string& path);

/// One value per line, 17 significant digits.
void write_vector(const Eigen::VectorXd& v, const std::string& path);
Eigen::VectorXd read_vector(const std::string& path);

}  // namespace hhomg
