#include "hhomg/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hhomg {

void write_matrix_market(const Eigen::SparseMatrix<double, Eigen::RowMajor>& A,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_market: cannot open " + path);
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  std::size_t nnz_lower = 0;
  for (int i = 0; i < A.outerSize(); ++i)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(A, i); it; ++it)
      if (it.col() <= it.row()) ++nnz_lower;
  out << A.rows() << " " << A.cols() << " " << nnz_lower << "\n";
  out.precision(17);
  for (int i = 0; i < A.outerSize(); ++i)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(A, i); it; ++it)
      if (it.col() <= it.row()) out << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
}

void write_matrix_market_general(const Eigen::SparseMatrix<double, Eigen::RowMajor>& A,
                                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_market_general: cannot open " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.rows() << " " << A.cols() << " " << A.nonZeros() << "\n";
  out.precision(17);
  for (int i = 0; i < A.outerSize(); ++i)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(A, i); it; ++it)
      out << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
}

Eigen::SparseMatrix<double, Eigen::RowMajor> read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_matrix_market: cannot open " + path);
  std::string header;
  std::getline(in, header);
  if (header.rfind("%%MatrixMarket", 0) != 0)
    throw std::runtime_error("read_matrix_market: missing banner in " + path);
  const bool symmetric = header.find("symmetric") != std::string::npos;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '%') break;
  std::istringstream dims(line);
  long rows = 0, cols = 0, nnz = 0;
  dims >> rows >> cols >> nnz;
  if (rows <= 0 || cols <= 0) throw std::runtime_error("read_matrix_market: corrupt sizes");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(symmetric ? 2 * nnz : nnz);
  for (long k = 0; k < nnz; ++k) {
    long i = 0, j = 0;
    double v = 0.0;
    in >> i >> j >> v;
    triplets.emplace_back(i - 1, j - 1, v);
    if (symmetric && i != j) triplets.emplace_back(j - 1, i - 1, v);
  }
  if (!in) throw std::runtime_error("read_matrix_market: truncated file " + path);
  Eigen::SparseMatrix<double, Eigen::RowMajor> A(rows, cols);
  A.setFromTriplets(triplets.begin(), triplets.end());
  A.makeCompressed();
  return A;
}

void write_vector(const Eigen::VectorXd& v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_vector: cannot open " + path);
  out.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << v[i] << "\n";
}

Eigen::VectorXd read_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_vector: cannot open " + path);
  std::vector<double> vals;
  double x;
  while (in >> x) vals.push_back(x);
  return Eigen::Map<Eigen::VectorXd>(vals.data(), vals.size());
}

}  // namespace hhomg
