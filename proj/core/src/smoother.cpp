#include "hhomg/smoother.hpp"

#include <stdexcept>

namespace hhomg {

void gauss_seidel_sweep(const SparseMat& A, Eigen::VectorXd& x, const Eigen::VectorXd& b,
                        SweepDirection direction) {
  const int n = static_cast<int>(A.rows());
  if (x.size() != n || b.size() != n)
    throw std::invalid_argument("gauss_seidel_sweep: dimension mismatch");
  const bool forward = direction == SweepDirection::Forward;
  for (int ii = 0; ii < n; ++ii) {
    const int i = forward ? ii : n - 1 - ii;
    double sum = b[i];
    double diag = 0.0;
    for (SparseMat::InnerIterator it(A, i); it; ++it) {
      if (it.col() == i)
        diag = it.value();
      else
        sum -= it.value() * x[it.col()];
    }
    if (diag == 0.0) throw std::runtime_error("gauss_seidel_sweep: zero diagonal entry");
    x[i] = sum / diag;
  }
}

}  // namespace hhomg
