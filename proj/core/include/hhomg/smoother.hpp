// Pointwise (scalar-unknown) Gauss-Seidel sweeps on a compressed sparse row
// matrix. Sweeps are strictly sequential; the DOF order is the global
// skeletal order fixed by the mesh face numbering.

#pragma once

#include <Eigen/Sparse>

namespace hhomg {

using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

enum class SweepDirection { Forward, Backward };

/// One in-place sweep in ascending (forward) or descending (backward) DOF
/// order. Throws on a zero diagonal entry.
void gauss_seidel_sweep(const SparseMat& A, Eigen::VectorXd& x, const Eigen::VectorXd& b,
                        SweepDirection direction);

}  // namespace hhomg
