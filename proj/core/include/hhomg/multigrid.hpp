// Homogeneous multigrid V-cycle on the condensed skeletal systems.
//
// Recursive preconditioner B_l: pre-smoothing sweeps, residual restriction
// by the transpose of the injection matrix, recursion, injection of the
// coarse correction, post-smoothing with the adjoint sweep sequence. Level 0
// is solved exactly with a dense Cholesky factorization. The outer solver is
// the stationary iteration x <- x + B(b - A x) from x = 0, stopped on the
// backward error ||r||_2 / ||b||_2.

#pragma once

#include <functional>
#include <vector>

#include "hhomg/smoother.hpp"
#include "hhomg/system.hpp"
#include "hhomg/transfer.hpp"

namespace hhomg {

enum class CycleKind { V11, V22, Variable };

struct CycleSpec {
  CycleKind kind = CycleKind::V11;
  // variable mode: sweeps(l) = max(1, round(n_finest * growth^(top-l)))
  int n_finest = 1;
  double growth = 2.0;

  int sweeps(int level, int top_level) const;
  /// Pre-smoothing directions at a level: alternating F,B,F,... of length n.
  /// Post-smoothing uses the reversed, flipped sequence, keeping every cycle
  /// symmetric in the weighted inner product (V(1,1): F pre / B post;
  /// V(2,2): F,B pre / F,B post).
  std::vector<SweepDirection> pre_sweeps(int level, int top_level) const;
  std::vector<SweepDirection> post_sweeps(int level, int top_level) const;
};

CycleSpec make_cycle(const std::string& name, int n_finest = 1, double growth = 2.0);

struct SolveReport {
  bool diverged = false;
  int iterations = 0;
  std::vector<double> backward_errors;
  double seconds = 0.0;
};

class MultigridSolver {
 public:
  /// systems[l] and transfers[l] (pair l-1 -> l) for levels 0..top.
  MultigridSolver(const std::vector<const CondensedSystem*>& systems,
                  const std::vector<const TransferPair*>& transfers, CycleSpec cycle);

  int top_level() const { return static_cast<int>(systems_.size()) - 1; }

  /// One application of the multigrid operator B_level to b.
  Eigen::VectorXd v_cycle(int level, const Eigen::VectorXd& b) const;

  /// Stationary iteration x <- x + B(b - A x) from x = 0, stopped once
  /// ||b - A x||_2 / rhs_norm < tol. rhs_norm defaults to ||b||_2; passing
  /// the norm of an equivalent un-eliminated right-hand side reproduces
  /// backward errors of the original system.
  SolveReport solve(const Eigen::VectorXd& b, double tol = 1e-6, int max_iter = 100,
                    Eigen::VectorXd* solution = nullptr, double rhs_norm = -1.0) const;

 private:
  std::vector<const CondensedSystem*> systems_;
  std::vector<const TransferPair*> transfers_;
  CycleSpec cycle_;
  Eigen::LLT<Eigen::MatrixXd> coarse_llt_;
};

/// Largest-eigenvalue estimate by power iteration (deterministic start).
double estimate_lambda_max(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& matvec,
                           int dim, int iterations = 200);
double estimate_lambda_max(const SparseMat& A, int iterations = 200);
/// Largest eigenvalue of the weighted operator W^{-1} A (the condensed
/// operator of the skeletal inner product).
double estimate_lambda_max_weighted(const SparseMat& A, const Eigen::VectorXd& W,
                                    int iterations = 200);

}  // namespace hhomg
