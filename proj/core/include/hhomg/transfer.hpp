// Skeletal injection operators between consecutive levels and the adjoint
// restriction with respect to the weighted skeleton inner product.
//
// I1: embedded fine faces copy the coarse face polynomial; interior fine
//     faces take the trace of the coarse local solution U_{l-1} mu.
// I2: every fine face takes the average over the adjacent coarse cells of
//     the trace of U_{l-1} mu.
// I3: as I2, but with the trace of the degree-(p+1) reconstruction
//     theta(U_{l-1} mu, mu), projected back onto degree p.
//
// All traces are realized as fine-face quadrature of the coarse polynomial
// followed by L2 projection onto the fine face basis (exact for the
// embedded-face copy since the degree is preserved).

#pragma once

#include <Eigen/Sparse>

#include "hhomg/hierarchy.hpp"
#include "hhomg/system.hpp"

namespace hhomg {

enum class InjectionKind { I1, I2, I3 };

struct TransferPair {
  InjectionKind kind = InjectionKind::I3;
  SparseMat I;            // fine dim x coarse dim
  Eigen::VectorXd Wc, Wf;  // diagonal skeleton Gram weights of the two levels

  Eigen::VectorXd prolongate(const Eigen::VectorXd& mu) const { return I * mu; }
  /// Adjoint of the injection: W_{l-1}^{-1} I^T W_l, applied to a skeletal
  /// function; never densified.
  Eigen::VectorXd restrict_function(const Eigen::VectorXd& rho) const;
  /// Residual/load restriction I^T r (the coefficient-space counterpart).
  Eigen::VectorXd restrict_load(const Eigen::VectorXd& r) const { return I.transpose() * r; }
};

/// Builds the injection between levels l-1 and l of an assembled hierarchy.
/// The coarse-level element cache must be filled.
TransferPair build_injection(const DiscreteHierarchy& h, int fine_level, InjectionKind kind);

/// Transfers for all level pairs (index l holds the pair l-1 -> l; entry 0 unused).
std::vector<TransferPair> build_transfers(const DiscreteHierarchy& h, InjectionKind kind);

}  // namespace hhomg
