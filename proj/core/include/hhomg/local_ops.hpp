// Per-cell HHO operators: higher-order potential reconstruction,
// stabilization, hybrid bilinear blocks, Schur complement and the
// cell-recovery maps.
//
// The hybrid coefficient layout on a cell is [cell block | face blocks] with
// faces in cell_faces order. All bases are L2-orthonormal, so the closure
// condition int_T theta = int_T v pins the constant reconstruction mode to
// the constant cell mode.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hhomg/basis.hpp"
#include "hhomg/mesh.hpp"
#include "hhomg/spaces.hpp"

namespace hhomg {

struct LocalOps {
  int cell = -1;
  int p = 1;
  int nv = 0;  // dim P_p(T)
  int nr = 0;  // dim P_{p+1}(T)
  int nf = 0;  // total face DOFs on dT

  Basis cell_basis;                 // degree p
  Basis rec_basis;                  // degree p+1
  std::vector<Basis> face_basis;    // per local face
  std::vector<int> face_ids;       // global face ids (cell_faces order)
  std::vector<int> face_offset;    // local offsets into the face block

  Eigen::MatrixXd R;      // nr x (nv+nf): hybrid -> reconstruction theta
  Eigen::MatrixXd stiff;  // nr x nr: grad-grad Gram of the p+1 basis
  Eigen::MatrixXd S;      // (nv+nf)^2: stabilization
  Eigen::MatrixXd A;      // (nv+nf)^2: hybrid bilinear matrix
  Eigen::MatrixXd Mmix;   // nv x nr: mixed mass (pi_T^p of the p+1 basis)

  Eigen::LLT<Eigen::MatrixXd> att;  // factor of the SPD cell block A_TT
  Eigen::MatrixXd U;                // nv x nf: mu -> cell unknown, -A_TT^{-1} A_TF
  Eigen::MatrixXd Theta;            // nr x nf: mu -> theta(U mu, mu)
  Eigen::MatrixXd schur;            // nf x nf: A_FF - A_FT A_TT^{-1} A_TF

  /// Load moments f_T against the cell basis.
  Eigen::VectorXd load_moments(const SimplicialMesh& mesh, const ScalarField& f) const;
  /// Condensed right-hand side g_T = -A_FT A_TT^{-1} f_T.
  Eigen::VectorXd condensed_load(const Eigen::VectorXd& f_T) const;
  /// u_T = U_T mu + A_TT^{-1} f_T for the local face coefficients mu.
  Eigen::VectorXd recover(const Eigen::VectorXd& mu, const Eigen::VectorXd& f_T) const;
};

/// stab_scale multiplies the stabilization term (1.0 for the standard
/// method; 0 makes the local cell block singular).
LocalOps build_local_ops(const SimplicialMesh& mesh, int cell, int p, double stab_scale = 1.0);

/// Slim per-level cache of the maps consumed by the injection operators.
struct ElementCache {
  std::vector<Eigen::MatrixXd> U;
  std::vector<Eigen::MatrixXd> Theta;
  bool filled() const { return !U.empty(); }
};

}  // namespace hhomg
