// Statically condensed skeletal systems: assembly over interior-face DOFs,
// Dirichlet elimination, cell recovery and discrete norms / errors.

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Sparse>

#include "hhomg/hierarchy.hpp"
#include "hhomg/local_ops.hpp"
#include "hhomg/spaces.hpp"

namespace hhomg {

using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct CondensedSystem {
  int p = 1;
  const SimplicialMesh* mesh = nullptr;
  SkeletonSpace space;
  SparseMat A;        // symmetric positive definite, interior DOFs
  Eigen::VectorXd b;  // condensed load including the Dirichlet lift
  std::vector<Eigen::VectorXd> dirichlet;  // boundary-face coefficients of g
  // Euclidean norm of the right-hand side of the system actually solved:
  // the local cell equations (load moments f_T) stacked with the condensed
  // skeleton equations. The published iteration counts measure the backward
  // error against this quantity; with exact local elimination the residual
  // of the stacked system equals the condensed one padded with zero cell
  // rows.
  double uncondensed_rhs_norm = 0.0;

  /// ||mu||_{a_l} = sqrt(mu^T A mu).
  double a_norm(const Eigen::VectorXd& mu) const;
  /// Local face coefficients of cell c in cell_faces order, combining the
  /// skeletal vector on interior faces with the Dirichlet lift on boundary.
  Eigen::VectorXd local_face_coeffs(int c, const Eigen::VectorXd& m) const;
};

CondensedSystem assemble(const SimplicialMesh& mesh, const SkeletonSpace& space, int p,
                         const ScalarField& f, const ScalarField& g,
                         ElementCache* cache = nullptr);

/// Cell unknowns u_T = U_T m_{dT} + A_TT^{-1} f_T for every cell.
Eigen::VectorXd recover_cells(const CondensedSystem& sys, const Eigen::VectorXd& m,
                              const ScalarField& f);

/// L2 norm of (recovered solution - u) over the domain.
double l2_error(const CondensedSystem& sys, const Eigen::VectorXd& bulk, const ScalarField& u);

/// Energy error: || grad theta(u_T, m) - grad u ||_Omega plus the
/// stabilization seminorm of the discrete hybrid pair.
double energy_error(const CondensedSystem& sys, const Eigen::VectorXd& bulk,
                    const Eigen::VectorXd& m, const VectorField& grad_u);

// ---------------------------------------------------------------------------
// assembled hierarchy

struct AssembleOptions {
  bool cache_top_level = false;  // keep U/Theta of the finest level too
};

/// Per-level skeleton spaces and condensed systems over a mesh hierarchy,
/// with the per-cell transfer data cached on every coarse level.
struct DiscreteHierarchy {
  const MeshHierarchy* meshes = nullptr;
  int p = 1;
  std::vector<SkeletonSpace> spaces;
  std::vector<CondensedSystem> systems;
  std::vector<ElementCache> cache;

  int num_levels() const { return static_cast<int>(systems.size()); }
};

DiscreteHierarchy assemble_hierarchy(const MeshHierarchy& meshes, int p, const ScalarField& f,
                                     const ScalarField& g, const AssembleOptions& opts = {});

}  // namespace hhomg
