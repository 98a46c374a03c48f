// Skeletal and bulk DOF spaces and the L2 projections onto them.
//
// Skeletal unknowns live on interior faces only (homogeneous trace space);
// boundary faces carry no DOFs. The global DOF order is: interior faces in
// mesh face order, then basis index within the face.

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "hhomg/basis.hpp"
#include "hhomg/mesh.hpp"

namespace hhomg {

using ScalarField = std::function<double(const Eigen::Vector3d&)>;
using VectorField = std::function<Eigen::Vector3d(const Eigen::Vector3d&)>;

struct SkeletonSpace {
  int p = 1;
  int face_dofs = 0;            // dim P_p(F)
  int dim = 0;                  // total interior DOFs
  std::vector<int> offset;      // per face: first DOF, -1 on boundary faces
  std::vector<int> faces;       // interior face ids in DOF order
  Eigen::VectorXd face_weight;  // per face (all faces): sum_{T>F} |T|/|dT|
  Eigen::VectorXd W;            // diagonal of the weighted skeleton Gram (dim)

  int quadrature_exactness() const { return 2 * (p + 1) + 2; }
};

SkeletonSpace make_skeleton_space(const SimplicialMesh& mesh, int p);

struct BulkSpace {
  int p = 1;
  int cell_dofs = 0;  // dim P_p(T)
  int dim = 0;        // num_cells * cell_dofs
};

BulkSpace make_bulk_space(const SimplicialMesh& mesh, int p);

/// pi_F^p g: moments of g against the orthonormal face basis.
Eigen::VectorXd l2_project_face(const SimplicialMesh& mesh, int f, int p, const ScalarField& g);

/// Face-wise L2 projection onto the skeletal space (boundary faces dropped).
Eigen::VectorXd project_skeleton(const SimplicialMesh& mesh, const SkeletonSpace& space,
                                 const ScalarField& v);

/// Cell-wise L2 projection onto the discontinuous bulk space.
Eigen::VectorXd project_bulk(const SimplicialMesh& mesh, int p, const ScalarField& v);

/// Coefficients of the boundary lift: projections of g on every boundary
/// face (empty rows for interior faces).
std::vector<Eigen::VectorXd> project_boundary(const SimplicialMesh& mesh, int p,
                                              const ScalarField& g);

/// <rho, mu>_l = rho^T W mu on skeletal coefficient vectors.
double skeleton_inner(const SkeletonSpace& space, const Eigen::VectorXd& rho,
                      const Eigen::VectorXd& mu);
double skeleton_norm(const SkeletonSpace& space, const Eigen::VectorXd& mu);

/// Affine extension of the piecewise-linear function with the given vertex
/// values, restricted to cell c (valid on the cell and its faces); used to
/// build gamma_l w inputs for the linear-FE consistency checks.
ScalarField linear_extension_on_cell(const SimplicialMesh& mesh, int c,
                                     const Eigen::VectorXd& vertex_values);

/// gamma_l w for the continuous piecewise-linear w with the given vertex
/// values (face-wise moments; exact representation for p >= 1).
Eigen::VectorXd skeleton_trace_of_linear(const SimplicialMesh& mesh, const SkeletonSpace& space,
                                         const Eigen::VectorXd& vertex_values);

}  // namespace hhomg
