// L2-orthonormal modal polynomial bases on physical cells and faces.
//
// Scaled monomials around the entity centroid are orthonormalized against
// the entity mass matrix (Cholesky, applied twice so the Gram matrix is the
// identity to machine precision). With orthonormal bases every mass matrix
// is the identity, L2 projections reduce to moment vectors and the weighted
// skeleton Gram matrix is diagonal.

#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "hhomg/mesh.hpp"
#include "hhomg/quadrature.hpp"

namespace hhomg {

/// dim P_degree in `dim` variables: C(degree+dim, dim).
int poly_space_dim(int degree, int dim);

class Basis {
 public:
  Basis() = default;  // empty basis; fill via make_cell / make_face

  /// Orthonormal basis of P_degree(T) for cell c.
  static Basis make_cell(const SimplicialMesh& mesh, int c, int degree);
  /// Orthonormal basis of P_degree(F) on the face manifold.
  static Basis make_face(const SimplicialMesh& mesh, int f, int degree);

  int size() const { return static_cast<int>(exps_.size()); }
  int degree() const { return degree_; }
  int local_dim() const { return local_dim_; }

  /// Basis values at physical points: (npts x n).
  Eigen::MatrixXd values(const std::vector<Eigen::Vector3d>& pts) const;
  /// Physical-space gradient components, each (npts x n). Face bases return
  /// tangential gradients.
  std::array<Eigen::MatrixXd, 3> gradients(const std::vector<Eigen::Vector3d>& pts) const;

  /// Orthonormalization residual max |G - I| against the given rule.
  double gram_defect(const QuadratureRule& rule) const;

 private:
  void init(int degree, const QuadratureRule& rule);
  Eigen::VectorXd local_coords(const Eigen::Vector3d& x) const;

  int degree_ = 0;
  int local_dim_ = 0;                      // intrinsic dimension (1, 2 or 3)
  Eigen::Vector3d center_;
  double scale_ = 1.0;
  Eigen::Matrix3d frame_;                  // columns: local axes in R^3
  std::vector<std::array<int, 3>> exps_;   // graded monomial exponents
  Eigen::MatrixXd coeffs_;                 // basis_i = sum_k coeffs_(i,k) mono_k
};

}  // namespace hhomg
