// Quadrature rules on reference simplices and their physical images.
//
// Cells are integrated with collapsed (Duffy-type) tensor-product
// Gauss-Legendre rules on the unit simplex, faces with Gauss-Legendre on a
// segment (2D) or the triangle rule mapped into the face plane (3D).

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace hhomg {

/// Points and weights integrating polynomials exactly up to `exactness`.
/// Points live on the physical domain the rule was made for; weights sum to
/// its measure.
struct QuadratureRule {
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;
  int exactness = 0;

  int size() const { return static_cast<int>(points.size()); }
  double total_weight() const;
};

/// Gauss-Legendre nodes/weights on [0,1], exact for degree 2n-1.
void gauss_legendre_01(int n, std::vector<double>& pts, std::vector<double>& wts);

/// Rule on the unit simplex {x_i >= 0, sum x_i <= 1} of dimension `dim` (1, 2
/// or 3), exact for total degree `exactness`.
QuadratureRule reference_simplex_rule(int dim, int exactness);

/// Rule on the physical simplex spanned by `vertices` (dim+1 points). The
/// simplex may be a manifold cell (e.g. a triangle in R^3).
QuadratureRule simplex_rule(const std::vector<Eigen::Vector3d>& vertices, int exactness);

}  // namespace hhomg
