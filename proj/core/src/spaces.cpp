#include "hhomg/spaces.hpp"

#include <stdexcept>

namespace hhomg {

SkeletonSpace make_skeleton_space(const SimplicialMesh& mesh, int p) {
  if (p < 1) throw std::invalid_argument("make_skeleton_space: p must be >= 1");
  SkeletonSpace s;
  s.p = p;
  s.face_dofs = poly_space_dim(p, mesh.dim() - 1);
  s.offset.assign(mesh.num_faces(), -1);
  s.face_weight = Eigen::VectorXd::Zero(mesh.num_faces());

  for (int c = 0; c < mesh.num_cells(); ++c) {
    const double w = mesh.cell_volume(c) / mesh.cell_boundary_measure(c);
    for (int lf = 0; lf < mesh.dim() + 1; ++lf) s.face_weight[mesh.cell_faces(c)[lf]] += w;
  }

  int next = 0;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    if (mesh.face(f).on_boundary()) continue;
    s.offset[f] = next;
    s.faces.push_back(f);
    next += s.face_dofs;
  }
  s.dim = next;
  s.W.resize(s.dim);
  for (int f : s.faces)
    for (int k = 0; k < s.face_dofs; ++k) s.W[s.offset[f] + k] = s.face_weight[f];
  return s;
}

BulkSpace make_bulk_space(const SimplicialMesh& mesh, int p) {
  BulkSpace b;
  b.p = p;
  b.cell_dofs = poly_space_dim(p, mesh.dim());
  b.dim = mesh.num_cells() * b.cell_dofs;
  return b;
}

Eigen::VectorXd l2_project_face(const SimplicialMesh& mesh, int f, int p, const ScalarField& g) {
  const Basis basis = Basis::make_face(mesh, f, p);
  const QuadratureRule rule = simplex_rule(mesh.face_vertex_coords(f), 2 * (p + 1) + 2);
  Eigen::MatrixXd B = basis.values(rule.points);
  Eigen::VectorXd coeff = Eigen::VectorXd::Zero(basis.size());
  for (int q = 0; q < rule.size(); ++q) coeff += rule.weights[q] * g(rule.points[q]) * B.row(q).transpose();
  return coeff;
}

Eigen::VectorXd project_skeleton(const SimplicialMesh& mesh, const SkeletonSpace& space,
                                 const ScalarField& v) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dim);
  for (int f : space.faces) out.segment(space.offset[f], space.face_dofs) = l2_project_face(mesh, f, space.p, v);
  return out;
}

Eigen::VectorXd project_bulk(const SimplicialMesh& mesh, int p, const ScalarField& v) {
  const int nv = poly_space_dim(p, mesh.dim());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(mesh.num_cells() * nv);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const Basis basis = Basis::make_cell(mesh, c, p);
    const QuadratureRule rule = simplex_rule(mesh.cell_vertex_coords(c), 2 * (p + 1) + 2);
    Eigen::MatrixXd B = basis.values(rule.points);
    for (int q = 0; q < rule.size(); ++q)
      out.segment(c * nv, nv) += rule.weights[q] * v(rule.points[q]) * B.row(q).transpose();
  }
  return out;
}

std::vector<Eigen::VectorXd> project_boundary(const SimplicialMesh& mesh, int p,
                                              const ScalarField& g) {
  std::vector<Eigen::VectorXd> out(mesh.num_faces());
  for (int f = 0; f < mesh.num_faces(); ++f)
    if (mesh.face(f).on_boundary()) out[f] = l2_project_face(mesh, f, p, g);
  return out;
}

double skeleton_inner(const SkeletonSpace& space, const Eigen::VectorXd& rho,
                      const Eigen::VectorXd& mu) {
  if (rho.size() != space.dim || mu.size() != space.dim)
    throw std::invalid_argument("skeleton_inner: dimension mismatch");
  return rho.dot(space.W.cwiseProduct(mu));
}

double skeleton_norm(const SkeletonSpace& space, const Eigen::VectorXd& mu) {
  return std::sqrt(skeleton_inner(space, mu, mu));
}

ScalarField linear_extension_on_cell(const SimplicialMesh& mesh, int c,
                                     const Eigen::VectorXd& vertex_values) {
  const int d = mesh.dim();
  auto cv = mesh.cell_vertex_coords(c);
  Eigen::MatrixXd A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = cv[j + 1][i] - cv[0][i];
  Eigen::VectorXd dv(d);
  const double v0 = vertex_values[mesh.cells()[c][0]];
  for (int j = 0; j < d; ++j) dv[j] = vertex_values[mesh.cells()[c][j + 1]] - v0;
  Eigen::VectorXd grad = A.transpose().fullPivLu().solve(dv);
  Eigen::Vector3d origin = cv[0];
  return [d, grad, origin, v0](const Eigen::Vector3d& x) {
    double val = v0;
    for (int i = 0; i < d; ++i) val += grad[i] * (x[i] - origin[i]);
    return val;
  };
}

Eigen::VectorXd skeleton_trace_of_linear(const SimplicialMesh& mesh, const SkeletonSpace& space,
                                         const Eigen::VectorXd& vertex_values) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dim);
  for (int f : space.faces) {
    auto w = linear_extension_on_cell(mesh, mesh.face(f).cells[0], vertex_values);
    out.segment(space.offset[f], space.face_dofs) = l2_project_face(mesh, f, space.p, w);
  }
  return out;
}

}  // namespace hhomg
