#include "hhomg/local_ops.hpp"

#include <stdexcept>

namespace hhomg {

LocalOps build_local_ops(const SimplicialMesh& mesh, int cell, int p, double stab_scale) {
  if (p < 1) throw std::invalid_argument("build_local_ops: p must be >= 1");
  const int d = mesh.dim();
  LocalOps ops;
  ops.cell = cell;
  ops.p = p;
  ops.cell_basis = Basis::make_cell(mesh, cell, p);
  ops.rec_basis = Basis::make_cell(mesh, cell, p + 1);
  ops.nv = ops.cell_basis.size();
  ops.nr = ops.rec_basis.size();

  for (int lf = 0; lf < d + 1; ++lf) {
    const int f = mesh.cell_faces(cell)[lf];
    ops.face_ids.push_back(f);
    ops.face_basis.push_back(Basis::make_face(mesh, f, p));
    ops.face_offset.push_back(ops.nf);
    ops.nf += ops.face_basis.back().size();
  }
  const int nh = ops.nv + ops.nf;
  const int exactness = 2 * (p + 1) + 2;

  // cell integrals
  const QuadratureRule crule = simplex_rule(mesh.cell_vertex_coords(cell), exactness);
  Eigen::VectorXd cw = Eigen::Map<const Eigen::VectorXd>(crule.weights.data(), crule.size());
  const Eigen::MatrixXd Vp = ops.cell_basis.values(crule.points);
  const Eigen::MatrixXd Vr = ops.rec_basis.values(crule.points);
  const auto Gp = ops.cell_basis.gradients(crule.points);
  const auto Gr = ops.rec_basis.gradients(crule.points);

  ops.stiff = Eigen::MatrixXd::Zero(ops.nr, ops.nr);
  Eigen::MatrixXd stiff_pr = Eigen::MatrixXd::Zero(ops.nr, ops.nv);  // grad Phi . grad phi
  for (int x = 0; x < d; ++x) {
    ops.stiff += Gr[x].transpose() * cw.asDiagonal() * Gr[x];
    stiff_pr += Gr[x].transpose() * cw.asDiagonal() * Gp[x];
  }
  ops.stiff = 0.5 * (ops.stiff + ops.stiff.transpose()).eval();
  ops.Mmix = Vp.transpose() * cw.asDiagonal() * Vr;

  // variational right-hand side of the reconstruction:
  //   int_T grad theta . grad Phi = int_T grad v . grad Phi
  //                               + sum_F int_F (mu - v) grad Phi . nu
  Eigen::MatrixXd Brhs = Eigen::MatrixXd::Zero(ops.nr, nh);
  Brhs.leftCols(ops.nv) = stiff_pr;

  struct FaceData {
    Eigen::MatrixXd psi;     // face basis values at face quadrature
    Eigen::MatrixXd phi;     // cell basis traces
    Eigen::MatrixXd rec;     // p+1 basis traces
    Eigen::MatrixXd rec_dn;  // grad(p+1 basis) . nu
    Eigen::VectorXd w;
  };
  std::vector<FaceData> fd(d + 1);

  for (int lf = 0; lf < d + 1; ++lf) {
    const int f = ops.face_ids[lf];
    const QuadratureRule frule = simplex_rule(mesh.face_vertex_coords(f), exactness);
    const Eigen::Vector3d nu = mesh.outward_normal(f, cell);
    FaceData& dat = fd[lf];
    dat.w = Eigen::Map<const Eigen::VectorXd>(frule.weights.data(), frule.size());
    dat.psi = ops.face_basis[lf].values(frule.points);
    dat.phi = ops.cell_basis.values(frule.points);
    dat.rec = ops.rec_basis.values(frule.points);
    const auto g = ops.rec_basis.gradients(frule.points);
    dat.rec_dn = Eigen::MatrixXd::Zero(frule.size(), ops.nr);
    for (int x = 0; x < d; ++x) dat.rec_dn += nu[x] * g[x];

    Brhs.block(0, ops.nv + ops.face_offset[lf], ops.nr, ops.face_basis[lf].size()) +=
        dat.rec_dn.transpose() * dat.w.asDiagonal() * dat.psi;
    Brhs.leftCols(ops.nv) -= dat.rec_dn.transpose() * dat.w.asDiagonal() * dat.phi;
  }

  // solve on the gradient modes, then close with int_T theta = int_T v
  ops.R = Eigen::MatrixXd::Zero(ops.nr, nh);
  {
    Eigen::LLT<Eigen::MatrixXd> kllt(ops.stiff.bottomRightCorner(ops.nr - 1, ops.nr - 1));
    if (kllt.info() != Eigen::Success)
      throw std::runtime_error("build_local_ops: singular gradient Gram (degenerate cell)");
    ops.R.bottomRows(ops.nr - 1) = kllt.solve(Brhs.bottomRows(ops.nr - 1));
  }
  ops.R(0, 0) = 1.0;

  // stabilization: delta_F = pi_F( mu - theta - pi_T(v - theta) )
  ops.S = Eigen::MatrixXd::Zero(nh, nh);
  for (int lf = 0; lf < d + 1; ++lf) {
    const FaceData& dat = fd[lf];
    const int nfd = ops.face_basis[lf].size();
    Eigen::MatrixXd trace_rec = dat.psi.transpose() * dat.w.asDiagonal() * dat.rec;  // nfd x nr
    Eigen::MatrixXd trace_p = dat.psi.transpose() * dat.w.asDiagonal() * dat.phi;    // nfd x nv

    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(nfd, nh);
    D.block(0, ops.nv + ops.face_offset[lf], nfd, nfd).setIdentity();
    D -= (trace_rec - trace_p * ops.Mmix) * ops.R;
    D.leftCols(ops.nv) -= trace_p;
    ops.S += (1.0 / mesh.face(ops.face_ids[lf]).diameter) * D.transpose() * D;
  }
  ops.S = 0.5 * (ops.S + ops.S.transpose()).eval();

  ops.A = ops.R.transpose() * ops.stiff * ops.R + stab_scale * ops.S;
  ops.A = 0.5 * (ops.A + ops.A.transpose()).eval();

  // static condensation
  Eigen::MatrixXd Att = ops.A.topLeftCorner(ops.nv, ops.nv);
  Eigen::MatrixXd Atf = ops.A.topRightCorner(ops.nv, ops.nf);
  ops.att.compute(Att);
  const Eigen::VectorXd pivots = ops.att.matrixLLT().diagonal();
  if (ops.att.info() != Eigen::Success ||
      pivots.minCoeff() <= 1e-10 * pivots.maxCoeff())
    throw std::runtime_error("build_local_ops: cell block A_TT singular or not positive definite");
  ops.U = -ops.att.solve(Atf);
  ops.schur = ops.A.bottomRightCorner(ops.nf, ops.nf) + Atf.transpose() * ops.U;
  ops.schur = 0.5 * (ops.schur + ops.schur.transpose()).eval();
  ops.Theta = ops.R.leftCols(ops.nv) * ops.U + ops.R.rightCols(ops.nf);
  return ops;
}

Eigen::VectorXd LocalOps::load_moments(const SimplicialMesh& mesh, const ScalarField& f) const {
  const QuadratureRule rule = simplex_rule(mesh.cell_vertex_coords(cell), 2 * (p + 1) + 2);
  const Eigen::MatrixXd V = cell_basis.values(rule.points);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(nv);
  for (int q = 0; q < rule.size(); ++q) out += rule.weights[q] * f(rule.points[q]) * V.row(q).transpose();
  return out;
}

Eigen::VectorXd LocalOps::condensed_load(const Eigen::VectorXd& f_T) const {
  return U.transpose() * f_T;
}

Eigen::VectorXd LocalOps::recover(const Eigen::VectorXd& mu, const Eigen::VectorXd& f_T) const {
  return U * mu + att.solve(f_T);
}

}  // namespace hhomg
