#include <doctest.h>

#include <random>

#include <Eigen/SparseCholesky>

#include "hhomg/builders.hpp"
#include "hhomg/problems.hpp"
#include "hhomg/system.hpp"

using namespace hhomg;

namespace {

// directly assembled hybrid system (cell + face unknowns), homogeneous
// Dirichlet; the independent oracle for static condensation
struct HybridSystem {
  Eigen::MatrixXd H;
  Eigen::VectorXd rhs;
  int cell_dofs;
};

HybridSystem assemble_hybrid(const SimplicialMesh& mesh, const SkeletonSpace& space, int p,
                             const ScalarField& f) {
  const int nv = poly_space_dim(p, mesh.dim());
  const int n_cell = mesh.num_cells() * nv;
  const int n = n_cell + space.dim;
  HybridSystem sys{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n), n_cell};
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const LocalOps ops = build_local_ops(mesh, c, p);
    std::vector<int> loc(ops.nv + ops.nf, -1);
    for (int k = 0; k < ops.nv; ++k) loc[k] = c * nv + k;
    for (size_t lf = 0; lf < ops.face_ids.size(); ++lf) {
      const int off = space.offset[ops.face_ids[lf]];
      if (off < 0) continue;  // boundary: zero trace
      for (int k = 0; k < space.face_dofs; ++k)
        loc[ops.nv + ops.face_offset[lf] + k] = n_cell + off + k;
    }
    for (int i = 0; i < ops.nv + ops.nf; ++i) {
      if (loc[i] < 0) continue;
      for (int j = 0; j < ops.nv + ops.nf; ++j)
        if (loc[j] >= 0) sys.H(loc[i], loc[j]) += ops.A(i, j);
    }
    sys.rhs.segment(c * nv, nv) = ops.load_moments(mesh, f);
  }
  return sys;
}

}  // namespace

TEST_CASE("zero data gives zero system and zero solution") {
  const SimplicialMesh mesh = build_structured_square(2);
  const SkeletonSpace space = make_skeleton_space(mesh, 1);
  const CondensedSystem sys = assemble(mesh, space, 1, nullptr, nullptr);
  CHECK(sys.b.norm() == 0.0);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(Eigen::SparseMatrix<double>(sys.A));
  CHECK(solver.solve(sys.b).norm() == 0.0);
}

TEST_CASE("condensed matrix invariants: symmetry, positivity, sparsity pattern") {
  const SimplicialMesh mesh = build_structured_square(3);
  const SkeletonSpace space = make_skeleton_space(mesh, 2);
  const Problem pb = make_problem("square");
  const CondensedSystem sys = assemble(mesh, space, 2, pb.source, nullptr);

  const SparseMat At = SparseMat(sys.A.transpose());
  double asym = 0.0, scale = 0.0;
  for (int k = 0; k < sys.A.outerSize(); ++k)
    for (SparseMat::InnerIterator it(sys.A, k), jt(At, k); it; ++it, ++jt) {
      asym = std::max(asym, std::abs(it.value() - jt.value()));
      scale = std::max(scale, std::abs(it.value()));
    }
  CHECK(asym <= 1e-12 * scale);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd mu(space.dim);
    for (int i = 0; i < mu.size(); ++i) mu[i] = dist(rng);
    CHECK(mu.dot(sys.A * mu) > 0.0);
  }

  // nonzeros couple only faces sharing a cell
  auto dof_face = [&](int dof) { return space.faces[dof / space.face_dofs]; };
  for (int k = 0; k < sys.A.outerSize(); ++k)
    for (SparseMat::InnerIterator it(sys.A, k); it; ++it) {
      const Face& fi = mesh.face(dof_face(it.row()));
      const Face& fj = mesh.face(dof_face(it.col()));
      const bool share = fi.cells[0] == fj.cells[0] || fi.cells[0] == fj.cells[1] ||
                         (fi.cells[1] >= 0 && (fi.cells[1] == fj.cells[0] || fi.cells[1] == fj.cells[1]));
      CHECK(share);
    }
}

TEST_CASE("condensed solve equals the hybrid solve (static condensation oracle)") {
  // meshes with <= 8 cells
  for (int n : {1, 2}) {
    const SimplicialMesh mesh = build_structured_square(n);
    REQUIRE(mesh.num_cells() <= 8);
    for (int p : {1, 2}) {
      const SkeletonSpace space = make_skeleton_space(mesh, p);
      auto f = [](const Eigen::Vector3d& x) { return std::exp(x.x()) * (1.0 + x.y()); };
      const CondensedSystem sys = assemble(mesh, space, p, f, nullptr);
      const HybridSystem hyb = assemble_hybrid(mesh, space, p, f);

      const Eigen::VectorXd full = hyb.H.ldlt().solve(hyb.rhs);
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(
          Eigen::SparseMatrix<double>(sys.A));
      const Eigen::VectorXd m = solver.solve(sys.b);

      const Eigen::VectorXd m_hybrid = full.tail(space.dim);
      CHECK((m - m_hybrid).lpNorm<Eigen::Infinity>() <
            1e-10 * std::max(1.0, m_hybrid.lpNorm<Eigen::Infinity>()));

      // recovered cell unknowns match the hybrid cell block
      const Eigen::VectorXd bulk = recover_cells(sys, m, f);
      CHECK((bulk - full.head(hyb.cell_dofs)).lpNorm<Eigen::Infinity>() <
            1e-10 * std::max(1.0, full.head(hyb.cell_dofs).lpNorm<Eigen::Infinity>()));

      // the assembled condensed matrix equals the Schur complement of the
      // hybrid matrix
      const Eigen::MatrixXd Htt = hyb.H.topLeftCorner(hyb.cell_dofs, hyb.cell_dofs);
      const Eigen::MatrixXd Htf = hyb.H.topRightCorner(hyb.cell_dofs, space.dim);
      const Eigen::MatrixXd Hff = hyb.H.bottomRightCorner(space.dim, space.dim);
      const Eigen::MatrixXd schur = Hff - Htf.transpose() * Htt.ldlt().solve(Htf);
      CHECK((Eigen::MatrixXd(sys.A) - schur).lpNorm<Eigen::Infinity>() <
            1e-10 * schur.lpNorm<Eigen::Infinity>());
    }
  }
}

TEST_CASE("manufactured square solution is approximated with decreasing error") {
  const Problem pb = make_problem("square");
  MeshHierarchy meshes(pb.coarse_mesh(), 3);
  double prev_l2 = -1.0, prev_en = -1.0;
  for (int l = 0; l < 3; ++l) {
    const SkeletonSpace space = make_skeleton_space(meshes.level(l), 1);
    const CondensedSystem sys = assemble(meshes.level(l), space, 1, pb.source, nullptr);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(Eigen::SparseMatrix<double>(sys.A));
    const Eigen::VectorXd m = solver.solve(sys.b);
    const Eigen::VectorXd bulk = recover_cells(sys, m, pb.source);
    const double el2 = l2_error(sys, bulk, pb.exact);
    const double een = energy_error(sys, bulk, m, pb.grad_exact);
    if (l > 0) {
      CHECK(el2 < 0.5 * prev_l2);
      CHECK(een < 0.7 * prev_en);
    }
    prev_l2 = el2;
    prev_en = een;
  }
}

TEST_CASE("lshape problem with Dirichlet lift converges to the singular solution") {
  const Problem pb = make_problem("lshape");
  MeshHierarchy meshes(pb.coarse_mesh(), 3);
  double prev = -1.0;
  for (int l = 0; l < 3; ++l) {
    const SkeletonSpace space = make_skeleton_space(meshes.level(l), 1);
    const CondensedSystem sys = assemble(meshes.level(l), space, 1, pb.source, pb.boundary);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(Eigen::SparseMatrix<double>(sys.A));
    const Eigen::VectorXd m = solver.solve(sys.b);
    const Eigen::VectorXd bulk = recover_cells(sys, m, pb.source);
    const double el2 = l2_error(sys, bulk, pb.exact);
    if (l > 0) CHECK(el2 < 0.7 * prev);
    prev = el2;
  }
}

TEST_CASE("skeleton inner product and the h_F norm equivalence") {
  const SimplicialMesh mesh = build_structured_square(4);
  const SkeletonSpace space = make_skeleton_space(mesh, 1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd mu(space.dim);
  for (int i = 0; i < mu.size(); ++i) mu[i] = dist(rng);

  CHECK(skeleton_inner(space, mu, mu) > 0.0);

  // ||mu||_l^2 vs sum_F h_F ||mu||_F^2 within mesh-regularity factors
  double hf_norm = 0.0;
  for (int f : space.faces)
    hf_norm += mesh.face(f).diameter * mu.segment(space.offset[f], space.face_dofs).squaredNorm();
  const double ratio = skeleton_inner(space, mu, mu) / hf_norm;
  CHECK(ratio > 0.02);
  CHECK(ratio < 1.0);

  CHECK_THROWS(skeleton_inner(space, mu, Eigen::VectorXd::Zero(space.dim + 1)));
}
