#include "hhomg/transfer.hpp"

#include <stdexcept>

namespace hhomg {

Eigen::VectorXd TransferPair::restrict_function(const Eigen::VectorXd& rho) const {
  if (rho.size() != I.rows())
    throw std::invalid_argument("TransferPair::restrict_function: dimension mismatch");
  return Wc.cwiseInverse().cwiseProduct(I.transpose() * Wf.cwiseProduct(rho));
}

namespace {

// Scatters `block` (fine-face dofs x coarse local face dofs of cell tc) into
// the triplet list, keeping interior coarse faces only.
void scatter_cell_block(const SimplicialMesh& coarse, const SkeletonSpace& cspace, int tc,
                        int row0, const Eigen::MatrixXd& block,
                        std::vector<Eigen::Triplet<double>>& out) {
  const int nfd = cspace.face_dofs;
  for (int lf = 0; lf < coarse.dim() + 1; ++lf) {
    const int cf = coarse.cell_faces(tc)[lf];
    const int col0 = cspace.offset[cf];
    if (col0 < 0) continue;  // homogeneous boundary values carry no columns
    for (int r = 0; r < block.rows(); ++r)
      for (int k = 0; k < nfd; ++k) {
        const double v = block(r, lf * nfd + k);
        if (v != 0.0) out.emplace_back(row0 + r, col0 + k, v);
      }
  }
}

}  // namespace

TransferPair build_injection(const DiscreteHierarchy& h, int fine_level, InjectionKind kind) {
  if (fine_level < 1 || fine_level >= h.num_levels())
    throw std::invalid_argument("build_injection: bad level pair");
  const SimplicialMesh& fine = h.meshes->level(fine_level);
  const SimplicialMesh& coarse = h.meshes->level(fine_level - 1);
  const SkeletonSpace& fspace = h.spaces[fine_level];
  const SkeletonSpace& cspace = h.spaces[fine_level - 1];
  const std::vector<FaceClass>& fclass = h.meshes->face_class(fine_level);
  const std::vector<int>& parent = h.meshes->cell_parent(fine_level);
  const ElementCache& cache = h.cache[fine_level - 1];
  if (!cache.filled()) throw std::runtime_error("build_injection: coarse element cache missing");

  const int p = h.p;
  const int exactness = 2 * (p + 1) + 2;
  std::vector<Eigen::Triplet<double>> triplets;

  for (int ff : fspace.faces) {
    const Face& face = fine.face(ff);
    const int row0 = fspace.offset[ff];
    const QuadratureRule rule = simplex_rule(fine.face_vertex_coords(ff), exactness);
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.size());
    const Basis fine_basis = Basis::make_face(fine, ff, p);
    // moments operator: coefficients of the fine L2 projection
    const Eigen::MatrixXd Mom = fine_basis.values(rule.points).transpose() * w.asDiagonal();

    if (kind == InjectionKind::I1 && fclass[ff].kind == FaceClass::Embedded) {
      const int cf = fclass[ff].parent;
      const int col0 = cspace.offset[cf];
      if (col0 < 0) throw std::runtime_error("build_injection: interior fine face embedded in boundary coarse face");
      const Basis coarse_basis = Basis::make_face(coarse, cf, p);
      const Eigen::MatrixXd block = Mom * coarse_basis.values(rule.points);
      for (int r = 0; r < block.rows(); ++r)
        for (int k = 0; k < block.cols(); ++k) triplets.emplace_back(row0 + r, col0 + k, block(r, k));
      continue;
    }

    // adjacent coarse cells (one for interior fine faces, two for embedded)
    int tcs[2] = {parent[face.cells[0]], -1};
    int ncells = 1;
    if (!face.on_boundary()) {
      const int other = parent[face.cells[1]];
      if (other != tcs[0]) tcs[ncells++] = other;
    }
    if (kind == InjectionKind::I1 && fclass[ff].kind == FaceClass::Interior && ncells != 1)
      throw std::runtime_error("build_injection: inconsistent face classification");

    const double avg = 1.0 / ncells;
    for (int s = 0; s < ncells; ++s) {
      const int tc = tcs[s];
      if (kind == InjectionKind::I3) {
        const Basis rec = Basis::make_cell(coarse, tc, p + 1);
        scatter_cell_block(coarse, cspace, tc, row0,
                           avg * (Mom * rec.values(rule.points)) * cache.Theta[tc], triplets);
      } else {
        const Basis cell = Basis::make_cell(coarse, tc, p);
        scatter_cell_block(coarse, cspace, tc, row0,
                           avg * (Mom * cell.values(rule.points)) * cache.U[tc], triplets);
      }
    }
  }

  TransferPair pair;
  pair.kind = kind;
  pair.Wc = cspace.W;
  pair.Wf = fspace.W;
  pair.I.resize(fspace.dim, cspace.dim);
  pair.I.setFromTriplets(triplets.begin(), triplets.end());
  pair.I.makeCompressed();
  return pair;
}

std::vector<TransferPair> build_transfers(const DiscreteHierarchy& h, InjectionKind kind) {
  std::vector<TransferPair> out(h.num_levels());
  for (int l = 1; l < h.num_levels(); ++l) out[l] = build_injection(h, l, kind);
  return out;
}

}  // namespace hhomg
