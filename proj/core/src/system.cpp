#include "hhomg/system.hpp"

#include <stdexcept>

namespace hhomg {

double CondensedSystem::a_norm(const Eigen::VectorXd& mu) const {
  return std::sqrt(std::max(0.0, mu.dot(A * mu)));
}

Eigen::VectorXd CondensedSystem::local_face_coeffs(int c, const Eigen::VectorXd& m) const {
  const int d = mesh->dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero((d + 1) * space.face_dofs);
  for (int lf = 0; lf < d + 1; ++lf) {
    const int f = mesh->cell_faces(c)[lf];
    if (space.offset[f] >= 0) {
      out.segment(lf * space.face_dofs, space.face_dofs) =
          m.segment(space.offset[f], space.face_dofs);
    } else if (!dirichlet.empty() && dirichlet[f].size() > 0) {
      out.segment(lf * space.face_dofs, space.face_dofs) = dirichlet[f];
    }
  }
  return out;
}

CondensedSystem assemble(const SimplicialMesh& mesh, const SkeletonSpace& space, int p,
                         const ScalarField& f, const ScalarField& g, ElementCache* cache) {
  CondensedSystem sys;
  sys.p = p;
  sys.mesh = &mesh;
  sys.space = space;
  sys.b = Eigen::VectorXd::Zero(space.dim);
  sys.dirichlet = g ? project_boundary(mesh, p, g) : std::vector<Eigen::VectorXd>(mesh.num_faces());

  const int d = mesh.dim();
  const int nfd = space.face_dofs;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(mesh.num_cells()) * (d + 1) * (d + 1) * nfd * nfd);

  if (cache) {
    cache->U.resize(mesh.num_cells());
    cache->Theta.resize(mesh.num_cells());
  }

  double cell_rows_sq = 0.0;  // ||f_T||^2 over cells (uncondensed cell equations)

  for (int c = 0; c < mesh.num_cells(); ++c) {
    LocalOps ops = build_local_ops(mesh, c, p);
    const Eigen::VectorXd f_T = f ? ops.load_moments(mesh, f) : Eigen::VectorXd::Zero(ops.nv);
    const Eigen::VectorXd g_T = ops.condensed_load(f_T);
    cell_rows_sq += f_T.squaredNorm();

    for (int li = 0; li < d + 1; ++li) {
      const int fi = ops.face_ids[li];
      const int row0 = space.offset[fi];
      if (row0 < 0) continue;
      for (int a = 0; a < nfd; ++a) sys.b[row0 + a] += g_T[li * nfd + a];
      for (int lj = 0; lj < d + 1; ++lj) {
        const int fj = ops.face_ids[lj];
        const int col0 = space.offset[fj];
        if (col0 >= 0) {
          for (int a = 0; a < nfd; ++a)
            for (int bb = 0; bb < nfd; ++bb)
              triplets.emplace_back(row0 + a, col0 + bb, ops.schur(li * nfd + a, lj * nfd + bb));
        } else if (sys.dirichlet[fj].size() > 0) {
          for (int a = 0; a < nfd; ++a)
            sys.b[row0 + a] -=
                ops.schur.row(li * nfd + a).segment(lj * nfd, nfd).dot(sys.dirichlet[fj]);
        }
      }
    }
    if (cache) {
      cache->U[c] = std::move(ops.U);
      cache->Theta[c] = std::move(ops.Theta);
    }
  }
  sys.A.resize(space.dim, space.dim);
  sys.A.setFromTriplets(triplets.begin(), triplets.end());
  sys.A.makeCompressed();
  sys.uncondensed_rhs_norm = std::sqrt(cell_rows_sq + sys.b.squaredNorm());
  return sys;
}

Eigen::VectorXd recover_cells(const CondensedSystem& sys, const Eigen::VectorXd& m,
                              const ScalarField& f) {
  const SimplicialMesh& mesh = *sys.mesh;
  const int nv = poly_space_dim(sys.p, mesh.dim());
  Eigen::VectorXd bulk(mesh.num_cells() * nv);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    LocalOps ops = build_local_ops(mesh, c, sys.p);
    const Eigen::VectorXd f_T = f ? ops.load_moments(mesh, f) : Eigen::VectorXd::Zero(ops.nv);
    bulk.segment(c * nv, nv) = ops.recover(sys.local_face_coeffs(c, m), f_T);
  }
  return bulk;
}

double l2_error(const CondensedSystem& sys, const Eigen::VectorXd& bulk, const ScalarField& u) {
  const SimplicialMesh& mesh = *sys.mesh;
  const int nv = poly_space_dim(sys.p, mesh.dim());
  double err2 = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const Basis basis = Basis::make_cell(mesh, c, sys.p);
    const QuadratureRule rule = simplex_rule(mesh.cell_vertex_coords(c), 2 * (sys.p + 2));
    const Eigen::VectorXd vals = basis.values(rule.points) * bulk.segment(c * nv, nv);
    for (int q = 0; q < rule.size(); ++q) {
      const double diff = vals[q] - u(rule.points[q]);
      err2 += rule.weights[q] * diff * diff;
    }
  }
  return std::sqrt(err2);
}

double energy_error(const CondensedSystem& sys, const Eigen::VectorXd& bulk,
                    const Eigen::VectorXd& m, const VectorField& grad_u) {
  const SimplicialMesh& mesh = *sys.mesh;
  const int d = mesh.dim();
  const int nv = poly_space_dim(sys.p, d);
  double err2 = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    LocalOps ops = build_local_ops(mesh, c, sys.p);
    Eigen::VectorXd hybrid(ops.nv + ops.nf);
    hybrid.head(ops.nv) = bulk.segment(c * nv, nv);
    hybrid.tail(ops.nf) = sys.local_face_coeffs(c, m);
    const Eigen::VectorXd theta = ops.R * hybrid;

    const QuadratureRule rule = simplex_rule(mesh.cell_vertex_coords(c), 2 * (sys.p + 2));
    const auto G = ops.rec_basis.gradients(rule.points);
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector3d gu = grad_u(rule.points[q]);
      double dq2 = 0.0;
      for (int x = 0; x < d; ++x) {
        const double diff = G[x].row(q).dot(theta) - gu[x];
        dq2 += diff * diff;
      }
      err2 += rule.weights[q] * dq2;
    }
    err2 += hybrid.dot(ops.S * hybrid);
  }
  return std::sqrt(err2);
}

DiscreteHierarchy assemble_hierarchy(const MeshHierarchy& meshes, int p, const ScalarField& f,
                                     const ScalarField& g, const AssembleOptions& opts) {
  DiscreteHierarchy h;
  h.meshes = &meshes;
  h.p = p;
  const int L = meshes.num_levels();
  h.spaces.reserve(L);
  h.systems.reserve(L);
  h.cache.resize(L);
  for (int l = 0; l < L; ++l) {
    h.spaces.push_back(make_skeleton_space(meshes.level(l), p));
    const bool want_cache = l + 1 < L || opts.cache_top_level;
    h.systems.push_back(assemble(meshes.level(l), h.spaces[l], p, f, g,
                                 want_cache ? &h.cache[l] : nullptr));
  }
  return h;
}

}  // namespace hhomg
