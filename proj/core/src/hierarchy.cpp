#include "hhomg/hierarchy.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hhomg {

namespace {

// Midpoint vertices are created on first touch, iterating cells in order.
struct EdgeMidpoints {
  std::map<std::pair<int, int>, int> ids;
  std::vector<Eigen::Vector3d>* vertices;

  int get(int a, int b) {
    auto key = std::minmax(a, b);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(vertices->size());
    vertices->push_back(0.5 * ((*vertices)[a] + (*vertices)[b]));
    ids.emplace(key, id);
    return id;
  }
};

}  // namespace

RefinedMesh refine_uniform(const SimplicialMesh& mesh) {
  const int dim = mesh.dim();
  std::vector<Eigen::Vector3d> vertices = mesh.vertices();
  EdgeMidpoints mid{{}, &vertices};

  std::vector<std::array<int, 4>> cells;
  std::vector<int> parent;
  cells.reserve(mesh.num_cells() * (dim == 2 ? 4 : 8));
  parent.reserve(cells.capacity());

  auto push = [&](std::array<int, 4> c, int par) {
    cells.push_back(c);
    parent.push_back(par);
  };

  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& v = mesh.cells()[c];
    if (dim == 2) {
      const int m01 = mid.get(v[0], v[1]);
      const int m12 = mid.get(v[1], v[2]);
      const int m02 = mid.get(v[0], v[2]);
      push({v[0], m01, m02, -1}, c);
      push({m01, v[1], m12, -1}, c);
      push({m02, m12, v[2], -1}, c);
      push({m01, m12, m02, -1}, c);
    } else {
      const int m01 = mid.get(v[0], v[1]);
      const int m02 = mid.get(v[0], v[2]);
      const int m03 = mid.get(v[0], v[3]);
      const int m12 = mid.get(v[1], v[2]);
      const int m13 = mid.get(v[1], v[3]);
      const int m23 = mid.get(v[2], v[3]);
      // Bey's rule: four corner children plus the octahedron cut along the
      // m02-m13 diagonal.
      push({v[0], m01, m02, m03}, c);
      push({m01, v[1], m12, m13}, c);
      push({m02, m12, v[2], m23}, c);
      push({m03, m13, m23, v[3]}, c);
      push({m01, m02, m03, m13}, c);
      push({m01, m02, m12, m13}, c);
      push({m02, m03, m13, m23}, c);
      push({m02, m12, m13, m23}, c);
    }
  }
  RefinedMesh out;
  out.mesh = SimplicialMesh::build(dim, std::move(vertices), std::move(cells));
  out.cell_parent = std::move(parent);
  return out;
}

namespace {

// x lies on the affine hull of the coarse face and inside it.
bool face_contains(const SimplicialMesh& coarse, int cf, const Eigen::Vector3d& x, double tol) {
  const Face& f = coarse.face(cf);
  auto fv = coarse.face_vertex_coords(cf);
  if (std::abs(f.normal.dot(x - fv[0])) > tol) return false;
  if (coarse.dim() == 2) {
    Eigen::Vector3d t = fv[1] - fv[0];
    const double s = t.dot(x - fv[0]) / t.squaredNorm();
    return s >= -tol && s <= 1.0 + tol;
  }
  // barycentric in the face plane
  Eigen::Vector3d e1 = fv[1] - fv[0], e2 = fv[2] - fv[0], r = x - fv[0];
  Eigen::Matrix2d G;
  G << e1.dot(e1), e1.dot(e2), e2.dot(e1), e2.dot(e2);
  Eigen::Vector2d rhs(e1.dot(r), e2.dot(r));
  Eigen::Vector2d lam = G.ldlt().solve(rhs);
  return lam[0] >= -tol && lam[1] >= -tol && lam[0] + lam[1] <= 1.0 + tol;
}

}  // namespace

std::vector<FaceClass> classify_faces(const SimplicialMesh& coarse, const SimplicialMesh& fine,
                                      const std::vector<int>& cell_parent) {
  if (static_cast<int>(cell_parent.size()) != fine.num_cells())
    throw std::invalid_argument("classify_faces: parent map size mismatch");
  std::vector<FaceClass> cls(fine.num_faces());
  const double tol = 1e-9 * coarse.max_cell_diameter();

  for (int ff = 0; ff < fine.num_faces(); ++ff) {
    const Face& f = fine.face(ff);
    const int pc0 = cell_parent[f.cells[0]];
    const int pc1 = f.on_boundary() ? pc0 : cell_parent[f.cells[1]];

    auto fv = fine.face_vertex_coords(ff);
    int embedded_in = -1;
    for (int side = 0; side < 2 && embedded_in < 0; ++side) {
      const int pc = side == 0 ? pc0 : pc1;
      for (int lf = 0; lf < coarse.dim() + 1; ++lf) {
        const int cf = coarse.cell_faces(pc)[lf];
        bool inside = true;
        for (const auto& p : fv)
          if (!face_contains(coarse, cf, p, tol)) {
            inside = false;
            break;
          }
        if (inside) {
          embedded_in = cf;
          break;
        }
      }
    }

    if (embedded_in >= 0) {
      cls[ff] = {FaceClass::Embedded, embedded_in};
    } else {
      if (pc0 != pc1)
        throw std::runtime_error(
            "classify_faces: non-nested input (face between different coarse cells is not on "
            "the coarse skeleton)");
      if (f.on_boundary())
        throw std::runtime_error("classify_faces: boundary fine face not embedded");
      cls[ff] = {FaceClass::Interior, pc0};
    }
  }
  return cls;
}

MeshHierarchy::MeshHierarchy(SimplicialMesh coarse, int num_levels) {
  if (num_levels < 1) throw std::invalid_argument("MeshHierarchy: need at least one level");
  levels_.reserve(num_levels);
  levels_.push_back(std::move(coarse));
  for (int l = 1; l < num_levels; ++l) {
    RefinedMesh r = refine_uniform(levels_.back());
    face_class_.push_back(classify_faces(levels_.back(), r.mesh, r.cell_parent));
    levels_.push_back(std::move(r.mesh));
    cell_parent_.push_back(std::move(r.cell_parent));
  }
}

double MeshHierarchy::refinement_ratio(int l) const {
  return levels_[l].max_cell_diameter() / levels_[l - 1].max_cell_diameter();
}

}  // namespace hhomg
