#include "hhomg/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hhomg {

namespace {

double simplex_measure(int dim, const std::vector<Eigen::Vector3d>& v) {
  if (dim == 1) return (v[1] - v[0]).norm();
  if (dim == 2) {
    Eigen::Vector3d c = (v[1] - v[0]).cross(v[2] - v[0]);
    return 0.5 * c.norm();
  }
  Eigen::Matrix3d J;
  for (int i = 0; i < 3; ++i) J.col(i) = v[i + 1] - v[0];
  return std::abs(J.determinant()) / 6.0;
}

double diameter_of(const std::vector<Eigen::Vector3d>& v) {
  double d = 0.0;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) d = std::max(d, (v[i] - v[j]).norm());
  return d;
}

}  // namespace

SimplicialMesh SimplicialMesh::build(int dim, std::vector<Eigen::Vector3d> vertices,
                                     std::vector<std::array<int, 4>> cells) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("SimplicialMesh: dim must be 2 or 3");
  SimplicialMesh m;
  m.dim_ = dim;
  m.vertices_ = std::move(vertices);
  m.cells_ = std::move(cells);

  const int nc = m.num_cells();
  const int nvc = dim + 1;
  m.cell_faces_.assign(nc, {-1, -1, -1, -1});
  m.cell_volume_.assign(nc, 0.0);
  m.cell_diameter_.assign(nc, 0.0);
  m.cell_boundary_measure_.assign(nc, 0.0);

  std::map<std::array<int, 3>, int> face_ids;
  for (int c = 0; c < nc; ++c) {
    auto cv = m.cell_vertex_coords(c);
    m.cell_volume_[c] = simplex_measure(dim, cv);
    m.cell_diameter_[c] = diameter_of(cv);
    if (m.cell_volume_[c] <= 0.0) throw std::runtime_error("SimplicialMesh: degenerate cell");

    for (int lf = 0; lf < nvc; ++lf) {
      // local face lf = vertices of the cell except local vertex lf
      std::array<int, 3> key{-1, -1, -1};
      int k = 0;
      for (int lv = 0; lv < nvc; ++lv)
        if (lv != lf) key[k++] = m.cells_[c][lv];
      std::sort(key.begin(), key.begin() + dim);

      auto it = face_ids.find(key);
      int fid;
      if (it == face_ids.end()) {
        fid = static_cast<int>(m.faces_.size());
        face_ids.emplace(key, fid);
        Face f;
        f.v = key;
        f.cells[0] = c;
        std::vector<Eigen::Vector3d> fv;
        for (int i = 0; i < dim; ++i) fv.push_back(m.vertices_[key[i]]);
        f.measure = simplex_measure(dim - 1, fv);
        f.diameter = diameter_of(fv);
        f.centroid.setZero();
        for (const auto& p : fv) f.centroid += p;
        f.centroid /= dim;
        if (dim == 2) {
          Eigen::Vector3d t = fv[1] - fv[0];
          f.normal = Eigen::Vector3d(t.y(), -t.x(), 0.0).normalized();
        } else {
          f.normal = (fv[1] - fv[0]).cross(fv[2] - fv[0]).normalized();
        }
        // point out of cells[0]
        if (f.normal.dot(f.centroid - m.cell_centroid(c)) < 0.0) f.normal = -f.normal;
        m.faces_.push_back(f);
      } else {
        fid = it->second;
        Face& f = m.faces_[fid];
        if (f.cells[1] >= 0) throw std::runtime_error("SimplicialMesh: face with >2 cells");
        f.cells[1] = c;
      }
      m.cell_faces_[c][lf] = fid;
      m.cell_boundary_measure_[c] += m.faces_[fid].measure;
    }
  }
  m.num_interior_faces_ = 0;
  for (const Face& f : m.faces_)
    if (!f.on_boundary()) ++m.num_interior_faces_;
  return m;
}

Eigen::Vector3d SimplicialMesh::cell_centroid(int c) const {
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
  for (int lv = 0; lv < dim_ + 1; ++lv) x += vertices_[cells_[c][lv]];
  return x / (dim_ + 1);
}

std::vector<Eigen::Vector3d> SimplicialMesh::cell_vertex_coords(int c) const {
  std::vector<Eigen::Vector3d> v;
  v.reserve(dim_ + 1);
  for (int lv = 0; lv < dim_ + 1; ++lv) v.push_back(vertices_[cells_[c][lv]]);
  return v;
}

std::vector<Eigen::Vector3d> SimplicialMesh::face_vertex_coords(int f) const {
  std::vector<Eigen::Vector3d> v;
  v.reserve(dim_);
  for (int i = 0; i < dim_; ++i) v.push_back(vertices_[faces_[f].v[i]]);
  return v;
}

Eigen::Vector3d SimplicialMesh::outward_normal(int f, int c) const {
  const Face& face = faces_[f];
  if (face.cells[0] == c) return face.normal;
  if (face.cells[1] == c) return -face.normal;
  throw std::invalid_argument("outward_normal: cell not adjacent to face");
}

double SimplicialMesh::max_cell_diameter() const {
  return *std::max_element(cell_diameter_.begin(), cell_diameter_.end());
}

double SimplicialMesh::min_cell_diameter() const {
  return *std::min_element(cell_diameter_.begin(), cell_diameter_.end());
}

double SimplicialMesh::shape_regularity() const {
  double r = 0.0;
  for (int c = 0; c < num_cells(); ++c)
    r = std::max(r, std::pow(cell_diameter_[c], dim_) / cell_volume_[c]);
  return r;
}

bool SimplicialMesh::cell_contains(int c, const Eigen::Vector3d& x, double tol) const {
  // barycentric coordinates, orientation-agnostic
  auto cv = cell_vertex_coords(c);
  Eigen::MatrixXd A(dim_, dim_);
  Eigen::VectorXd rhs(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) A(i, j) = cv[j + 1][i] - cv[0][i];
    rhs[i] = x[i] - cv[0][i];
  }
  Eigen::VectorXd lam = A.fullPivLu().solve(rhs);
  double sum = 0.0;
  for (int i = 0; i < dim_; ++i) {
    if (lam[i] < -tol) return false;
    sum += lam[i];
  }
  return sum <= 1.0 + tol;
}

int SimplicialMesh::locate(const Eigen::Vector3d& x, double tol) const {
  for (int c = 0; c < num_cells(); ++c)
    if (cell_contains(c, x, tol)) return c;
  return -1;
}

SimplicialMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_mesh: cannot open " + path);
  int dim = 0, nv = 0, nc = 0;
  in >> dim >> nv >> nc;
  if (!in || (dim != 2 && dim != 3) || nv <= 0 || nc <= 0)
    throw std::runtime_error("read_mesh: corrupt header in " + path);
  std::vector<Eigen::Vector3d> vertices(nv, Eigen::Vector3d::Zero());
  for (int i = 0; i < nv; ++i)
    for (int d = 0; d < dim; ++d) in >> vertices[i][d];
  std::vector<std::array<int, 4>> cells(nc, {-1, -1, -1, -1});
  for (int c = 0; c < nc; ++c)
    for (int lv = 0; lv < dim + 1; ++lv) {
      in >> cells[c][lv];
      if (cells[c][lv] < 0 || cells[c][lv] >= nv)
        throw std::runtime_error("read_mesh: vertex index out of range in " + path);
    }
  if (!in) throw std::runtime_error("read_mesh: truncated file " + path);
  return SimplicialMesh::build(dim, std::move(vertices), std::move(cells));
}

std::vector<bool> boundary_vertex_mask(const SimplicialMesh& mesh) {
  std::vector<bool> mask(mesh.num_vertices(), false);
  for (const Face& f : mesh.faces())
    if (f.on_boundary())
      for (int i = 0; i < mesh.dim(); ++i) mask[f.v[i]] = true;
  return mask;
}

void write_mesh(const SimplicialMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_mesh: cannot open " + path);
  const int dim = mesh.dim();
  out << dim << " " << mesh.num_vertices() << " " << mesh.num_cells() << "\n";
  out.precision(17);
  for (const auto& v : mesh.vertices()) {
    for (int d = 0; d < dim; ++d) out << (d ? " " : "") << v[d];
    out << "\n";
  }
  for (const auto& c : mesh.cells()) {
    for (int lv = 0; lv < dim + 1; ++lv) out << (lv ? " " : "") << c[lv];
    out << "\n";
  }
}

}  // namespace hhomg
