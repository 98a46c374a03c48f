// Conforming simplicial meshes in 2D and 3D.
//
// Faces are derived from the cell list and canonicalized by their sorted
// vertex tuple; the face numbering is the (deterministic) first-discovery
// order over cells, which later fixes the skeletal DOF order and hence the
// Gauss-Seidel sweep order.

#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hhomg {

struct Face {
  std::array<int, 3> v{-1, -1, -1};      // sorted vertex ids (d entries used)
  std::array<int, 2> cells{-1, -1};      // adjacent cells, discovery order
  Eigen::Vector3d normal;                // unit normal, outward for cells[0]
  Eigen::Vector3d centroid;
  double measure = 0.0;                  // length (2D) or area (3D)
  double diameter = 0.0;
  bool on_boundary() const { return cells[1] < 0; }
};

class SimplicialMesh {
 public:
  SimplicialMesh() = default;

  /// Builds the full face/adjacency structure from raw vertices and cells.
  /// Cell tuples are kept in the given order (2D builders produce CCW cells;
  /// 3D builders produce the Kuhn/Bey ordering needed by refinement).
  static SimplicialMesh build(int dim, std::vector<Eigen::Vector3d> vertices,
                              std::vector<std::array<int, 4>> cells);

  int dim() const { return dim_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_interior_faces() const { return num_interior_faces_; }
  int vertices_per_cell() const { return dim_ + 1; }

  const std::vector<Eigen::Vector3d>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 4>>& cells() const { return cells_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_[f]; }

  /// Face ids of cell c; local face i sits opposite local vertex i.
  const std::array<int, 4>& cell_faces(int c) const { return cell_faces_[c]; }

  double cell_volume(int c) const { return cell_volume_[c]; }
  double cell_diameter(int c) const { return cell_diameter_[c]; }
  double cell_boundary_measure(int c) const { return cell_boundary_measure_[c]; }
  Eigen::Vector3d cell_centroid(int c) const;
  std::vector<Eigen::Vector3d> cell_vertex_coords(int c) const;
  std::vector<Eigen::Vector3d> face_vertex_coords(int f) const;

  /// Unit normal of face f pointing out of cell c (c must be adjacent).
  Eigen::Vector3d outward_normal(int f, int c) const;

  double max_cell_diameter() const;  // h_l
  double min_cell_diameter() const;
  /// max_T h_T^d / |T|, the shape-regularity witness.
  double shape_regularity() const;

  /// Locates the cell containing x (slow linear scan; testing helper).
  int locate(const Eigen::Vector3d& x, double tol = 1e-12) const;
  bool cell_contains(int c, const Eigen::Vector3d& x, double tol = 1e-12) const;

 private:
  int dim_ = 2;
  std::vector<Eigen::Vector3d> vertices_;
  std::vector<std::array<int, 4>> cells_;
  std::vector<Face> faces_;
  std::vector<std::array<int, 4>> cell_faces_;
  std::vector<double> cell_volume_;
  std::vector<double> cell_diameter_;
  std::vector<double> cell_boundary_measure_;
  int num_interior_faces_ = 0;
};

/// Reads/writes the plain ASCII format: "dim nv nc", nv coordinate lines,
/// nc zero-based cell index lines. Faces are derived, never stored.
SimplicialMesh read_mesh(const std::string& path);
void write_mesh(const SimplicialMesh& mesh, const std::string& path);

/// true for vertices lying on a boundary face.
std::vector<bool> boundary_vertex_mask(const SimplicialMesh& mesh);

}  // namespace hhomg
