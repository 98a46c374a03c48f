// Nested mesh hierarchies: uniform red (2D) / Bey (3D) refinement, fine->
// coarse parent maps and the embedded/interior classification of fine faces
// against the coarse skeleton.

#pragma once

#include <vector>

#include "hhomg/mesh.hpp"

namespace hhomg {

struct RefinedMesh {
  SimplicialMesh mesh;
  std::vector<int> cell_parent;  // fine cell -> coarse cell
};

/// One uniform refinement step. 2D: red refinement, 4 similar children per
/// triangle. 3D: Bey's 8-child rule applied to the stored vertex ordering.
RefinedMesh refine_uniform(const SimplicialMesh& mesh);

struct FaceClass {
  enum Kind { Embedded, Interior };
  Kind kind = Interior;
  int parent = -1;  // coarse face id (Embedded) or coarse cell id (Interior)
};

/// Tags every fine face as Embedded in a coarse face or Interior to a coarse
/// cell. Throws if the pair is not nested.
std::vector<FaceClass> classify_faces(const SimplicialMesh& coarse, const SimplicialMesh& fine,
                                      const std::vector<int>& cell_parent);

class MeshHierarchy {
 public:
  MeshHierarchy(SimplicialMesh coarse, int num_levels);

  int num_levels() const { return static_cast<int>(levels_.size()); }
  const SimplicialMesh& level(int l) const { return levels_[l]; }
  /// Parent map between levels l-1 and l (indexed by fine cell).
  const std::vector<int>& cell_parent(int l) const { return cell_parent_[l - 1]; }
  /// Face classification of level l against level l-1 (indexed by fine face).
  const std::vector<FaceClass>& face_class(int l) const { return face_class_[l - 1]; }

  double refinement_ratio(int l) const;  // h_l / h_{l-1}

 private:
  std::vector<SimplicialMesh> levels_;
  std::vector<std::vector<int>> cell_parent_;
  std::vector<std::vector<FaceClass>> face_class_;
};

}  // namespace hhomg
