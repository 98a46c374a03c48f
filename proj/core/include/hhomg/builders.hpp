// Coarse meshes of the computational domains.

#pragma once

#include <string>

#include "hhomg/mesh.hpp"

namespace hhomg {

/// Unit square cut into n x n squares, each split along the lower-left ->
/// upper-right diagonal: 2n^2 triangles, 3n^2+2n edges, 3n^2-2n interior.
SimplicialMesh build_structured_square(int n);

/// Coarse triangulation of the L-shape (-1,1)^2 \ [0,1]x[-1,0], loaded from
/// the bundled mesh file (24 triangles, re-entrant corner at the origin).
/// `path` overrides the bundled file location.
SimplicialMesh build_lshape_coarse(const std::string& path = "");

/// Unit cube cut into n^3 sub-cubes, each split into the six Kuhn tetrahedra
/// sharing the sub-cube diagonal: 6n^3 cells. Vertex tuples follow the
/// monotone-path ordering required by the Bey refinement rule.
SimplicialMesh build_cube_bey(int n);

/// Directory holding the bundled mesh files (HHOMG_DATA_DIR environment
/// variable, falling back to the compiled-in source location).
std::string data_dir();

}  // namespace hhomg
