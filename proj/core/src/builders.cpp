#include "hhomg/builders.hpp"

#include <cstdlib>
#include <stdexcept>

namespace hhomg {

SimplicialMesh build_structured_square(int n) {
  if (n < 1) throw std::invalid_argument("build_structured_square: n must be >= 1");
  std::vector<Eigen::Vector3d> vertices;
  vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n, 0.0);

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 4>> cells;
  cells.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      cells.push_back({v00, v10, v11, -1});  // below the diagonal, CCW
      cells.push_back({v00, v11, v01, -1});  // above
    }
  return SimplicialMesh::build(2, std::move(vertices), std::move(cells));
}

std::string data_dir() {
  if (const char* env = std::getenv("HHOMG_DATA_DIR")) return env;
#ifdef HHOMG_DATA_DIR
  return HHOMG_DATA_DIR;
#else
  return ".";
#endif
}

SimplicialMesh build_lshape_coarse(const std::string& path) {
  const std::string file = path.empty() ? data_dir() + "/lshape_coarse.msh" : path;
  SimplicialMesh mesh = read_mesh(file);
  if (mesh.dim() != 2) throw std::runtime_error("build_lshape_coarse: expected a 2D mesh");
  bool origin_found = false;
  for (const auto& v : mesh.vertices())
    if (v.norm() < 1e-14) origin_found = true;
  if (!origin_found)
    throw std::runtime_error("build_lshape_coarse: re-entrant corner missing from " + file);
  return mesh;
}

SimplicialMesh build_cube_bey(int n) {
  if (n < 1) throw std::invalid_argument("build_cube_bey: n must be >= 1");
  std::vector<Eigen::Vector3d> vertices;
  vertices.reserve((n + 1) * (n + 1) * (n + 1));
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n,
                              static_cast<double>(k) / n);

  auto vid = [n](int i, int j, int k) { return (k * (n + 1) + j) * (n + 1) + i; };
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::array<int, 4>> cells;
  cells.reserve(6 * n * n * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (const auto& p : perms) {
          // monotone path from the sub-cube origin to the opposite corner
          std::array<int, 3> pos{i, j, k};
          std::array<int, 4> cell;
          cell[0] = vid(pos[0], pos[1], pos[2]);
          for (int s = 0; s < 3; ++s) {
            ++pos[p[s]];
            cell[s + 1] = vid(pos[0], pos[1], pos[2]);
          }
          cells.push_back(cell);
        }
  return SimplicialMesh::build(3, std::move(vertices), std::move(cells));
}

}  // namespace hhomg
