#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "hhomg/builders.hpp"
#include "hhomg/hierarchy.hpp"

using namespace hhomg;

namespace {

int count_interior(const SimplicialMesh& m) { return m.num_interior_faces(); }

// conformity and measure bookkeeping shared by all mesh tests
void check_mesh_invariants(const SimplicialMesh& m) {
  for (const Face& f : m.faces()) {
    CHECK(f.cells[0] >= 0);
    if (!f.on_boundary()) CHECK(f.cells[1] != f.cells[0]);
  }
  for (int c = 0; c < m.num_cells(); ++c) {
    double sum = 0.0;
    for (int lf = 0; lf < m.dim() + 1; ++lf) {
      const int f = m.cell_faces(c)[lf];
      sum += m.face(f).measure;
      // outward normal points away from the centroid
      const Eigen::Vector3d nu = m.outward_normal(f, c);
      CHECK(nu.dot(m.face(f).centroid - m.cell_centroid(c)) > 0.0);
    }
    CHECK(sum == doctest::Approx(m.cell_boundary_measure(c)).epsilon(1e-12));
    CHECK(m.cell_volume(c) > 0.0);
  }
}

}  // namespace

TEST_CASE("structured square counts") {
  {
    const SimplicialMesh m = build_structured_square(1);
    CHECK(m.num_cells() == 2);
    CHECK(m.num_faces() == 5);
    CHECK(count_interior(m) == 1);
    check_mesh_invariants(m);
  }
  {
    const SimplicialMesh m = build_structured_square(4);
    CHECK(m.num_cells() == 32);
    CHECK(m.num_faces() == 56);
    CHECK(count_interior(m) == 40);
    check_mesh_invariants(m);
  }
  {
    // level 3 of the hierarchy: n = 32, 3008 interior edges = 6016 DOFs at p=1
    const SimplicialMesh m = build_structured_square(32);
    CHECK(count_interior(m) == 3008);
    CHECK(2 * count_interior(m) == 6016);
  }
}

TEST_CASE("square covers the unit area and is CCW oriented") {
  const SimplicialMesh m = build_structured_square(3);
  double area = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) {
    area += m.cell_volume(c);
    const auto v = m.cell_vertex_coords(c);
    const double cross = (v[1] - v[0]).cross(v[2] - v[0]).z();
    CHECK(cross > 0.0);
  }
  CHECK(area == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("lshape coarse mesh") {
  const SimplicialMesh m = build_lshape_coarse();
  CHECK(m.num_cells() == 24);
  double area = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) area += m.cell_volume(c);
  CHECK(area == doctest::Approx(3.0).epsilon(1e-12));
  bool origin = false;
  for (const auto& v : m.vertices())
    if (v.norm() < 1e-14) origin = true;
  CHECK(origin);
  check_mesh_invariants(m);

  // Table 5 sizing: 3 refinements -> 2240 interior edges -> 4480 DOFs at p=1
  MeshHierarchy h(m, 4);
  CHECK(h.level(3).num_interior_faces() == 2240);
  CHECK(2 * h.level(3).num_interior_faces() == 4480);
}

TEST_CASE("cube bey counts") {
  const SimplicialMesh m = build_cube_bey(1);
  CHECK(m.num_cells() == 6);
  CHECK(m.num_faces() == 18);
  CHECK(count_interior(m) == 6);
  double vol = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) vol += m.cell_volume(c);
  CHECK(vol == doctest::Approx(1.0).epsilon(1e-14));
  check_mesh_invariants(m);

  // level 3 sizing: n=8 gives 5760 interior faces -> 17280 DOFs at p=1
  const SimplicialMesh m8 = build_cube_bey(8);
  CHECK(m8.num_cells() == 6 * 512);
  CHECK(count_interior(m8) == 5760);
  CHECK(3 * count_interior(m8) == 17280);
}

TEST_CASE("red refinement of the square reproduces the structured mesh counts") {
  const SimplicialMesh coarse = build_structured_square(1);
  RefinedMesh fine = refine_uniform(coarse);
  CHECK(fine.mesh.num_cells() == 8);
  CHECK(fine.mesh.num_faces() == 16);  // 2E + 3C = 10 + 6
  CHECK(fine.mesh.num_faces() == build_structured_square(2).num_faces());
  CHECK(count_interior(fine.mesh) == count_interior(build_structured_square(2)));
  check_mesh_invariants(fine.mesh);

  // children are similar to the parent: areas quartered
  for (int c = 0; c < fine.mesh.num_cells(); ++c)
    CHECK(fine.mesh.cell_volume(c) ==
          doctest::Approx(0.25 * coarse.cell_volume(fine.cell_parent[c])).epsilon(1e-12));
}

TEST_CASE("bey refinement of the Kuhn cube reproduces the Kuhn decomposition") {
  const SimplicialMesh coarse = build_cube_bey(1);
  RefinedMesh fine = refine_uniform(coarse);
  CHECK(fine.mesh.num_cells() == 48);
  check_mesh_invariants(fine.mesh);

  // cell sets agree with the direct Kuhn construction of the half grid
  const SimplicialMesh direct = build_cube_bey(2);
  auto cell_key = [](const SimplicialMesh& m, int c) {
    std::vector<std::array<long, 3>> pts;
    for (const auto& p : m.cell_vertex_coords(c))
      pts.push_back({std::lround(p.x() * 1e6), std::lround(p.y() * 1e6), std::lround(p.z() * 1e6)});
    std::sort(pts.begin(), pts.end());
    return pts;
  };
  std::set<std::vector<std::array<long, 3>>> got, want;
  for (int c = 0; c < fine.mesh.num_cells(); ++c) got.insert(cell_key(fine.mesh, c));
  for (int c = 0; c < direct.num_cells(); ++c) want.insert(cell_key(direct, c));
  CHECK(got == want);
}

TEST_CASE("hierarchies are nested with bounded shape regularity") {
  for (const char* domain : {"square", "cube"}) {
    const SimplicialMesh coarse =
        std::string(domain) == "square" ? build_structured_square(4) : build_cube_bey(1);
    MeshHierarchy h(coarse, 4);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(0.0, 1.0);

    const double reg0 = h.level(0).shape_regularity();
    for (int l = 1; l < h.num_levels(); ++l) {
      const SimplicialMesh& fine = h.level(l);
      CHECK(h.refinement_ratio(l) == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(fine.shape_regularity() == doctest::Approx(reg0).epsilon(1e-9));
      CHECK(fine.max_cell_diameter() / fine.min_cell_diameter() <= 4.0);

      // random interior points of fine cells lie in the mapped parent cell
      for (int s = 0; s < 50; ++s) {
        const int c = static_cast<int>(rng() % fine.num_cells());
        auto v = fine.cell_vertex_coords(c);
        const double l0 = dist(rng), l1 = dist(rng) * (1 - l0);
        const double l2 = fine.dim() == 3 ? dist(rng) * (1 - l0 - l1) : 0.0;
        Eigen::Vector3d x = v[0] * (1 - l0 - l1 - l2) + v[1] * l0 + v[2] * l1;
        if (fine.dim() == 3) x += v[3] * l2;
        CHECK(h.level(l - 1).cell_contains(h.cell_parent(l)[c], x, 1e-10));
      }
    }
  }
}

TEST_CASE("face classification on the refined square") {
  const SimplicialMesh coarse = build_structured_square(1);
  RefinedMesh fine = refine_uniform(coarse);
  auto cls = classify_faces(coarse, fine.mesh, fine.cell_parent);

  int embedded = 0, interior = 0;
  for (int f = 0; f < fine.mesh.num_faces(); ++f) {
    if (cls[f].kind == FaceClass::Embedded) {
      ++embedded;
      if (fine.mesh.face(f).on_boundary()) CHECK(coarse.face(cls[f].parent).on_boundary());
    } else {
      ++interior;
    }
  }
  CHECK(embedded == 10);  // 2 per coarse edge
  CHECK(interior == 6);   // 3 per coarse triangle

  // fine faces embedded in a coarse face partition its measure
  std::map<int, double> covered;
  for (int f = 0; f < fine.mesh.num_faces(); ++f)
    if (cls[f].kind == FaceClass::Embedded) covered[cls[f].parent] += fine.mesh.face(f).measure;
  for (const auto& [cf, meas] : covered)
    CHECK(meas == doctest::Approx(coarse.face(cf).measure).epsilon(1e-12));
}

TEST_CASE("classification rejects non-nested input") {
  const SimplicialMesh coarse = build_structured_square(1);
  const SimplicialMesh other = build_structured_square(3);
  std::vector<int> bogus_parent(other.num_cells(), 0);
  CHECK_THROWS(classify_faces(coarse, other, bogus_parent));
}

TEST_CASE("mesh file round trip") {
  const SimplicialMesh m = build_structured_square(2);
  const std::string path = "roundtrip_square.msh";
  write_mesh(m, path);
  const SimplicialMesh back = read_mesh(path);
  CHECK(back.num_cells() == m.num_cells());
  CHECK(back.num_faces() == m.num_faces());
  for (int v = 0; v < m.num_vertices(); ++v)
    CHECK((back.vertices()[v] - m.vertices()[v]).norm() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS(read_mesh("does_not_exist.msh"));
}
