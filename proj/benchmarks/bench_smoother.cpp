#include <benchmark/benchmark.h>

#include "hhomg/problems.hpp"
#include "hhomg/smoother.hpp"

using namespace hhomg;

namespace {

const CondensedSystem& square_system(int level, int p) {
  struct Key {
    int level, p;
    bool operator<(const Key& o) const { return std::tie(level, p) < std::tie(o.level, o.p); }
  };
  static std::map<Key, CondensedSystem> cache;
  const Key key{level, p};
  auto it = cache.find(key);
  if (it == cache.end()) {
    const Problem pb = make_problem("square");
    MeshHierarchy meshes(pb.coarse_mesh(), level + 1);
    const SkeletonSpace space = make_skeleton_space(meshes.level(level), p);
    it = cache.emplace(key, assemble(meshes.level(level), space, p, pb.source, nullptr)).first;
  }
  return it->second;
}

}  // namespace

static void BM_GaussSeidelSweep(benchmark::State& state) {
  const CondensedSystem& sys = square_system(static_cast<int>(state.range(0)), 1);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.space.dim);
  bool forward = true;
  for (auto _ : state) {
    gauss_seidel_sweep(sys.A, x, sys.b,
                       forward ? SweepDirection::Forward : SweepDirection::Backward);
    forward = !forward;
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * sys.A.nonZeros());
}
BENCHMARK(BM_GaussSeidelSweep)->Arg(3)->Arg(4);
