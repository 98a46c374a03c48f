#include <benchmark/benchmark.h>

#include "hhomg/problems.hpp"

using namespace hhomg;

static void BM_VCycleSquare(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const Problem pb = make_problem("square");
  static std::map<int, std::tuple<MeshHierarchy, DiscreteHierarchy, std::vector<TransferPair>>>
      cache;
  auto it = cache.find(level);
  if (it == cache.end()) {
    MeshHierarchy meshes(pb.coarse_mesh(), level + 1);
    DiscreteHierarchy hier = assemble_hierarchy(meshes, 1, pb.source, nullptr);
    auto transfers = build_transfers(hier, InjectionKind::I3);
    it = cache.emplace(level, std::make_tuple(std::move(meshes), std::move(hier),
                                              std::move(transfers)))
             .first;
    // the hierarchy holds a pointer to its mesh hierarchy: rebind after move
    std::get<1>(it->second).meshes = &std::get<0>(it->second);
  }
  const auto& hier = std::get<1>(it->second);
  const auto& transfers = std::get<2>(it->second);
  std::vector<const CondensedSystem*> systems;
  std::vector<const TransferPair*> pairs;
  for (int l = 0; l <= level; ++l) {
    systems.push_back(&hier.systems[l]);
    pairs.push_back(&transfers[l]);
  }
  MultigridSolver solver(systems, pairs, make_cycle("v11"));
  for (auto _ : state) {
    Eigen::VectorXd x = solver.v_cycle(level, hier.systems[level].b);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_VCycleSquare)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
