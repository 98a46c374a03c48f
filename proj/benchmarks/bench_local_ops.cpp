#include <benchmark/benchmark.h>

#include "hhomg/builders.hpp"
#include "hhomg/local_ops.hpp"

using namespace hhomg;

static void BM_LocalOpsSquare(benchmark::State& state) {
  const SimplicialMesh mesh = build_structured_square(8);
  const int p = static_cast<int>(state.range(0));
  int c = 0;
  for (auto _ : state) {
    LocalOps ops = build_local_ops(mesh, c, p);
    benchmark::DoNotOptimize(ops.schur.data());
    c = (c + 1) % mesh.num_cells();
  }
}
BENCHMARK(BM_LocalOpsSquare)->Arg(1)->Arg(2)->Arg(3);

static void BM_LocalOpsCube(benchmark::State& state) {
  const SimplicialMesh mesh = build_cube_bey(2);
  const int p = static_cast<int>(state.range(0));
  int c = 0;
  for (auto _ : state) {
    LocalOps ops = build_local_ops(mesh, c, p);
    benchmark::DoNotOptimize(ops.schur.data());
    c = (c + 1) % mesh.num_cells();
  }
}
BENCHMARK(BM_LocalOpsCube)->Arg(1)->Arg(2);
