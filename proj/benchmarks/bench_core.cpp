#include <benchmark/benchmark.h>

#include "sigmarot/analysis.hpp"

using namespace sigmarot;

namespace {

PAMap example_map() {
  SigmaSpace sp(Rat(0));
  PAMap m;
  m.space = sp;
  m.line = {{Rat(0), sp.line(Rat(0))}, {Rat(1), sp.line(Rat(1))}};
  m.branch = {{Rat(0), sp.line(Rat(0))},
              {rat(1, 4), sp.branch(0, Rat(1))},
              {rat(1, 2), sp.line(Rat(0))},
              {rat(3, 4), sp.line(Rat(1))},
              {Rat(1), sp.branch(1, Rat(1))}};
  return m;
}

void bm_evaluate_orbit(benchmark::State& state) {
  PAMap m = example_map();
  Point x = m.space.branch(0, rat(1, 5));
  for (auto _ : state) {
    Point z = x;
    for (int i = 0; i < 64; ++i) z = evaluate(m, z);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(bm_evaluate_orbit);

void bm_image_of_segment(benchmark::State& state) {
  PAMap m = example_map();
  BranchSegment s{0, rat(1, 3), rat(7, 8)};
  for (auto _ : state) {
    auto arcs = image_of_segment(m, s);
    benchmark::DoNotOptimize(arcs);
  }
}
BENCHMARK(bm_image_of_segment);

void bm_rotation_set(benchmark::State& state) {
  PAMap m = example_map();
  for (auto _ : state) {
    RotationSet rs = rotation_set(m);
    benchmark::DoNotOptimize(rs);
  }
}
BENCHMARK(bm_rotation_set);

void bm_cycle_mean_range(benchmark::State& state) {
  PAMap m = example_map();
  Partition part = partition_XF(m);
  MarkovResult mk = markov_partition(m, part);
  MarkovGraph g = build_markov_graph(m, mk.vertices);
  for (auto _ : state) {
    CycleMeanResult cm = cycle_mean_range(g);
    benchmark::DoNotOptimize(cm);
  }
}
BENCHMARK(bm_cycle_mean_range);

}  // namespace

BENCHMARK_MAIN();
