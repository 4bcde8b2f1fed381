#include <benchmark/benchmark.h>

#include "evasive/evasive_core.hpp"
#include "evasive/extremal_witness.hpp"
#include "evasive/finite_field.hpp"
#include "evasive/random_algebraic.hpp"

namespace {

using namespace evasive;

void BM_Rref(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PrimeField f(1000003);
  Rng rng(1);
  FieldMatrix m(f, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.uniform(f.modulus());
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rref)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed);

void BM_ImageSet(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  Rng rng(2);
  const auto q = sample_map(p, 3, 2, construction_degree(3, 2), rng);
  for (auto _ : state) benchmark::DoNotOptimize(image_set(q));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * p * p));
}
BENCHMARK(BM_ImageSet)->Arg(7)->Arg(17)->Arg(31);

void BM_EnumOracle(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const auto c = construct_evasive(p, 3, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(max_intersection_enum(c.set, 1, Flavor::affine));
  state.counters["points"] = static_cast<double>(c.set.size());
}
BENCHMARK(BM_EnumOracle)->Arg(5)->Arg(7)->Arg(11);

void BM_SubsetOracle(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const auto c = construct_evasive(p, 3, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(max_intersection_subsets(c.set, 1, Flavor::affine));
  state.counters["points"] = static_cast<double>(c.set.size());
}
BENCHMARK(BM_SubsetOracle)->Arg(5)->Arg(7)->Arg(11);

void BM_FindBox(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  RPartiteHypergraph h({n, n});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (rng.uniform(4) != 0) h.add_edge({a, b});
  for (auto _ : state) benchmark::DoNotOptimize(find_box(h, {3, 3}));
}
BENCHMARK(BM_FindBox)->Arg(12)->Arg(24)->Arg(48);

}  // namespace

BENCHMARK_MAIN();
