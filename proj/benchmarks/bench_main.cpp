// Winnow variants on growing instances, plus the symbolic operations behind
// revision.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "prefrev/algebra.hpp"
#include "prefrev/axioms.hpp"
#include "prefrev/parser.hpp"
#include "prefrev/revision.hpp"
#include "prefrev/winnow.hpp"

using namespace prefrev;

namespace {

Schema car_schema() { return Schema("Car", {{"make", Domain::D}, {"year", Domain::Q}}); }

PrefRelation car(const char* text) { return parse_formula(text, car_schema()); }

RelationInstance random_cars(std::size_t n, std::uint64_t seed) {
  static const char* makes[] = {"VW", "Kia", "Fiat", "Opel", "Audi", "Seat"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> make(0, 5), year(0, 1'000'000);
  std::vector<Tuple> ts;
  ts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ts.push_back({std::string(makes[make(rng)]), Rational(year(rng))});
  return RelationInstance(car_schema(), std::move(ts));
}

const PrefRelation& cstar() {
  static const PrefRelation p =
      car("L.make = R.make and L.year > R.year or L.make = 'VW' and R.make != 'VW' and L.year >= R.year");
  return p;
}

const PrefRelation& newer() {
  static const PrefRelation p = car("L.year > R.year or L.year = R.year and L.make = 'VW' and R.make != 'VW'");
  return p;
}

void BM_WinnowGeneric(benchmark::State& state) {
  RelationInstance r = random_cars(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(winnow_generic(cstar(), r));
  state.SetComplexityN(state.range(0));
}

void BM_WinnowBnl(benchmark::State& state) {
  RelationInstance r = random_cars(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(winnow_bnl(cstar(), r));
  state.SetComplexityN(state.range(0));
}

void BM_WinnowWeak(benchmark::State& state) {
  RelationInstance r = random_cars(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(winnow_weak(newer(), r));
  state.SetComplexityN(state.range(0));
}

void BM_TransitiveClosureC1C2(benchmark::State& state) {
  PrefRelation u = union_pref(car("L.make = R.make and L.year > R.year"),
                              car("L.make = 'VW' and R.make != 'VW' and L.year = R.year"));
  for (auto _ : state) benchmark::DoNotOptimize(transitive_closure(u));
}

void BM_ClassifyCstar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classify(cstar()));
}

void BM_RefineC1C2(benchmark::State& state) {
  PrefRelation c1 = car("L.make = R.make and L.year > R.year");
  PrefRelation c2 = car("L.make = 'VW' and R.make != 'VW' and L.year = R.year");
  for (auto _ : state) benchmark::DoNotOptimize(refine(c1, c2));
}

}  // namespace

BENCHMARK(BM_WinnowGeneric)->RangeMultiplier(4)->Range(16, 4096)->Complexity();
BENCHMARK(BM_WinnowBnl)->RangeMultiplier(4)->Range(16, 4096)->Complexity();
BENCHMARK(BM_WinnowWeak)->RangeMultiplier(4)->Range(16, 4096)->Complexity();
BENCHMARK(BM_TransitiveClosureC1C2);
BENCHMARK(BM_ClassifyCstar);
BENCHMARK(BM_RefineC1C2);
BENCHMARK_MAIN();
