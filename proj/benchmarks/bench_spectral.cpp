// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pentaspec/conditions.hpp"
#include "pentaspec/eigensolve.hpp"
#include "pentaspec/oracle.hpp"
#include "pentaspec/operators.hpp"
#include "pentaspec/recurrence.hpp"

using namespace pentaspec;

namespace {

CoefficientModel single_site_model() {
    CoefficientModel m = CoefficientModel::constant({0.0, 0.0, 1.0, 1.0});
    m.a.kind = BandKind::finite_support;
    m.a.overrides = {{1, 3.0}};
    m.b.kind = BandKind::finite_support;
    m.c.kind = BandKind::finite_support;
    return m;
}

} // namespace

static void BM_Apply(benchmark::State& state) {
    const BandOperator t0 = BandOperator::limit({0.0, 0.0, 1.0, 1.0});
    std::mt19937_64 rng(1);
    std::normal_distribution<double> gauss;
    std::vector<double> x(static_cast<std::size_t>(state.range(0)));
    for (double& v : x) v = gauss(rng);
    for (auto _ : state) {
        auto y = t0.apply(x);
        benchmark::DoNotOptimize(y);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Apply)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity();

static void BM_SectionEigenvalues(benchmark::State& state) {
    const FiniteSection section =
        BandOperator::limit({0.0, 0.0, 1.0, 1.0}).truncate(state.range(0));
    for (auto _ : state) {
        auto s = section_eigenvalues(section);
        benchmark::DoNotOptimize(s);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SectionEigenvalues)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

static void BM_MinimalSolution(benchmark::State& state) {
    const CoefficientModel model = single_site_model();
    for (auto _ : state) {
        auto r = minimal_solution(model, Chain::odd, Complex(3.1, 0.2), state.range(0));
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_MinimalSolution)->Arg(2)->Arg(64)->Arg(512);

static void BM_ShootGrid(benchmark::State& state) {
    const CoefficientModel model = single_site_model();
    for (auto _ : state) {
        auto records =
            find_real_eigenvalues(model, Chain::odd, ShootSide::direct, 2.1, 10.0, state.range(0));
        benchmark::DoNotOptimize(records);
    }
}
BENCHMARK(BM_ShootGrid)->Arg(50)->Arg(200);

static void BM_SeriesTerms(benchmark::State& state) {
    const CoefficientModel model = CoefficientModel::constant({0.0, 0.0, 1.0, 1.0});
    for (auto _ : state) {
        auto verdict = divergence_check(model, Chain::odd, 1.0);
        benchmark::DoNotOptimize(verdict);
    }
}
BENCHMARK(BM_SeriesTerms);

BENCHMARK_MAIN();
