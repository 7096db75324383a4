#include <benchmark/benchmark.h>

#include <random>

#include "hdq/stats.hpp"

namespace {

using namespace hdq;

AssignmentMatrix synthetic_matrix(std::size_t problems, unsigned seed) {
    std::vector<std::string> ids;
    ids.reserve(problems);
    for (std::size_t i = 0; i < problems; ++i)
        ids.push_back("P" + std::to_string(i));
    std::vector<DimensionId> dims;
    for (const auto& d : registry()) dims.push_back(d.id);
    AssignmentMatrix m(std::move(ids), std::move(dims));
    std::mt19937 rng(seed);
    for (std::size_t row = 0; row < problems; ++row) {
        m.set(row, rng() % kDimensionCount, Cell::Primary);
        for (std::size_t col = 0; col < kDimensionCount; ++col)
            if (m.cell(row, col) == Cell::None && rng() % 100 < 12)
                m.set(row, col, Cell::Secondary);
    }
    return m;
}

void BM_chi_square(benchmark::State& state) {
    ContingencyTable t{4, 4, 0, 43};
    for (auto _ : state) benchmark::DoNotOptimize(chi_square(t));
}
BENCHMARK(BM_chi_square);

void BM_contingency(benchmark::State& state) {
    AssignmentMatrix m = synthetic_matrix(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            contingency(m, DimensionId::Compliance, DimensionId::Coherence));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_contingency)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_pairwise_independence(benchmark::State& state) {
    AssignmentMatrix m = synthetic_matrix(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(pairwise_independence(m));
}
BENCHMARK(BM_pairwise_independence)->Range(64, 4096);

void BM_solve_overlap(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_overlap(25, 24, 51, 8.6, 0.05));
}
BENCHMARK(BM_solve_overlap);

}  // namespace
