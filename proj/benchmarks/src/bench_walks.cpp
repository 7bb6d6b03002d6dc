#include "catgraph/graph.hpp"
#include "catgraph/random_walk.hpp"
#include "catgraph/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace catgraph;

/// Edges only from lower to higher ids, each present with probability p.
AdjacencyGraph layered_dag(std::uint64_t n, double p)
{
    Rng rng(n, Rng::Stream::Harness);
    AdjacencyGraph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.coin(p))
                g.add_edge(u, v);
    return g;
}

/// Every vertex has out-edges to v+1 and v+2 (mod n).
AdjacencyGraph circulant(std::uint64_t n)
{
    AdjacencyGraph g(n);
    for (Vertex v = 0; v < n; ++v) {
        g.add_edge(v, (v + 1) % n);
        g.add_edge(v, (v + 2) % n);
    }
    return g;
}

void report(benchmark::State& state, const RunMetrics& m)
{
    state.counters["elapsed_steps"] = static_cast<double>(m.elapsed_steps);
    state.counters["workspace_bits"] = static_cast<double>(m.workspace_peak_bits);
}

void BM_EstimateDag(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const AdjacencyGraph g = layered_dag(n, 0.2);
    CatalyticTape tape = CatalyticTape::make(tape_bits_dag(n, g.edges(), 0.1), TapeProfile::Random, 1);
    WalkAnswer a;
    for (auto _ : state)
        a = estimate_dag(g, 0, n - 1, 0.1, tape);
    report(state, a.metrics);
}
BENCHMARK(BM_EstimateDag)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

void BM_EstimateGeneral(benchmark::State& state)
{
    const auto T = static_cast<std::uint64_t>(state.range(0));
    const AdjacencyGraph g = circulant(10);
    CatalyticTape tape = CatalyticTape::make(tape_bits_general(10, g.edges(), T, 0.1), TapeProfile::Random, 2);
    WalkAnswer a;
    for (auto _ : state)
        a = estimate_general(g, 0, 5, T, 0.1, tape);
    report(state, a.metrics);
}
BENCHMARK(BM_EstimateGeneral)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

void BM_EstimateStationary(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const AdjacencyGraph g = circulant(n);
    CatalyticTape tape = CatalyticTape::make(n * rotor_width(g), TapeProfile::Random, 3);
    StationaryAnswer a;
    for (auto _ : state)
        a = estimate_stationary(g, 0, n, 0.05, tape);
    report(state, a.metrics);
}
BENCHMARK(BM_EstimateStationary)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

} // namespace
