#include "catgraph/connectivity.hpp"
#include "catgraph/graph.hpp"
#include "catgraph/rng.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>

namespace {

using namespace catgraph;

/// n vertices, m random edges (capped at the (n-1)^2 available), none into
/// n-1: every run sees a no-path instance and executes all iterations.
AdjacencyGraph no_path_graph(std::uint64_t n, std::uint64_t m)
{
    m = std::min(m, (n - 1) * (n - 1));
    Rng rng(n * 1000 + m, Rng::Stream::Harness);
    AdjacencyGraph g(n);
    while (g.edges() < m) {
        const Vertex u = rng.uniform(0, n - 1);
        const Vertex v = rng.uniform(0, n - 2);
        if (u != v && !g.has_edge(u, v))
            g.add_edge(u, v);
    }
    return g;
}

void report(benchmark::State& state, const ConnectivityAnswer& a)
{
    state.counters["elapsed_steps"] = static_cast<double>(a.metrics.elapsed_steps);
    state.counters["workspace_bits"] = static_cast<double>(a.metrics.workspace_peak_bits);
    state.counters["catalytic_bits"] = static_cast<double>(a.metrics.catalytic_bits);
}

void BM_ConnectDet(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const AdjacencyGraph g = no_path_graph(n, 2 * n);
    CatalyticTape tape = CatalyticTape::make(tape_bits_det(n), TapeProfile::Random, 1);
    ConnectivityAnswer a;
    for (auto _ : state)
        a = connect_det(g, 0, n - 1, tape);
    report(state, a);
}
BENCHMARK(BM_ConnectDet)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

void BM_ConnectRand(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const auto m = static_cast<std::uint64_t>(state.range(1));
    const AdjacencyGraph g = no_path_graph(n, m);
    CatalyticTape tape = CatalyticTape::make(tape_bits_rand(n), TapeProfile::Random, 2);
    ConnectOptions opts;
    ConnectivityAnswer a;
    for (auto _ : state) {
        a = connect_rand(g, 0, n - 1, tape, opts);
        ++opts.seed;
    }
    report(state, a);
}
BENCHMARK(BM_ConnectRand)->ArgsProduct({{16}, {16, 32, 64, 128}})->Unit(benchmark::kMillisecond);

void BM_ConnectRevertible(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const AdjacencyGraph g = no_path_graph(n, 2 * n);
    CatalyticTape tape = CatalyticTape::make(tape_bits_revertible(n), TapeProfile::Random, 3);
    ConnectOptions opts;
    ConnectivityAnswer a;
    for (auto _ : state) {
        a = connect_revertible(g, 0, n - 1, tape, opts);
        ++opts.seed;
    }
    report(state, a);
}
BENCHMARK(BM_ConnectRevertible)->DenseRange(3, 6, 1)->Unit(benchmark::kMillisecond);

} // namespace
