#include "catgraph/graph.hpp"
#include "catgraph/oracles.hpp"
#include "catgraph/views.hpp"

#include "graphs.hpp"

#include <gtest/gtest.h>

#include <set>

namespace catgraph {
namespace {

using testing::random_digraph;

void expect_consistent(const GraphOracle& g)
{
    const std::uint64_t n = g.vertex_count();
    std::multiset<std::pair<Vertex, Vertex>> from_out;
    std::multiset<std::pair<Vertex, Vertex>> from_in;
    for (Vertex v = 0; v < n; ++v) {
        for (std::uint64_t i = 0; i < g.out_degree(v); ++i)
            from_out.emplace(v, g.out_neighbor(v, i));
        for (std::uint64_t i = 0; i < g.in_degree(v); ++i)
            from_in.emplace(g.in_neighbor(v, i), v);
        EXPECT_EQ(g.out_neighbor(v, g.out_degree(v)), kAbsent);
        EXPECT_EQ(g.in_neighbor(v, g.in_degree(v)), kAbsent);
    }
    EXPECT_EQ(from_out, from_in);
}

// ---------------------------------------------------------------------------
// load_graph

TEST(LoadGraph, PathGraph)
{
    const AdjacencyGraph g = load_graph("3 2\n0 1\n1 2");
    EXPECT_EQ(g.vertex_count(), 3u);
    EXPECT_EQ(g.edges(), 2u);
    EXPECT_TRUE(g.has_edge(0, 1));
    EXPECT_TRUE(g.has_edge(1, 2));
    EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(LoadGraph, IsolatedVertices)
{
    const AdjacencyGraph g = load_graph("2 0");
    EXPECT_EQ(g.vertex_count(), 2u);
    EXPECT_EQ(edge_count(g), 0u);
}

TEST(LoadGraph, Errors)
{
    EXPECT_THROW(load_graph("2 1\n0 5"), GraphFormatError);
    EXPECT_THROW(load_graph("2 2\n0 1\n0 1"), GraphFormatError);
    EXPECT_THROW(load_graph("2 1\n0"), GraphFormatError);
    EXPECT_THROW(load_graph("2 2\n0 1"), GraphFormatError);
    EXPECT_THROW(load_graph("x y"), GraphFormatError);
    EXPECT_THROW(load_graph(""), GraphFormatError);
}

TEST(LoadGraph, CommentsAndSortedInLists)
{
    const AdjacencyGraph g = load_graph("# header\n4 3\n# edges\n3 0\n1 0\n2 0\n");
    ASSERT_EQ(g.in_degree(0), 3u);
    EXPECT_EQ(g.in_neighbor(0, 0), 1u);
    EXPECT_EQ(g.in_neighbor(0, 1), 2u);
    EXPECT_EQ(g.in_neighbor(0, 2), 3u);
}

TEST(LoadGraph, RoundTrip)
{
    Rng rng(3);
    const AdjacencyGraph g = random_digraph(rng, 7, 0.3);
    const AdjacencyGraph h = load_graph(format_graph(g));
    EXPECT_EQ(g.edge_list(), h.edge_list());
}

TEST(AdjacencyGraph, OracleConsistency)
{
    Rng rng(8);
    for (int i = 0; i < 30; ++i)
        expect_consistent(random_digraph(rng, rng.uniform(1, 9), 0.4));
}

// ---------------------------------------------------------------------------
// Degree reduction

TEST(DegreeReducedView, StarTree)
{
    const AdjacencyGraph g = testing::star_graph();
    const DegreeReducedView view(g);
    const Vertex v = 4;
    auto in = [&](Vertex x) {
        std::vector<Vertex> out;
        for (std::uint64_t j = 0; j < view.in_degree(x); ++j)
            out.push_back(view.in_neighbor(x, j));
        return out;
    };
    EXPECT_EQ(in(view.encode(v, 0)), (std::vector<Vertex>{view.encode(v, 1), view.encode(v, 2)}));
    EXPECT_EQ(in(view.encode(v, 1)), (std::vector<Vertex>{view.encode(0, 0), view.encode(1, 0)}));
    EXPECT_EQ(in(view.encode(v, 2)), (std::vector<Vertex>{view.encode(2, 0), view.encode(3, 0)}));
}

TEST(DegreeReducedView, LowInDegreeKeepsEdges)
{
    const AdjacencyGraph g = testing::path_graph(5);
    const DegreeReducedView view(g);
    for (Vertex v = 0; v < 5; ++v) {
        EXPECT_EQ(view.tree_size(v), 1u);
        EXPECT_EQ(view.in_degree(v), g.in_degree(v));
        for (std::uint64_t j = 0; j < g.in_degree(v); ++j)
            EXPECT_EQ(view.in_neighbor(v, j), g.in_neighbor(v, j));
        EXPECT_EQ(view.out_degree(v), g.out_degree(v));
        for (std::uint64_t i = 1; i < 4; ++i)
            EXPECT_TRUE(view.is_isolated(view.encode(v, i)));
    }
}

TEST(DegreeReducedView, RandomReachabilityMatches)
{
    Rng rng(100);
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t n = rng.uniform(1, 8);
        const AdjacencyGraph g = random_digraph(rng, n, rng.unit());
        const DegreeReducedView view(g);
        const ReachMatrix base = bfs_reach(g);
        const ReachMatrix lifted = bfs_reach(view);
        for (Vertex s = 0; s < n; ++s)
            for (Vertex t = 0; t < n; ++t)
                EXPECT_EQ(base(s, t), lifted(s, t)) << "trial " << trial;
        for (Vertex x = 0; x < view.vertex_count(); ++x)
            EXPECT_LE(view.in_degree(x), 2u);
        expect_consistent(view);
    }
}

TEST(DegreeReducedView, EdgesProjectToBaseEdgesOrLoops)
{
    Rng rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        const AdjacencyGraph g = random_digraph(rng, rng.uniform(2, 7), 0.5);
        const DegreeReducedView view(g);
        for (Vertex x = 0; x < view.vertex_count(); ++x)
            for (std::uint64_t j = 0; j < view.in_degree(x); ++j) {
                const Vertex u = view.base_of(view.in_neighbor(x, j));
                const Vertex v = view.base_of(x);
                EXPECT_TRUE(u == v || g.has_edge(u, v));
            }
    }
}

TEST(DegreeReducedView, PathLengthBoundCoversShortestPaths)
{
    Rng rng(102);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t n = rng.uniform(2, 8);
        const AdjacencyGraph g = random_digraph(rng, n, rng.unit());
        const DegreeReducedView view(g);
        const std::uint64_t bound = view.path_length_bound();
        // BFS distances in the view from each base vertex.
        for (Vertex s = 0; s < n; ++s) {
            std::vector<std::uint64_t> dist(view.vertex_count(), kAbsent);
            std::vector<Vertex> frontier{s};
            dist[s] = 0;
            for (std::uint64_t k = 0; !frontier.empty(); ++k) {
                std::vector<Vertex> next;
                for (Vertex x : frontier)
                    for (Vertex y = 0; y < view.vertex_count(); ++y)
                        for (std::uint64_t j = 0; j < view.in_degree(y); ++j)
                            if (view.in_neighbor(y, j) == x && dist[y] == kAbsent) {
                                dist[y] = k + 1;
                                next.push_back(y);
                            }
                frontier = std::move(next);
            }
            for (Vertex t = 0; t < n; ++t)
                if (dist[t] != kAbsent)
                    EXPECT_LE(dist[t], bound);
        }
    }
}

TEST(DegreeReducedView, EnumerateEdgeless)
{
    const AdjacencyGraph g(4);
    const DegreeReducedView view(g);
    auto cursor = view.enumerate_nonisolated();
    EXPECT_FALSE(cursor.next().has_value());
}

TEST(DegreeReducedView, EnumerateStar)
{
    const AdjacencyGraph g = testing::star_graph();
    const DegreeReducedView view(g);
    std::vector<Vertex> seen;
    for (auto cursor = view.enumerate_nonisolated(); auto x = cursor.next();)
        seen.push_back(*x);
    const std::vector<Vertex> expected{0, 1, 2, 3, view.encode(4, 0), view.encode(4, 1), view.encode(4, 2)};
    EXPECT_EQ(seen, expected);
}

TEST(DegreeReducedView, EnumerateMatchesFullScan)
{
    Rng rng(103);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint64_t n = rng.uniform(1, 9);
        const AdjacencyGraph g = random_digraph(rng, n, rng.unit());
        const DegreeReducedView view(g);
        std::set<Vertex> scanned;
        for (Vertex x = 0; x < view.vertex_count(); ++x)
            if (view.in_degree(x) > 0 || view.out_degree(x) > 0)
                scanned.insert(x);
        std::vector<Vertex> listed;
        for (auto cursor = view.enumerate_nonisolated(); auto x = cursor.next();)
            listed.push_back(*x);
        EXPECT_EQ(std::set<Vertex>(listed.begin(), listed.end()), scanned);
        EXPECT_EQ(listed.size(), scanned.size());
        EXPECT_LE(listed.size(), 2 * g.edges() + n);
    }
}

// ---------------------------------------------------------------------------
// Layered lift

TEST(LayeredLiftView, DepthZeroIsAllSinks)
{
    const AdjacencyGraph g = testing::cycle_graph(3);
    const LayeredLiftView lift(g, 0);
    EXPECT_EQ(lift.vertex_count(), 3u);
    for (Vertex x = 0; x < 3; ++x) {
        EXPECT_EQ(lift.out_degree(x), 0u);
        EXPECT_EQ(lift.in_degree(x), 0u);
    }
}

TEST(LayeredLiftView, PathUnrolling)
{
    const AdjacencyGraph g = testing::path_graph(2);
    const LayeredLiftView lift(g, 2);
    EXPECT_EQ(edge_count(lift), 2u);
    EXPECT_EQ(lift.out_neighbor(lift.encode(0, 0), 0), lift.encode(1, 1));
    EXPECT_EQ(lift.out_degree(lift.encode(1, 1)), 0u);
    EXPECT_EQ(lift.out_neighbor(lift.encode(1, 0), 0), lift.encode(2, 1));
    for (Vertex v = 0; v < 2; ++v)
        EXPECT_EQ(lift.out_degree(lift.encode(2, v)), 0u);
}

TEST(LayeredLiftView, EdgeCountAndAcyclic)
{
    Rng rng(104);
    for (int trial = 0; trial < 40; ++trial) {
        const AdjacencyGraph g = random_digraph(rng, rng.uniform(1, 7), 0.5);
        const std::uint64_t T = rng.uniform(0, 5);
        const LayeredLiftView lift(g, T);
        EXPECT_EQ(edge_count(lift), g.edges() * T);
        EXPECT_TRUE(is_acyclic(lift));
        expect_consistent(lift);
        for (Vertex x = 0; x < lift.vertex_count(); ++x)
            EXPECT_EQ(lift.out_degree(x), lift.layer_of(x) < T ? g.out_degree(lift.base_of(x)) : 0u);
    }
}

// ---------------------------------------------------------------------------
// Virtual self-loop

TEST(SelfLoopView, SingleVertex)
{
    const AdjacencyGraph g(1);
    const SelfLoopView looped(g, 0);
    EXPECT_EQ(looped.out_degree(0), 1u);
    EXPECT_EQ(looped.out_neighbor(0, 0), 0u);
    EXPECT_EQ(count_paths(looped, 0, 7)[0], 1);
}

TEST(SelfLoopView, PathReachesLength5)
{
    const AdjacencyGraph g = testing::path_graph(2);
    const SelfLoopView looped(g, 1);
    EXPECT_EQ(count_paths(looped, 0, 5)[1], 1);
    expect_consistent(looped);
}

TEST(SelfLoopView, ReachabilityUnchanged)
{
    Rng rng(105);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint64_t n = rng.uniform(1, 8);
        const AdjacencyGraph g = random_digraph(rng, n, 0.3);
        const Vertex t = rng.uniform(0, n - 1);
        EXPECT_EQ(bfs_reach(g), bfs_reach(SelfLoopView(g, t)));
    }
}

TEST(SinkLoopView, LoopsEverySink)
{
    const AdjacencyGraph g = testing::path_graph(3);
    const SinkLoopView view(g);
    EXPECT_EQ(view.looped_count(), 1u);
    EXPECT_EQ(view.out_degree(2), 1u);
    EXPECT_EQ(view.out_neighbor(2, 0), 2u);
    expect_consistent(view);
}

} // namespace
} // namespace catgraph
