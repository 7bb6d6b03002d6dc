#pragma once

#include "catgraph/graph.hpp"

#include <optional>

namespace catgraph {

/// Replaces every vertex v of in-degree d >= 2 by a heap-indexed binary tree
/// of d-1 nodes (v,0)..(v,d-2) with edges pointing toward the root (v,0); the
/// tree's d leaf slots are fed by (u_1,0)..(u_d,0), the in-neighbors of v in
/// ascending order. Vertices of in-degree < 2 keep a single node (v,0).
///
/// Node (v,i) is encoded as v + n*i, so base vertices keep their ids and the
/// view has n * max(n-1, 1) vertex ids; ids whose index lies beyond the tree
/// of their base vertex are isolated. Every view vertex has in-degree <= 2.
///
/// The view is lazy: every query is answered from base-graph queries.
/// out_neighbor is answered by exhaustive search over all view vertices and
/// is slow; the connectivity algorithms never call it.
class DegreeReducedView final : public GraphOracle {
public:
    /// The base graph must outlive the view and have in-degrees <= n.
    explicit DegreeReducedView(const GraphOracle& base);

    std::uint64_t base_vertex_count() const noexcept { return n_; }
    std::uint64_t vertex_count() const override { return n_ * (n_ > 1 ? n_ - 1 : 1); }
    std::uint64_t in_degree(Vertex x) const override;
    std::uint64_t out_degree(Vertex x) const override;
    Vertex in_neighbor(Vertex x, std::uint64_t j) const override;
    Vertex out_neighbor(Vertex x, std::uint64_t j) const override;

    Vertex encode(Vertex v, std::uint64_t i) const noexcept { return v + n_ * i; }
    Vertex base_of(Vertex x) const noexcept { return x % n_; }
    std::uint64_t index_of(Vertex x) const noexcept { return x / n_; }

    /// True iff x names a tree node: (v,0), or (v,i) with 1 <= i <= indeg(v)-2.
    bool is_tree_node(Vertex x) const;
    bool is_isolated(Vertex x) const;

    /// Number of tree nodes (v,0), (v,1), ... for base vertex v.
    std::uint64_t tree_size(Vertex v) const;

    /// Upper bound on the number of view edges needed to cross one base edge
    /// (leaf-to-root depth of the deepest tree), at least 1.
    std::uint64_t stretch_bound() const noexcept;

    /// Length bound for view paths between base vertices: (n-1) * stretch,
    /// at least 1.
    std::uint64_t path_length_bound() const noexcept;

    /// Streams the non-isolated view vertices: base vertex by base vertex, and
    /// within a base vertex by ascending tree index. Holds O(log n) bits.
    class NonIsolatedCursor {
    public:
        explicit NonIsolatedCursor(const DegreeReducedView& view) : view_(&view) {}
        std::optional<Vertex> next();

    private:
        const DegreeReducedView* view_;
        Vertex v_ = 0;
        std::uint64_t i_ = 0;
    };

    NonIsolatedCursor enumerate_nonisolated() const { return NonIsolatedCursor(*this); }

    /// Position of a view vertex in the enumeration order, as a comparable key.
    std::pair<Vertex, std::uint64_t> order_key(Vertex x) const noexcept { return {base_of(x), index_of(x)}; }

private:
    const GraphOracle* base_;
    std::uint64_t n_;
};

/// T+1 copies of the base graph with every edge (u,v) lifted to
/// ((i,u),(i+1,v)) for i < T. Vertex (i,v) is encoded as i*n + v. Acyclic;
/// every layer-T vertex is a sink.
class LayeredLiftView final : public GraphOracle {
public:
    LayeredLiftView(const GraphOracle& base, std::uint64_t layers_minus_one);

    std::uint64_t depth() const noexcept { return t_; }
    std::uint64_t base_vertex_count() const noexcept { return n_; }
    Vertex encode(std::uint64_t layer, Vertex v) const noexcept { return layer * n_ + v; }
    std::uint64_t layer_of(Vertex x) const noexcept { return x / n_; }
    Vertex base_of(Vertex x) const noexcept { return x % n_; }

    std::uint64_t vertex_count() const override { return (t_ + 1) * n_; }
    std::uint64_t in_degree(Vertex x) const override;
    std::uint64_t out_degree(Vertex x) const override;
    Vertex in_neighbor(Vertex x, std::uint64_t j) const override;
    Vertex out_neighbor(Vertex x, std::uint64_t j) const override;

private:
    const GraphOracle* base_;
    std::uint64_t n_;
    std::uint64_t t_;
};

/// The base graph plus one extra edge (t,t), appended as the last in- and
/// out-neighbor of t.
class SelfLoopView final : public GraphOracle {
public:
    SelfLoopView(const GraphOracle& base, Vertex t);

    Vertex looped() const noexcept { return t_; }
    std::uint64_t vertex_count() const override { return base_->vertex_count(); }
    std::uint64_t in_degree(Vertex v) const override;
    std::uint64_t out_degree(Vertex v) const override;
    Vertex in_neighbor(Vertex v, std::uint64_t i) const override;
    Vertex out_neighbor(Vertex v, std::uint64_t i) const override;

private:
    const GraphOracle* base_;
    Vertex t_;
};

/// The base graph plus a self-loop at every sink, so that walks never stop.
class SinkLoopView final : public GraphOracle {
public:
    explicit SinkLoopView(const GraphOracle& base) : base_(&base) {}

    /// Number of sinks of the base graph (a linear scan).
    std::uint64_t looped_count() const;

    std::uint64_t vertex_count() const override { return base_->vertex_count(); }
    std::uint64_t in_degree(Vertex v) const override;
    std::uint64_t out_degree(Vertex v) const override;
    Vertex in_neighbor(Vertex v, std::uint64_t i) const override;
    Vertex out_neighbor(Vertex v, std::uint64_t i) const override;

private:
    bool is_sink(Vertex v) const { return base_->out_degree(v) == 0; }
    const GraphOracle* base_;
};

/// Depth bound of the trees built by DegreeReducedView for in-degrees <= n:
/// floor(log2(2n-1)), at least 1.
std::uint64_t degree_reduction_stretch(std::uint64_t n) noexcept;

inline DegreeReducedView reduce_degree(const GraphOracle& g) { return DegreeReducedView(g); }
inline LayeredLiftView lift_layered(const GraphOracle& g, std::uint64_t t) { return LayeredLiftView(g, t); }
inline SelfLoopView add_virtual_self_loop(const GraphOracle& g, Vertex t) { return SelfLoopView(g, t); }

} // namespace catgraph
