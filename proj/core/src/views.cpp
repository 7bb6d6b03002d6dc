#include "catgraph/views.hpp"

#include <bit>
#include <stdexcept>

namespace catgraph {

// ---------------------------------------------------------------------------
// DegreeReducedView

DegreeReducedView::DegreeReducedView(const GraphOracle& base) : base_(&base), n_(base.vertex_count()) {}

bool DegreeReducedView::is_tree_node(Vertex x) const
{
    if (n_ == 0 || x >= vertex_count())
        return false;
    const std::uint64_t i = index_of(x);
    if (i == 0)
        return true;
    const std::uint64_t d = base_->in_degree(base_of(x));
    return d >= 2 && i <= d - 2;
}

std::uint64_t DegreeReducedView::tree_size(Vertex v) const
{
    const std::uint64_t d = base_->in_degree(v);
    return d >= 2 ? d - 1 : 1;
}

bool DegreeReducedView::is_isolated(Vertex x) const
{
    if (!is_tree_node(x))
        return true;
    if (index_of(x) > 0)
        return false;
    const Vertex v = base_of(x);
    return base_->in_degree(v) == 0 && base_->out_degree(v) == 0;
}

std::uint64_t DegreeReducedView::in_degree(Vertex x) const
{
    if (!is_tree_node(x))
        return 0;
    const std::uint64_t d = base_->in_degree(base_of(x));
    return d >= 2 ? 2 : d;
}

std::uint64_t DegreeReducedView::out_degree(Vertex x) const
{
    if (!is_tree_node(x))
        return 0;
    if (index_of(x) > 0)
        return 1;
    return base_->out_degree(base_of(x));
}

Vertex DegreeReducedView::in_neighbor(Vertex x, std::uint64_t j) const
{
    if (!is_tree_node(x))
        return kAbsent;
    const Vertex v = base_of(x);
    const std::uint64_t d = base_->in_degree(v);
    if (d < 2)
        return j < d ? encode(base_->in_neighbor(v, j), 0) : kAbsent;
    if (j >= 2)
        return kAbsent;
    // Heap layout: internal nodes 0..d-2, leaf slots d-1..2d-2.
    const std::uint64_t child = 2 * index_of(x) + 1 + j;
    if (child <= d - 2)
        return encode(v, child);
    return encode(base_->in_neighbor(v, child - (d - 1)), 0);
}

Vertex DegreeReducedView::out_neighbor(Vertex x, std::uint64_t j) const
{
    if (!is_tree_node(x))
        return kAbsent;
    if (index_of(x) > 0)
        return j == 0 ? encode(base_of(x), (index_of(x) - 1) / 2) : kAbsent;
    // Exhaustive search in ascending id order.
    std::uint64_t seen = 0;
    const std::uint64_t total = vertex_count();
    for (Vertex y = 0; y < total; ++y) {
        const std::uint64_t deg = in_degree(y);
        for (std::uint64_t k = 0; k < deg; ++k) {
            if (in_neighbor(y, k) == x) {
                if (seen == j)
                    return y;
                ++seen;
            }
        }
    }
    return kAbsent;
}

std::uint64_t degree_reduction_stretch(std::uint64_t n) noexcept
{
    // A leaf slot at heap position c sits at depth floor(log2(c+1)); the
    // deepest slot of a tree with in-degree d is 2d-2. Bounded with d <= n.
    if (n < 2)
        return 1;
    const std::uint64_t deepest = 2 * n - 2;
    const std::uint64_t depth = static_cast<std::uint64_t>(std::bit_width(deepest + 1)) - 1;
    return depth == 0 ? 1 : depth;
}

std::uint64_t DegreeReducedView::stretch_bound() const noexcept
{
    return degree_reduction_stretch(n_);
}

std::uint64_t DegreeReducedView::path_length_bound() const noexcept
{
    const std::uint64_t hops = n_ > 1 ? n_ - 1 : 1;
    return hops * stretch_bound();
}

std::optional<Vertex> DegreeReducedView::NonIsolatedCursor::next()
{
    const std::uint64_t n = view_->n_;
    while (v_ < n) {
        const std::uint64_t tree = view_->tree_size(v_);
        while (i_ < tree) {
            const Vertex x = view_->encode(v_, i_);
            ++i_;
            if (!view_->is_isolated(x))
                return x;
        }
        ++v_;
        i_ = 0;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// LayeredLiftView

LayeredLiftView::LayeredLiftView(const GraphOracle& base, std::uint64_t layers_minus_one)
    : base_(&base), n_(base.vertex_count()), t_(layers_minus_one)
{
}

std::uint64_t LayeredLiftView::in_degree(Vertex x) const
{
    if (x >= vertex_count() || layer_of(x) == 0)
        return 0;
    return base_->in_degree(base_of(x));
}

std::uint64_t LayeredLiftView::out_degree(Vertex x) const
{
    if (x >= vertex_count() || layer_of(x) == t_)
        return 0;
    return base_->out_degree(base_of(x));
}

Vertex LayeredLiftView::in_neighbor(Vertex x, std::uint64_t j) const
{
    if (j >= in_degree(x))
        return kAbsent;
    return encode(layer_of(x) - 1, base_->in_neighbor(base_of(x), j));
}

Vertex LayeredLiftView::out_neighbor(Vertex x, std::uint64_t j) const
{
    if (j >= out_degree(x))
        return kAbsent;
    return encode(layer_of(x) + 1, base_->out_neighbor(base_of(x), j));
}

// ---------------------------------------------------------------------------
// SelfLoopView

SelfLoopView::SelfLoopView(const GraphOracle& base, Vertex t) : base_(&base), t_(t)
{
    if (t >= base.vertex_count())
        throw std::out_of_range("self-loop vertex out of range");
}

std::uint64_t SelfLoopView::in_degree(Vertex v) const
{
    return base_->in_degree(v) + (v == t_ ? 1 : 0);
}

std::uint64_t SelfLoopView::out_degree(Vertex v) const
{
    return base_->out_degree(v) + (v == t_ ? 1 : 0);
}

Vertex SelfLoopView::in_neighbor(Vertex v, std::uint64_t i) const
{
    if (v == t_ && i == base_->in_degree(v))
        return t_;
    return base_->in_neighbor(v, i);
}

Vertex SelfLoopView::out_neighbor(Vertex v, std::uint64_t i) const
{
    if (v == t_ && i == base_->out_degree(v))
        return t_;
    return base_->out_neighbor(v, i);
}

// ---------------------------------------------------------------------------
// SinkLoopView

std::uint64_t SinkLoopView::looped_count() const
{
    std::uint64_t count = 0;
    for (Vertex v = 0; v < base_->vertex_count(); ++v)
        count += is_sink(v) ? 1 : 0;
    return count;
}

std::uint64_t SinkLoopView::in_degree(Vertex v) const
{
    if (v >= vertex_count())
        return 0;
    return base_->in_degree(v) + (is_sink(v) ? 1 : 0);
}

std::uint64_t SinkLoopView::out_degree(Vertex v) const
{
    if (v >= vertex_count())
        return 0;
    return is_sink(v) ? 1 : base_->out_degree(v);
}

Vertex SinkLoopView::in_neighbor(Vertex v, std::uint64_t i) const
{
    if (v < vertex_count() && is_sink(v) && i == base_->in_degree(v))
        return v;
    return base_->in_neighbor(v, i);
}

Vertex SinkLoopView::out_neighbor(Vertex v, std::uint64_t i) const
{
    if (v < vertex_count() && is_sink(v))
        return i == 0 ? v : kAbsent;
    return base_->out_neighbor(v, i);
}

} // namespace catgraph
