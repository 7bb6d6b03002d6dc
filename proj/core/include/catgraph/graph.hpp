#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace catgraph {

using Vertex = std::uint64_t;

/// Returned by neighbor queries whose index is out of range.
inline constexpr Vertex kAbsent = std::numeric_limits<Vertex>::max();

/// Query access to a directed graph on vertices [0, n).
///
/// in_neighbor(v, i) is defined for i < in_degree(v) and returns kAbsent
/// otherwise; likewise for out_neighbor. Implementations are immutable after
/// construction, so concurrent queries are safe.
class GraphOracle {
public:
    virtual ~GraphOracle() = default;

    virtual std::uint64_t vertex_count() const = 0;
    virtual std::uint64_t in_degree(Vertex v) const = 0;
    virtual std::uint64_t out_degree(Vertex v) const = 0;
    virtual Vertex in_neighbor(Vertex v, std::uint64_t i) const = 0;
    virtual Vertex out_neighbor(Vertex v, std::uint64_t i) const = 0;
};

/// m, by summing out-degrees.
std::uint64_t edge_count(const GraphOracle& g);

class GraphFormatError : public std::runtime_error {
public:
    GraphFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// In-memory digraph. Out-lists are sorted by target and in-lists by source,
/// so neighbor order is deterministic. No duplicate edges; self-loops are
/// allowed.
class AdjacencyGraph final : public GraphOracle {
public:
    explicit AdjacencyGraph(std::uint64_t n = 0);
    AdjacencyGraph(std::uint64_t n, const std::vector<std::pair<Vertex, Vertex>>& edges);

    /// Throws std::invalid_argument on duplicates or out-of-range endpoints.
    void add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const;

    std::uint64_t vertex_count() const override { return out_.size(); }
    std::uint64_t in_degree(Vertex v) const override;
    std::uint64_t out_degree(Vertex v) const override;
    Vertex in_neighbor(Vertex v, std::uint64_t i) const override;
    Vertex out_neighbor(Vertex v, std::uint64_t i) const override;

    std::uint64_t edges() const noexcept { return m_; }
    std::vector<std::pair<Vertex, Vertex>> edge_list() const;

private:
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
    std::uint64_t m_ = 0;
};

/// Parses the text graph format:
///
///     # optional comment lines
///     n m
///     u v        (exactly m lines, 0 <= u, v < n)
///
/// Blank lines are ignored. Throws GraphFormatError on malformed input,
/// out-of-range ids, duplicate edges, or a wrong edge count.
AdjacencyGraph load_graph(std::string_view text);
AdjacencyGraph load_graph_file(const std::string& path);

/// Inverse of load_graph, for fixtures and round trips.
std::string format_graph(const AdjacencyGraph& g);

/// Copies any oracle into an adjacency graph (duplicate edges collapse).
AdjacencyGraph materialize(const GraphOracle& g);

} // namespace catgraph
