#include "catgraph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace catgraph {

std::uint64_t edge_count(const GraphOracle& g)
{
    std::uint64_t m = 0;
    const std::uint64_t n = g.vertex_count();
    for (Vertex v = 0; v < n; ++v)
        m += g.out_degree(v);
    return m;
}

AdjacencyGraph::AdjacencyGraph(std::uint64_t n) : out_(n), in_(n) {}

AdjacencyGraph::AdjacencyGraph(std::uint64_t n, const std::vector<std::pair<Vertex, Vertex>>& edges)
    : AdjacencyGraph(n)
{
    for (const auto& [u, v] : edges)
        add_edge(u, v);
}

void AdjacencyGraph::add_edge(Vertex u, Vertex v)
{
    const std::uint64_t n = vertex_count();
    if (u >= n || v >= n)
        throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ") has a vertex id >= n = " + std::to_string(n));
    auto& outs = out_[u];
    auto pos = std::lower_bound(outs.begin(), outs.end(), v);
    if (pos != outs.end() && *pos == v)
        throw std::invalid_argument("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    outs.insert(pos, v);
    auto& ins = in_[v];
    ins.insert(std::lower_bound(ins.begin(), ins.end(), u), u);
    ++m_;
}

bool AdjacencyGraph::has_edge(Vertex u, Vertex v) const
{
    if (u >= vertex_count())
        return false;
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

std::uint64_t AdjacencyGraph::in_degree(Vertex v) const
{
    return v < in_.size() ? in_[v].size() : 0;
}

std::uint64_t AdjacencyGraph::out_degree(Vertex v) const
{
    return v < out_.size() ? out_[v].size() : 0;
}

Vertex AdjacencyGraph::in_neighbor(Vertex v, std::uint64_t i) const
{
    if (v >= in_.size() || i >= in_[v].size())
        return kAbsent;
    return in_[v][i];
}

Vertex AdjacencyGraph::out_neighbor(Vertex v, std::uint64_t i) const
{
    if (v >= out_.size() || i >= out_[v].size())
        return kAbsent;
    return out_[v][i];
}

std::vector<std::pair<Vertex, Vertex>> AdjacencyGraph::edge_list() const
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(m_);
    for (Vertex u = 0; u < out_.size(); ++u)
        for (Vertex v : out_[u])
            edges.emplace_back(u, v);
    return edges;
}

namespace {

bool parse_u64(std::string_view& rest, std::uint64_t& out)
{
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t'))
        rest.remove_prefix(1);
    if (rest.empty())
        return false;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), out);
    if (ec != std::errc{})
        return false;
    rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
    return true;
}

bool only_space(std::string_view s)
{
    return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

} // namespace

AdjacencyGraph load_graph(std::string_view text)
{
    std::size_t line_no = 0;
    bool have_header = false;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t seen = 0;
    AdjacencyGraph g;

    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (only_space(line))
            continue;
        std::string_view probe = line;
        while (!probe.empty() && (probe.front() == ' ' || probe.front() == '\t'))
            probe.remove_prefix(1);
        if (probe.front() == '#')
            continue;

        std::uint64_t a = 0;
        std::uint64_t b = 0;
        std::string_view rest = line;
        if (!parse_u64(rest, a) || !parse_u64(rest, b) || !only_space(rest))
            throw GraphFormatError(line_no, "expected two non-negative integers");

        if (!have_header) {
            n = a;
            m = b;
            have_header = true;
            g = AdjacencyGraph(n);
            continue;
        }
        if (seen == m)
            throw GraphFormatError(line_no, "more than m = " + std::to_string(m) + " edge lines");
        if (a >= n || b >= n)
            throw GraphFormatError(line_no, "vertex id out of range (n = " + std::to_string(n) + ")");
        if (g.has_edge(a, b))
            throw GraphFormatError(line_no, "duplicate edge " + std::to_string(a) + " " + std::to_string(b));
        g.add_edge(a, b);
        ++seen;
    }
    if (!have_header)
        throw GraphFormatError(line_no, "missing 'n m' header");
    if (seen != m)
        throw GraphFormatError(line_no, "expected " + std::to_string(m) + " edges, found " + std::to_string(seen));
    return g;
}

AdjacencyGraph load_graph_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_graph(buf.str());
}

std::string format_graph(const AdjacencyGraph& g)
{
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edges() << '\n';
    for (const auto& [u, v] : g.edge_list())
        out << u << ' ' << v << '\n';
    return out.str();
}

AdjacencyGraph materialize(const GraphOracle& g)
{
    AdjacencyGraph out(g.vertex_count());
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (std::uint64_t i = 0; i < g.out_degree(u); ++i) {
            const Vertex v = g.out_neighbor(u, i);
            if (!out.has_edge(u, v))
                out.add_edge(u, v);
        }
    return out;
}

} // namespace catgraph
