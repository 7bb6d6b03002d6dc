#include "catgraph/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace catgraph {

ReachMatrix bfs_reach(const GraphOracle& g)
{
    const std::uint64_t n = g.vertex_count();
    ReachMatrix reach(n);
    std::deque<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        reach.set(s, s);
        queue.assign(1, s);
        while (!queue.empty()) {
            const Vertex u = queue.front();
            queue.pop_front();
            for (std::uint64_t i = 0; i < g.out_degree(u); ++i) {
                const Vertex v = g.out_neighbor(u, i);
                if (!reach(s, v)) {
                    reach.set(s, v);
                    queue.push_back(v);
                }
            }
        }
    }
    return reach;
}

ReachMatrix closure_by_squaring(const GraphOracle& g)
{
    const std::uint64_t n = g.vertex_count();
    ReachMatrix m(n);
    for (Vertex u = 0; u < n; ++u) {
        m.set(u, u);
        for (std::uint64_t i = 0; i < g.out_degree(u); ++i)
            m.set(u, g.out_neighbor(u, i));
    }
    for (std::uint64_t len = 1; len < n; len *= 2) {
        ReachMatrix sq(n);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex w = 0; w < n; ++w)
                if (m(u, w))
                    for (Vertex v = 0; v < n; ++v)
                        if (m(w, v))
                            sq.set(u, v);
        m = sq;
    }
    return m;
}

std::vector<BigInt> count_paths(const GraphOracle& g, Vertex s, std::uint64_t T)
{
    const std::uint64_t n = g.vertex_count();
    std::vector<BigInt> cur(n, 0);
    cur.at(s) = 1;
    for (std::uint64_t i = 0; i < T; ++i) {
        std::vector<BigInt> next(n, 0);
        for (Vertex v = 0; v < n; ++v)
            for (std::uint64_t j = 0; j < g.in_degree(v); ++j)
                next[v] += cur[g.in_neighbor(v, j)];
        cur = std::move(next);
    }
    return cur;
}

std::vector<std::vector<BigInt>> zeta_sequence(const GraphOracle& g, Vertex s, std::uint64_t T)
{
    const std::uint64_t n = g.vertex_count();
    std::vector<std::vector<BigInt>> rows;
    std::vector<BigInt> prev(n, 0);
    std::vector<BigInt> cur(n, 0);
    cur.at(s) = 1;
    rows.push_back(cur);
    for (std::uint64_t i = 0; i < T; ++i) {
        std::vector<BigInt> next = prev;
        for (Vertex v = 0; v < n; ++v) {
            next[v] += cur[v];
            for (std::uint64_t j = 0; j < g.in_degree(v); ++j)
                next[v] += cur[g.in_neighbor(v, j)];
        }
        prev = std::move(cur);
        cur = std::move(next);
        rows.push_back(cur);
    }
    return rows;
}

std::optional<std::vector<Vertex>> topological_order(const GraphOracle& g)
{
    const std::uint64_t n = g.vertex_count();
    std::vector<std::uint64_t> indeg(n);
    std::deque<Vertex> ready;
    for (Vertex v = 0; v < n; ++v) {
        indeg[v] = g.in_degree(v);
        if (indeg[v] == 0)
            ready.push_back(v);
    }
    std::vector<Vertex> order;
    order.reserve(n);
    while (!ready.empty()) {
        const Vertex u = ready.front();
        ready.pop_front();
        order.push_back(u);
        for (std::uint64_t i = 0; i < g.out_degree(u); ++i) {
            const Vertex v = g.out_neighbor(u, i);
            if (--indeg[v] == 0)
                ready.push_back(v);
        }
    }
    if (order.size() != n)
        return std::nullopt;
    return order;
}

std::vector<Rational> dag_reach_probability(const GraphOracle& g, Vertex s)
{
    const auto order = topological_order(g);
    if (!order)
        throw std::invalid_argument("graph has a cycle");
    std::vector<Rational> p(g.vertex_count(), Rational(0));
    p.at(s) = 1;
    for (const Vertex u : *order) {
        const std::uint64_t d = g.out_degree(u);
        if (d == 0 || p[u] == 0)
            continue;
        const Rational share = p[u] / Rational(static_cast<long long>(d));
        for (std::uint64_t i = 0; i < d; ++i)
            p[g.out_neighbor(u, i)] += share;
    }
    return p;
}

double DistributionVector::at(Vertex v) const
{
    return exact ? static_cast<double>(rational.at(v)) : approx.at(v);
}

DistributionVector walk_distribution(const GraphOracle& g, Vertex s, std::uint64_t T)
{
    const std::uint64_t n = g.vertex_count();
    if (s >= n)
        throw std::out_of_range("start vertex out of range");
    DistributionVector out;
    out.exact = n <= 20 && T <= 20;
    auto check_sink = [&](Vertex v) {
        throw OracleError("walk must leave sink " + std::to_string(v));
    };
    if (out.exact) {
        std::vector<Rational> cur(n, Rational(0));
        cur[s] = 1;
        for (std::uint64_t i = 0; i < T; ++i) {
            std::vector<Rational> next(n, Rational(0));
            for (Vertex u = 0; u < n; ++u) {
                if (cur[u] == 0)
                    continue;
                const std::uint64_t d = g.out_degree(u);
                if (d == 0)
                    check_sink(u);
                const Rational share = cur[u] / Rational(static_cast<long long>(d));
                for (std::uint64_t j = 0; j < d; ++j)
                    next[g.out_neighbor(u, j)] += share;
            }
            cur = std::move(next);
        }
        out.rational = std::move(cur);
        return out;
    }
    std::vector<double> cur(n, 0.0);
    cur[s] = 1.0;
    for (std::uint64_t i = 0; i < T; ++i) {
        std::vector<double> next(n, 0.0);
        for (Vertex u = 0; u < n; ++u) {
            if (cur[u] == 0.0)
                continue;
            const std::uint64_t d = g.out_degree(u);
            if (d == 0)
                check_sink(u);
            for (std::uint64_t j = 0; j < d; ++j)
                next[g.out_neighbor(u, j)] += cur[u] / static_cast<double>(d);
        }
        cur = std::move(next);
    }
    out.approx = std::move(cur);
    return out;
}

std::vector<double> apply_walk_matrix(const GraphOracle& g, const std::vector<double>& x)
{
    const std::uint64_t n = g.vertex_count();
    std::vector<double> y(n, 0.0);
    for (Vertex u = 0; u < n; ++u) {
        const std::uint64_t d = g.out_degree(u);
        if (d == 0) {
            y[u] += x[u];
            continue;
        }
        for (std::uint64_t j = 0; j < d; ++j)
            y[g.out_neighbor(u, j)] += x[u] / static_cast<double>(d);
    }
    return y;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += std::abs(a[i] - b[i]);
    return sum;
}

std::vector<double> stationary_exact(const GraphOracle& g, double tol, std::uint64_t max_iterations)
{
    const std::uint64_t n = g.vertex_count();
    if (n == 0)
        throw OracleError("empty graph has no stationary distribution");
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    for (std::uint64_t it = 0; it < max_iterations; ++it) {
        const std::vector<double> wx = apply_walk_matrix(g, x);
        if (l1_distance(wx, x) <= tol)
            return x;
        for (std::size_t i = 0; i < n; ++i)
            x[i] = 0.5 * (x[i] + wx[i]);
        double total = 0.0;
        for (double v : x)
            total += v;
        for (double& v : x)
            v /= total;
    }
    throw OracleError("power iteration did not converge");
}

double mixing_error(const GraphOracle& g, std::uint64_t T, const std::vector<double>& pi)
{
    const std::uint64_t n = g.vertex_count();
    double worst = 0.0;
    for (Vertex i = 0; i < n; ++i) {
        std::vector<double> x(n, 0.0);
        x[i] = 1.0;
        for (std::uint64_t k = 0; k < T; ++k)
            x = apply_walk_matrix(g, x);
        worst = std::max(worst, l1_distance(x, pi));
    }
    return worst;
}

} // namespace catgraph
