#pragma once

// Brute-force ground truth for tests and --verify. Space is not a concern here.

#include "catgraph/bits.hpp"
#include "catgraph/graph.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace catgraph {

using Rational = boost::multiprecision::cpp_rational;

class ReachMatrix {
public:
    explicit ReachMatrix(std::uint64_t n = 0) : n_(n), cells_(n * n, 0) {}

    std::uint64_t size() const noexcept { return n_; }
    bool operator()(Vertex u, Vertex v) const { return cells_[u * n_ + v] != 0; }
    void set(Vertex u, Vertex v, bool value = true) { cells_[u * n_ + v] = value ? 1 : 0; }

    friend bool operator==(const ReachMatrix&, const ReachMatrix&) = default;

private:
    std::uint64_t n_;
    std::vector<std::uint8_t> cells_;
};

/// Reachability by BFS from every vertex; reflexive.
ReachMatrix bfs_reach(const GraphOracle& g);

/// Reflexive-transitive closure by repeated boolean matrix squaring.
ReachMatrix closure_by_squaring(const GraphOracle& g);

/// Number of length-T walks from s to every v.
std::vector<BigInt> count_paths(const GraphOracle& g, Vertex s, std::uint64_t T);

/// zeta values of the two-bank program for steps 0..T: row i holds
/// zeta_(sigma_i, v), i for every v, where z_{i+1}(v) = z_{i-1}(v) + z_i(v) +
/// sum over in-neighbors u of z_i(u), z_0 = [v = s], z_{-1} = 0.
std::vector<std::vector<BigInt>> zeta_sequence(const GraphOracle& g, Vertex s, std::uint64_t T);

std::optional<std::vector<Vertex>> topological_order(const GraphOracle& g);
inline bool is_acyclic(const GraphOracle& g) { return topological_order(g).has_value(); }

/// Probability that a uniform random walk from s ever visits each vertex, on
/// an acyclic graph. Throws std::invalid_argument on cyclic input.
std::vector<Rational> dag_reach_probability(const GraphOracle& g, Vertex s);

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Distribution of a T-step walk. Exact rationals when n <= 20 and T <= 20,
/// doubles otherwise.
struct DistributionVector {
    bool exact = false;
    std::vector<Rational> rational;
    std::vector<double> approx;

    double at(Vertex v) const;
    std::size_t size() const { return exact ? rational.size() : approx.size(); }
};

/// Throws OracleError if a step must leave a sink that carries probability.
DistributionVector walk_distribution(const GraphOracle& g, Vertex s, std::uint64_t T);

/// x -> W x for the column-stochastic walk matrix W (one walk step applied to
/// the distribution x). Sinks keep their mass.
std::vector<double> apply_walk_matrix(const GraphOracle& g, const std::vector<double>& x);

double l1_distance(const std::vector<double>& a, const std::vector<double>& b);

/// Stationary distribution by power iteration on the lazy chain (I + W) / 2,
/// which has the same fixed points and also converges on periodic chains.
/// Guarantees ||W pi - pi||_1 <= tol or throws OracleError.
std::vector<double> stationary_exact(const GraphOracle& g, double tol = 1e-12, std::uint64_t max_iterations = 5'000'000);

/// max over basis vectors e_i of ||W^T e_i - pi||_1.
double mixing_error(const GraphOracle& g, std::uint64_t T, const std::vector<double>& pi);

} // namespace catgraph
