#pragma once

#include "catgraph/graph.hpp"
#include "catgraph/metrics.hpp"
#include "catgraph/registers.hpp"
#include "catgraph/tape.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace catgraph {

/// A walk exceeded n steps on a graph that was promised to be acyclic.
class WalkCycleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A walk had to leave a vertex with no out-edges.
class WalkSinkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// K = ceil(2m/eps) (at least 1) and register width ceil(log2 K) (at least 1).
struct WalkParams {
    std::uint64_t K = 1;
    unsigned width = 1;

    static WalkParams compute(std::uint64_t m, double eps);
};

/// One rotor register R_v per vertex, packed from `base`, arithmetic mod 2^width.
class WalkRegisters {
public:
    WalkRegisters(CatalyticTape& tape, std::size_t base, std::uint64_t n, unsigned width);

    std::uint64_t value(Vertex v) const { return file_.load(static_cast<std::size_t>(v)); }
    void set(Vertex v, std::uint64_t value) { file_.store(static_cast<std::size_t>(v), value); }
    void increment(Vertex v) { file_.increment(static_cast<std::size_t>(v)); }
    void decrement(Vertex v) { file_.decrement(static_cast<std::size_t>(v)); }

    RegisterFile& file() noexcept { return file_; }
    const RegisterFile& file() const noexcept { return file_; }

private:
    RegisterFile file_;
};

/// N_v (visits, counted each time the walk stands at v, sinks included),
/// N_v^r (transitions along v's r-th out-edge) and N_reach.
struct VisitCounters {
    std::vector<std::uint64_t> visits;
    std::vector<std::vector<std::uint64_t>> transitions;
    std::uint64_t reach = 0;

    static VisitCounters for_graph(const GraphOracle& g);
    friend bool operator==(const VisitCounters&, const VisitCounters&) = default;
};

enum class WalkMode { Forward, Reverse };

/// Instrumentation and accounting threaded through the walk routines.
struct WalkContext {
    VisitCounters* counters = nullptr;
    WorkspaceMeter* meter = nullptr;
    std::uint64_t steps = 0;
};

/// One walk from s to a sink. Forward: r = R_v mod outdeg(v), then R_v += 1.
/// Reverse: R_v -= 1, then r = R_v mod outdeg(v). A forward walk followed by
/// a reverse walk from the same s restores every register on acyclic input.
/// Throws WalkCycleError after more than n steps.
Vertex walk_once(const GraphOracle& g, Vertex s, WalkMode mode, WalkRegisters& regs, WalkContext& ctx);

/// K forward walks from s; returns how many ended at t.
std::uint64_t forward_walks(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t K, WalkRegisters& regs,
                            WalkContext& ctx);
/// K reverse walks from s.
void reverse_walks(const GraphOracle& g, Vertex s, std::uint64_t K, WalkRegisters& regs, WalkContext& ctx);

struct WalkOptions {
    std::size_t tape_base = 0;
    bool collect_counters = false;
};

struct WalkAnswer {
    double rho = 0.0;
    std::uint64_t K = 0;
    std::uint64_t reach = 0;
    unsigned register_width = 0;
    /// Edges of the graph the walks ran on (the lift for general graphs).
    std::uint64_t edges = 0;
    RunMetrics metrics;
    std::optional<VisitCounters> counters;
};

std::size_t tape_bits_dag(std::uint64_t n, std::uint64_t m, double eps);
std::size_t tape_bits_general(std::uint64_t n, std::uint64_t m, std::uint64_t T, double eps);

/// Estimates the probability that a random walk from s on an acyclic graph
/// ends at the sink t, within eps. Restores the tape on acyclic input.
WalkAnswer estimate_dag(const GraphOracle& g, Vertex s, Vertex t, double eps, CatalyticTape& tape,
                        const WalkOptions& options = {});

/// Estimates Pr[a T-step walk from s ends at t] by walking the layered lift
/// of the graph with a self-loop added at every sink.
WalkAnswer estimate_general(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t T, double eps,
                            CatalyticTape& tape, const WalkOptions& options = {});

/// The counters recorded by a run made with collect_counters set.
VisitCounters collect_counters(const WalkAnswer& run);

// ---------------------------------------------------------------------------
// Rotor walk on graphs with cycles

/// Rotor registers R_v in [outdeg(v)] of width ceil(log2 max outdeg).
unsigned rotor_width(const GraphOracle& g);

/// `steps` rotor steps from `start`: at v, r = R_v mod outdeg(v),
/// R_v = (r + 1) mod outdeg(v), move to the r-th out-neighbor. Counts each
/// vertex the walk stands on before a step into counters->visits. Returns
/// the final vertex; throws WalkSinkError if a step must leave a sink.
Vertex rotor_walk(const GraphOracle& g, Vertex start, std::uint64_t steps, RegisterFile& rotors,
                  WalkContext& ctx);

struct StationaryOptions {
    std::size_t tape_base = 0;
    Vertex start = 0;
    /// Restore the rotors from an out-of-band snapshot after the walk.
    bool restore_tape = true;
    bool collect_counters = false;
};

struct StationaryAnswer {
    double rho = 0.0;
    std::uint64_t T_prime = 0;
    std::uint64_t visits = 0;
    /// The walk itself cannot undo its register changes.
    bool in_band_irreversible = true;
    /// Whether the walk left the rotors different from their initial state.
    bool registers_changed = false;
    RunMetrics metrics;
    std::optional<VisitCounters> counters;
};

/// T' = ceil(T (m + 2) / delta).
std::uint64_t stationary_walk_length(std::uint64_t T, std::uint64_t m, double delta);

/// One T'-step rotor walk; returns the fraction of steps spent at v_star.
StationaryAnswer estimate_stationary(const GraphOracle& g, Vertex v_star, std::uint64_t T, double delta,
                                     CatalyticTape& tape, const StationaryOptions& options = {});

} // namespace catgraph
