#pragma once

#include "catgraph/bits.hpp"
#include "catgraph/graph.hpp"
#include "catgraph/metrics.hpp"
#include "catgraph/registers.hpp"
#include "catgraph/tape.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace catgraph {

// ---------------------------------------------------------------------------
// Path-count bounds and register sizing

/// Bounds on path counts that size the registers of the connectivity drivers.
struct PathBoundConstants {
    std::uint64_t n = 0;
    std::uint64_t T = 0;
    BigInt P_n;     ///< n^T, bound on the number of length-T paths.
    BigInt B_n;     ///< (n+1)^n + 1.
    unsigned P = 0; ///< ceil(log2 B_n).

    static PathBoundConstants compute(std::uint64_t n, std::uint64_t T);
    /// ceil(log2 P_n).
    unsigned log_path_bound() const { return ceil_log2(P_n); }
};

/// ceil(log2((n+1)^n)) + 1: wide enough that the two-bank value, which is
/// slightly above (n+1)^n in the worst case, never wraps.
unsigned det_register_width(std::uint64_t n);

/// 5 * ceil(log2 P) with P = ceil(log2 B_n), raised where needed so that
/// 2n * I * (P^2 - 1) / 2^width <= 1/100 (I from iteration_count); the floor
/// only matters for small n.
unsigned rand_register_width(std::uint64_t n, double kappa = 8.0);

/// Sizing of the revertible driver, all derived from n.
struct RevertibleParams {
    std::uint64_t n = 0;
    std::uint64_t view_vertices = 0; ///< n' = n * max(n-1, 1).
    std::uint64_t T = 0;             ///< Path-length bound in the degree-reduced view.
    unsigned p = 0;                  ///< ceil(log2 n'^T), at least 8.
    unsigned width = 0;              ///< 5 * ceil(log2 p).
    std::uint64_t modulus_limit = 0; ///< Moduli are drawn from {2, ..., p^2 - 1}.

    static RevertibleParams compute(std::uint64_t n);
    std::size_t register_count() const { return static_cast<std::size_t>((T + 1) * view_vertices); }
};

std::size_t tape_bits_det(std::uint64_t n);
std::size_t tape_bits_rand(std::uint64_t n, double kappa = 8.0);
std::size_t tape_bits_revertible(std::uint64_t n);

/// Iteration count ceil(kappa * log2 n), at least 1.
std::uint64_t iteration_count(std::uint64_t n, double kappa);

// ---------------------------------------------------------------------------
// Register programs

/// A reversible register program P_b / R_b whose output register ends up
/// holding alpha_b after forward(b). Running forward(b) then reverse(b)
/// restores every register it touches.
class PushProgram {
public:
    explicit PushProgram(RegisterFile& regs, WorkspaceMeter* meter = nullptr) : regs_(&regs), meter_(meter) {}
    virtual ~PushProgram() = default;

    virtual void forward(std::uint64_t b) = 0;
    virtual void reverse(std::uint64_t b) = 0;
    virtual std::size_t output_register() const = 0;

    RegisterFile& registers() const noexcept { return *regs_; }
    WorkspaceMeter* meter() const noexcept { return meter_; }

protected:
    /// Workspace held while one register operation streams its operands.
    std::size_t arithmetic_scratch_bits() const;

    RegisterFile* regs_;
    WorkspaceMeter* meter_;
};

/// Vertices a layered program pushes into, in a fixed order, enumerated
/// without materializing a list.
class TargetOrder {
public:
    virtual ~TargetOrder() = default;
    virtual std::optional<Vertex> first() const = 0;
    virtual std::optional<Vertex> next(Vertex after) const = 0;
    /// True iff a is enumerated strictly before b.
    virtual bool precedes(Vertex a, Vertex b) const = 0;
    /// Registers of relevant vertices are shifted and pushed; the rest are
    /// never touched.
    virtual bool relevant(Vertex v) const = 0;
};

/// 0, 1, ..., n-1; every vertex relevant.
class NaturalOrder final : public TargetOrder {
public:
    explicit NaturalOrder(std::uint64_t n) : n_(n) {}
    std::optional<Vertex> first() const override;
    std::optional<Vertex> next(Vertex after) const override;
    bool precedes(Vertex a, Vertex b) const override { return a < b; }
    bool relevant(Vertex v) const override { return v < n_; }

private:
    std::uint64_t n_;
};

/// Where a layered program is paused.
struct PushPosition {
    enum class Mode { Idle, Forward, Reverse };
    Mode mode = Mode::Idle;
    std::uint64_t b = 0;
    /// Whether R_(0,s) currently carries +b.
    bool injected = false;
    /// Layers 1..pushed_layers hold their fully pushed values.
    std::uint64_t pushed_layers = 0;
    /// Layer currently receiving pushes (1..T); 0 while none is in progress.
    std::uint64_t layer = 0;
    /// Target whose in-edges are being processed in `layer`.
    Vertex target = kAbsent;
    /// In-edges of `target` already processed in this layer pass.
    std::uint64_t processed = 0;
};

/// Registers R_(i,v) for i in 0..T and v in [n], indexed i*n + v. P_b adds b
/// to R_(0,s) and pushes every edge layer by layer; R_b undoes it in reverse.
/// After forward(b), alpha_(i,v),1 - alpha_(i,v),0 is the number of length-i
/// s->v paths mod q.
class LayeredPushProgram final : public PushProgram {
public:
    using PauseCallback = std::function<void()>;

    LayeredPushProgram(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t T, RegisterFile& regs,
                       WorkspaceMeter* meter = nullptr, const TargetOrder* order = nullptr);

    void forward(std::uint64_t b) override;
    void reverse(std::uint64_t b) override;
    std::size_t output_register() const override { return index(T_, t_); }

    /// Edge pushes (or reverse pushes) into layer i+1 from layer i.
    void layer_push(std::uint64_t i, bool reverse);

    std::size_t index(std::uint64_t layer, Vertex v) const { return static_cast<std::size_t>(layer * n_ + v); }
    std::uint64_t depth() const noexcept { return T_; }
    std::uint64_t vertex_count() const noexcept { return n_; }
    const GraphOracle& graph() const noexcept { return *g_; }
    const TargetOrder& order() const noexcept { return *order_; }
    Vertex source() const noexcept { return s_; }
    const PushPosition& position() const noexcept { return pos_; }

    /// Invoked at every pause point: after each single edge push and after
    /// each change to R_(0,s).
    void set_pause_callback(PauseCallback cb) { pause_ = std::move(cb); }

private:
    void pause() const
    {
        if (pause_)
            pause_();
    }

    const GraphOracle* g_;
    Vertex s_;
    Vertex t_;
    std::uint64_t T_;
    std::uint64_t n_;
    NaturalOrder natural_;
    const TargetOrder* order_;
    PushPosition pos_;
    PauseCallback pause_;
};

/// Two banks R_(sigma,v), indexed sigma*n + v. Each of the T phases adds
/// R_(sigma,u) into R_(not sigma,v) for every edge (u,v) and for a dummy edge
/// (v,v) at every vertex, then flips sigma. The output register difference is
/// the value zeta, which is nonzero iff t is reachable from s in <= T steps.
class ParityPushProgram final : public PushProgram {
public:
    ParityPushProgram(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t T, RegisterFile& regs,
                      WorkspaceMeter* meter = nullptr);

    void forward(std::uint64_t b) override;
    void reverse(std::uint64_t b) override;
    std::size_t output_register() const override { return index(T_ % 2, t_); }

    /// One phase: pushes from bank sigma into bank 1-sigma.
    void phase_push(unsigned sigma, bool reverse);

    std::size_t index(unsigned sigma, Vertex v) const { return static_cast<std::size_t>(sigma * n_ + v); }

private:
    const GraphOracle* g_;
    Vertex s_;
    Vertex t_;
    std::uint64_t T_;
    std::uint64_t n_;
};

/// (alpha_1 - alpha_0) mod q at the program's output register, extracted in
/// digit groups: each group re-runs P_0, R_0, P_1, R_1 and keeps only the
/// group, the running borrow and the group index in workspace. With a modulus
/// below 2^64 the whole residue is a single group.
BigInt extract_difference(PushProgram& program, unsigned group_bits);

/// Whether (alpha_1 - alpha_0) mod q is nonzero; stops at the first
/// differing group.
bool difference_nonzero(PushProgram& program, unsigned group_bits);

/// (# length-T s->t paths) mod q. regs: (T+1)*n registers valid for q.
BigInt st_count_mod(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t T, RegisterFile& regs,
                    WorkspaceMeter* meter = nullptr);

/// zeta mod q for the two-bank program. regs: 2n registers valid for q.
BigInt st_nonzero_mod(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t T, RegisterFile& regs,
                      WorkspaceMeter* meter = nullptr);

// ---------------------------------------------------------------------------
// Drivers

/// Read access to the tape contents as they were before the run.
class OriginalTapeQuery {
public:
    virtual ~OriginalTapeQuery() = default;
    virtual bool original_bit(std::size_t tape_index) const = 0;
};

/// Receives every pause point of the revertible driver; may issue any number
/// of original-bit queries and must not touch the tape.
using PauseHook = std::function<void(std::uint64_t pause_id, const OriginalTapeQuery& query)>;

struct ConnectOptions {
    std::uint64_t seed = 0;
    double kappa = 8.0;
    /// First tape bit used for registers.
    std::size_t tape_base = 0;
    PauseHook pause_hook;
};

struct ConnectivityAnswer {
    Verdict verdict = Verdict::NoPath;
    RunMetrics metrics;
    unsigned register_width = 0;
    std::uint64_t path_length = 0;
    std::uint64_t iterations_run = 0;
    /// Modulus of the last iteration; 2^width for the deterministic driver.
    BigInt last_modulus;
    std::uint64_t pause_points = 0;
};

/// Deterministic: modulus 2^width, no shift, never aborts.
ConnectivityAnswer connect_det(const GraphOracle& g, Vertex s, Vertex t, CatalyticTape& tape,
                               const ConnectOptions& options = {});

/// Randomized: random modulus and shift per iteration; may abort.
ConnectivityAnswer connect_rand(const GraphOracle& g, Vertex s, Vertex t, CatalyticTape& tape,
                                const ConnectOptions& options = {});

/// Layered counting over the degree-reduced view with a self-loop at t; any
/// original tape bit can be recovered at every pause point.
ConnectivityAnswer connect_revertible(const GraphOracle& g, Vertex s, Vertex t, CatalyticTape& tape,
                                      const ConnectOptions& options = {});

} // namespace catgraph
