#include "catgraph/random_walk.hpp"

#include "catgraph/bits.hpp"
#include "catgraph/views.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace catgraph {

namespace {

/// ceil(numerator / eps) for a positive eps, never below the exact value.
std::uint64_t ceil_ratio(long double numerator, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("accuracy must be positive");
    const long double raw = numerator / static_cast<long double>(eps);
    if (raw >= 1.8e19L)
        throw std::invalid_argument("accuracy too small: walk count overflows");
    auto k = static_cast<std::uint64_t>(std::ceil(raw));
    while (static_cast<long double>(k) * eps < numerator)
        ++k;
    return k;
}

} // namespace

WalkParams WalkParams::compute(std::uint64_t m, double eps)
{
    WalkParams p;
    p.K = std::max<std::uint64_t>(1, ceil_ratio(2.0L * static_cast<long double>(m), eps));
    p.width = std::max(1u, ceil_log2(p.K));
    return p;
}

WalkRegisters::WalkRegisters(CatalyticTape& tape, std::size_t base, std::uint64_t n, unsigned width)
    : file_(RegisterFile::full_width(tape, base, static_cast<std::size_t>(n), width))
{
    if (width > 64)
        throw std::invalid_argument("walk registers wider than 64 bits are not supported");
}

VisitCounters VisitCounters::for_graph(const GraphOracle& g)
{
    VisitCounters c;
    const std::uint64_t n = g.vertex_count();
    c.visits.assign(n, 0);
    c.transitions.resize(n);
    for (Vertex v = 0; v < n; ++v)
        c.transitions[v].assign(g.out_degree(v), 0);
    return c;
}

Vertex walk_once(const GraphOracle& g, Vertex s, WalkMode mode, WalkRegisters& regs, WalkContext& ctx)
{
    const std::uint64_t n = g.vertex_count();
    ScopedCharge v_bits(ctx.meter, bits_for_range(n));
    ScopedCharge r_bits(ctx.meter, bits_for_range(n + 1));
    ScopedCharge step_bits(ctx.meter, bits_for_range(n + 2));
    Vertex v = s;
    std::uint64_t steps = 0;
    for (;;) {
        if (ctx.counters)
            ++ctx.counters->visits[v];
        const std::uint64_t d = g.out_degree(v);
        if (d == 0)
            return v;
        if (++steps > n)
            throw WalkCycleError("walk exceeded " + std::to_string(n) + " steps: the graph has a cycle");
        std::uint64_t r;
        if (mode == WalkMode::Forward) {
            r = regs.value(v) % d;
            regs.increment(v);
        } else {
            regs.decrement(v);
            r = regs.value(v) % d;
        }
        if (ctx.counters)
            ++ctx.counters->transitions[v][r];
        ++ctx.steps;
        v = g.out_neighbor(v, r);
    }
}

std::uint64_t forward_walks(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t K, WalkRegisters& regs,
                            WalkContext& ctx)
{
    ScopedCharge i_bits(ctx.meter, bits_for_range(K + 1));
    ScopedCharge reach_bits(ctx.meter, bits_for_range(K + 1));
    std::uint64_t reach = 0;
    for (std::uint64_t i = 0; i < K; ++i)
        if (walk_once(g, s, WalkMode::Forward, regs, ctx) == t)
            ++reach;
    if (ctx.counters)
        ctx.counters->reach += reach;
    return reach;
}

void reverse_walks(const GraphOracle& g, Vertex s, std::uint64_t K, WalkRegisters& regs, WalkContext& ctx)
{
    ScopedCharge i_bits(ctx.meter, bits_for_range(K + 1));
    for (std::uint64_t i = 0; i < K; ++i)
        walk_once(g, s, WalkMode::Reverse, regs, ctx);
}

std::size_t tape_bits_dag(std::uint64_t n, std::uint64_t m, double eps)
{
    return static_cast<std::size_t>(n * WalkParams::compute(m, eps).width);
}

std::size_t tape_bits_general(std::uint64_t n, std::uint64_t m, std::uint64_t T, double eps)
{
    // Sink self-loops add at most n edges before lifting.
    return tape_bits_dag((T + 1) * n, (m + n) * T, eps);
}

WalkAnswer estimate_dag(const GraphOracle& g, Vertex s, Vertex t, double eps, CatalyticTape& tape,
                        const WalkOptions& options)
{
    const Stopwatch clock;
    const std::uint64_t n = g.vertex_count();
    if (s >= n || t >= n)
        throw std::out_of_range("walk endpoint out of range");
    if (g.out_degree(t) != 0)
        throw std::invalid_argument("target vertex " + std::to_string(t) + " is not a sink");

    const Digest before = tape.digest();
    WalkAnswer a;
    a.edges = edge_count(g);
    const WalkParams params = WalkParams::compute(a.edges, eps);
    a.K = params.K;
    a.register_width = params.width;

    WorkspaceMeter meter;
    ScopedCharge k_bits(&meter, bits_for_range(params.K + 1));
    ScopedCharge width_bits(&meter, bits_for_range(params.width + 1));
    ScopedCharge mode_bit(&meter, 1);

    WalkRegisters regs(tape, options.tape_base, n, params.width);
    WalkContext ctx;
    ctx.meter = &meter;
    if (options.collect_counters) {
        a.counters = VisitCounters::for_graph(g);
        ctx.counters = &*a.counters;
    }
    a.reach = forward_walks(g, s, t, params.K, regs, ctx);
    ctx.counters = nullptr;
    reverse_walks(g, s, params.K, regs, ctx);

    a.rho = static_cast<double>(a.reach) / static_cast<double>(a.K);
    a.metrics.estimate = a.rho;
    a.metrics.elapsed_steps = ctx.steps;
    a.metrics.catalytic_bits = regs.file().span_bits();
    a.metrics.workspace_peak_bits = meter.peak_bits();
    a.metrics.tape_restored = tape.digest() == before;
    a.metrics.wall_time_ms = clock.elapsed_ms();
    return a;
}

WalkAnswer estimate_general(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t T, double eps,
                            CatalyticTape& tape, const WalkOptions& options)
{
    const Stopwatch clock;
    const std::uint64_t n = g.vertex_count();
    if (s >= n || t >= n)
        throw std::out_of_range("walk endpoint out of range");
    const SinkLoopView total(g);
    const std::uint64_t looped = total.looped_count();
    const LayeredLiftView lift(total, T);
    WalkAnswer a = estimate_dag(lift, lift.encode(0, s), lift.encode(T, t), eps, tape, options);
    if (looped > 0)
        a.metrics.normalizations.push_back("self-loop added at " + std::to_string(looped) + " sink(s)");
    a.metrics.normalizations.push_back("layered lift with T=" + std::to_string(T));
    a.metrics.wall_time_ms = clock.elapsed_ms();
    return a;
}

VisitCounters collect_counters(const WalkAnswer& run)
{
    if (!run.counters)
        throw std::logic_error("run was made without counter collection");
    return *run.counters;
}

// ---------------------------------------------------------------------------
// Rotor walk

unsigned rotor_width(const GraphOracle& g)
{
    std::uint64_t max_out = 1;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        max_out = std::max(max_out, g.out_degree(v));
    return bits_for_range(max_out);
}

Vertex rotor_walk(const GraphOracle& g, Vertex start, std::uint64_t steps, RegisterFile& rotors, WalkContext& ctx)
{
    const std::uint64_t n = g.vertex_count();
    ScopedCharge v_bits(ctx.meter, bits_for_range(n));
    ScopedCharge r_bits(ctx.meter, rotors.width());
    ScopedCharge step_bits(ctx.meter, bits_for_range(steps + 1));
    Vertex v = start;
    for (std::uint64_t i = 0; i < steps; ++i) {
        if (ctx.counters)
            ++ctx.counters->visits[v];
        const std::uint64_t d = g.out_degree(v);
        if (d == 0)
            throw WalkSinkError("rotor walk reached sink " + std::to_string(v));
        const std::uint64_t r = rotors.load(static_cast<std::size_t>(v)) % d;
        rotors.store(static_cast<std::size_t>(v), (r + 1) % d);
        if (ctx.counters)
            ++ctx.counters->transitions[v][r];
        ++ctx.steps;
        v = g.out_neighbor(v, r);
    }
    return v;
}

std::uint64_t stationary_walk_length(std::uint64_t T, std::uint64_t m, double delta)
{
    return std::max<std::uint64_t>(
        1, ceil_ratio(static_cast<long double>(T) * static_cast<long double>(m + 2), delta));
}

StationaryAnswer estimate_stationary(const GraphOracle& g, Vertex v_star, std::uint64_t T, double delta,
                                     CatalyticTape& tape, const StationaryOptions& options)
{
    const Stopwatch clock;
    const std::uint64_t n = g.vertex_count();
    if (v_star >= n || options.start >= n)
        throw std::out_of_range("vertex out of range");
    for (Vertex v = 0; v < n; ++v)
        if (g.out_degree(v) == 0)
            throw WalkSinkError("vertex " + std::to_string(v) + " has no out-edges");

    const Digest before = tape.digest();
    const CatalyticTape::Snapshot snapshot = tape.snapshot();
    StationaryAnswer a;
    a.T_prime = stationary_walk_length(T, edge_count(g), delta);

    WorkspaceMeter meter;
    ScopedCharge visit_bits(&meter, bits_for_range(a.T_prime + 1));
    RegisterFile rotors = RegisterFile::full_width(tape, options.tape_base, static_cast<std::size_t>(n), rotor_width(g));
    WalkContext ctx;
    ctx.meter = &meter;
    // Counters are always kept for v_star; the full vectors only on request.
    VisitCounters counters = VisitCounters::for_graph(g);
    ctx.counters = &counters;
    rotor_walk(g, options.start, a.T_prime, rotors, ctx);

    a.visits = counters.visits[v_star];
    a.rho = static_cast<double>(a.visits) / static_cast<double>(a.T_prime);
    a.registers_changed = !(tape.digest() == before);
    if (options.collect_counters)
        a.counters = std::move(counters);
    if (options.restore_tape)
        tape.restore(snapshot);

    a.metrics.estimate = a.rho;
    a.metrics.elapsed_steps = ctx.steps;
    a.metrics.catalytic_bits = rotors.span_bits();
    a.metrics.workspace_peak_bits = meter.peak_bits();
    a.metrics.tape_restored = tape.digest() == before;
    if (options.restore_tape)
        a.metrics.normalizations.push_back("rotors restored from out-of-band snapshot");
    a.metrics.wall_time_ms = clock.elapsed_ms();
    return a;
}

} // namespace catgraph
