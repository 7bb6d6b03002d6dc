#include "catgraph/connectivity.hpp"

#include "catgraph/rng.hpp"
#include "catgraph/views.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace catgraph {

// ---------------------------------------------------------------------------
// Bounds and sizing

PathBoundConstants PathBoundConstants::compute(std::uint64_t n, std::uint64_t T)
{
    PathBoundConstants c;
    c.n = n;
    c.T = T;
    c.P_n = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(T));
    c.B_n = boost::multiprecision::pow(BigInt(n + 1), static_cast<unsigned>(n)) + 1;
    c.P = ceil_log2(c.B_n);
    return c;
}

unsigned det_register_width(std::uint64_t n)
{
    return ceil_log2(boost::multiprecision::pow(BigInt(n + 1), static_cast<unsigned>(n))) + 1;
}

unsigned rand_register_width(std::uint64_t n, double kappa)
{
    const unsigned P = PathBoundConstants::compute(n, n).P;
    const unsigned base = 5 * std::max(1u, ceil_log2(std::uint64_t{P}));
    // A register is invalid after a shift with probability below q / 2^l.
    // Union over 2n registers and all iterations, kept under 1/100.
    const std::uint64_t q_max = std::uint64_t{P} * P - 1;
    const BigInt union_terms = BigInt(100) * 2 * n * iteration_count(n, kappa) * q_max;
    return std::max(base, ceil_log2(union_terms));
}

RevertibleParams RevertibleParams::compute(std::uint64_t n)
{
    RevertibleParams r;
    r.n = n;
    r.view_vertices = n * (n > 1 ? n - 1 : 1);
    r.T = std::max<std::uint64_t>(1, (n > 1 ? n - 1 : 1) * degree_reduction_stretch(n));
    const unsigned p = ceil_log2(boost::multiprecision::pow(BigInt(r.view_vertices), static_cast<unsigned>(r.T)));
    // Tiny n makes the bound degenerate (p = 1 at n = 2); 8 keeps d well above the register count.
    r.p = std::max(8u, p);
    r.width = 5 * ceil_log2(std::uint64_t{r.p});
    r.modulus_limit = std::uint64_t{r.p} * r.p - 1;
    return r;
}

std::size_t tape_bits_det(std::uint64_t n)
{
    return static_cast<std::size_t>(2 * n * det_register_width(n));
}

std::size_t tape_bits_rand(std::uint64_t n, double kappa)
{
    return static_cast<std::size_t>(2 * n * rand_register_width(n, kappa));
}

std::size_t tape_bits_revertible(std::uint64_t n)
{
    const RevertibleParams r = RevertibleParams::compute(n);
    return r.register_count() * r.width;
}

std::uint64_t iteration_count(std::uint64_t n, double kappa)
{
    const double raw = std::ceil(kappa * std::log2(static_cast<double>(std::max<std::uint64_t>(n, 1))));
    return raw < 1.0 ? 1 : static_cast<std::uint64_t>(raw);
}

namespace {

unsigned default_group_bits(std::uint64_t n)
{
    return std::clamp(ceil_log2(n + 1), 1u, 64u);
}

} // namespace

// ---------------------------------------------------------------------------
// Programs

std::size_t PushProgram::arithmetic_scratch_bits() const
{
    if (regs_->is_full_width())
        return std::min(regs_->width(), 64u) + 1;
    return 2 * bits_for_range(regs_->modulus()) + 1;
}

std::optional<Vertex> NaturalOrder::first() const
{
    return n_ > 0 ? std::optional<Vertex>(0) : std::nullopt;
}

std::optional<Vertex> NaturalOrder::next(Vertex after) const
{
    return after + 1 < n_ ? std::optional<Vertex>(after + 1) : std::nullopt;
}

LayeredPushProgram::LayeredPushProgram(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t T,
                                       RegisterFile& regs, WorkspaceMeter* meter, const TargetOrder* order)
    : PushProgram(regs, meter), g_(&g), s_(s), t_(t), T_(T), n_(g.vertex_count()), natural_(n_),
      order_(order ? order : &natural_)
{
    if (s >= n_ || t >= n_)
        throw std::out_of_range("source or target vertex out of range");
    if (regs.count() < (T + 1) * n_)
        throw std::invalid_argument("layered program needs (T+1)*n registers");
}

void LayeredPushProgram::layer_push(std::uint64_t i, bool reverse)
{
    ScopedCharge target_bits(meter_, bits_for_range(n_));
    ScopedCharge edge_bits(meter_, bits_for_range(n_ + 1));
    ScopedCharge scratch(meter_, arithmetic_scratch_bits());
    const int sign = reverse ? -1 : 1;
    pos_.layer = i + 1;
    for (auto x = order_->first(); x; x = order_->next(*x)) {
        pos_.target = *x;
        pos_.processed = 0;
        const std::uint64_t d = g_->in_degree(*x);
        for (std::uint64_t j = 0; j < d; ++j) {
            const Vertex u = g_->in_neighbor(*x, j);
            regs_->add_reg(index(i + 1, *x), index(i, u), sign);
            pos_.processed = j + 1;
            pause();
        }
    }
    pos_.target = kAbsent;
    pos_.processed = 0;
    pos_.layer = 0;
}

void LayeredPushProgram::forward(std::uint64_t b)
{
    ScopedCharge b_bit(meter_, 1);
    ScopedCharge layer_bits(meter_, bits_for_range(T_ + 1));
    pos_ = PushPosition{};
    pos_.mode = PushPosition::Mode::Forward;
    pos_.b = b;
    regs_->add_mod(index(0, s_), b);
    pos_.injected = true;
    pause();
    for (std::uint64_t i = 0; i < T_; ++i) {
        pos_.pushed_layers = i;
        layer_push(i, false);
        pos_.pushed_layers = i + 1;
    }
}

void LayeredPushProgram::reverse(std::uint64_t b)
{
    ScopedCharge b_bit(meter_, 1);
    ScopedCharge layer_bits(meter_, bits_for_range(T_ + 1));
    pos_.mode = PushPosition::Mode::Reverse;
    pos_.b = b;
    for (std::uint64_t i = T_; i-- > 0;) {
        pos_.pushed_layers = i;
        layer_push(i, true);
    }
    regs_->sub_mod(index(0, s_), b);
    pos_.injected = false;
    pos_.mode = PushPosition::Mode::Idle;
    pause();
}

ParityPushProgram::ParityPushProgram(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t T,
                                     RegisterFile& regs, WorkspaceMeter* meter)
    : PushProgram(regs, meter), g_(&g), s_(s), t_(t), T_(T), n_(g.vertex_count())
{
    if (s >= n_ || t >= n_)
        throw std::out_of_range("source or target vertex out of range");
    if (regs.count() < 2 * n_)
        throw std::invalid_argument("parity program needs 2n registers");
}

void ParityPushProgram::phase_push(unsigned sigma, bool reverse)
{
    ScopedCharge target_bits(meter_, bits_for_range(n_));
    ScopedCharge edge_bits(meter_, bits_for_range(n_ + 2));
    ScopedCharge scratch(meter_, arithmetic_scratch_bits());
    const int sign = reverse ? -1 : 1;
    const unsigned other = 1 - sigma;
    for (Vertex v = 0; v < n_; ++v) {
        const std::uint64_t d = g_->in_degree(v);
        for (std::uint64_t j = 0; j < d; ++j)
            regs_->add_reg(index(other, v), index(sigma, g_->in_neighbor(v, j)), sign);
        regs_->add_reg(index(other, v), index(sigma, v), sign); // dummy edge (v,v)
    }
}

void ParityPushProgram::forward(std::uint64_t b)
{
    ScopedCharge b_bit(meter_, 1);
    ScopedCharge phase_bits(meter_, bits_for_range(T_ + 1) + 1);
    regs_->add_mod(index(0, s_), b);
    for (std::uint64_t i = 0; i < T_; ++i)
        phase_push(static_cast<unsigned>(i % 2), false);
}

void ParityPushProgram::reverse(std::uint64_t b)
{
    ScopedCharge b_bit(meter_, 1);
    ScopedCharge phase_bits(meter_, bits_for_range(T_ + 1) + 1);
    for (std::uint64_t i = T_; i-- > 0;)
        phase_push(static_cast<unsigned>(i % 2), true);
    regs_->sub_mod(index(0, s_), b);
}

// ---------------------------------------------------------------------------
// Extraction

namespace {

struct GroupReading {
    std::uint64_t x0 = 0;
    std::uint64_t x1 = 0;
};

/// Reads one bit group of the output register after P_0 and after P_1.
GroupReading read_group(PushProgram& program, std::size_t offset, unsigned bits)
{
    RegisterFile& regs = program.registers();
    const std::size_t at = regs.offset_of(program.output_register()) + offset;
    GroupReading r;
    program.forward(0);
    r.x0 = regs.tape().read(at, bits);
    program.reverse(0);
    program.forward(1);
    r.x1 = regs.tape().read(at, bits);
    program.reverse(1);
    return r;
}

std::uint64_t residue_difference(PushProgram& program)
{
    RegisterFile& regs = program.registers();
    const std::uint64_t q = regs.modulus();
    ScopedCharge r0_bits(program.meter(), bits_for_range(q));
    ScopedCharge r1_bits(program.meter(), bits_for_range(q));
    program.forward(0);
    const std::uint64_t r0 = regs.residue(program.output_register());
    program.reverse(0);
    program.forward(1);
    const std::uint64_t r1 = regs.residue(program.output_register());
    program.reverse(1);
    return r1 >= r0 ? r1 - r0 : q - (r0 - r1);
}

bool uses_groups(const RegisterFile& regs)
{
    return regs.is_full_width();
}

} // namespace

BigInt extract_difference(PushProgram& program, unsigned group_bits)
{
    RegisterFile& regs = program.registers();
    if (!uses_groups(regs))
        return BigInt(residue_difference(program));

    const unsigned g = std::clamp(group_bits, 1u, 64u);
    const unsigned width = regs.width();
    ScopedCharge group_index(program.meter(), bits_for_range(width / g + 2));
    ScopedCharge readings(program.meter(), 2 * g);
    ScopedCharge borrow_bit(program.meter(), 1);
    BigInt result = 0;
    std::uint64_t borrow = 0;
    for (unsigned offset = 0; offset < width; offset += g) {
        const unsigned bits = std::min(g, width - offset);
        const GroupReading r = read_group(program, offset, bits);
        const std::uint64_t diff = (r.x1 - r.x0 - borrow) & low_mask(bits);
        borrow = (r.x1 < r.x0 || r.x1 - r.x0 < borrow) ? 1 : 0;
        result |= BigInt(diff) << offset;
    }
    return result;
}

bool difference_nonzero(PushProgram& program, unsigned group_bits)
{
    RegisterFile& regs = program.registers();
    if (!uses_groups(regs))
        return residue_difference(program) != 0;

    // Over 2^width, the difference vanishes iff every group agrees.
    const unsigned g = std::clamp(group_bits, 1u, 64u);
    const unsigned width = regs.width();
    ScopedCharge group_index(program.meter(), bits_for_range(width / g + 2));
    ScopedCharge readings(program.meter(), 2 * g);
    for (unsigned offset = 0; offset < width; offset += g) {
        const GroupReading r = read_group(program, offset, std::min(g, width - offset));
        if (r.x0 != r.x1)
            return true;
    }
    return false;
}

BigInt st_count_mod(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t T, RegisterFile& regs,
                    WorkspaceMeter* meter)
{
    LayeredPushProgram program(g, s, t, T, regs, meter);
    return extract_difference(program, default_group_bits(g.vertex_count()));
}

BigInt st_nonzero_mod(const GraphOracle& g, Vertex s, Vertex t, std::uint64_t T, RegisterFile& regs,
                      WorkspaceMeter* meter)
{
    ParityPushProgram program(g, s, t, T, regs, meter);
    return extract_difference(program, default_group_bits(g.vertex_count()));
}

// ---------------------------------------------------------------------------
// Drivers

namespace {

void check_endpoints(const GraphOracle& g, Vertex s, Vertex t)
{
    const std::uint64_t n = g.vertex_count();
    if (s >= n || t >= n)
        throw std::out_of_range("vertex out of range: s=" + std::to_string(s) + " t=" + std::to_string(t) +
                                " n=" + std::to_string(n));
}

/// The empty path: no registers, nothing touched.
ConnectivityAnswer trivial_path(const Stopwatch& clock)
{
    ConnectivityAnswer a;
    a.verdict = Verdict::Path;
    a.metrics.verdict = Verdict::Path;
    a.metrics.tape_restored = true;
    a.metrics.normalizations.push_back("s equals t: empty path");
    a.metrics.wall_time_ms = clock.elapsed_ms();
    return a;
}

void finish(ConnectivityAnswer& a, const CatalyticTape& tape, const Digest& before, const WorkspaceMeter& meter,
            const Stopwatch& clock)
{
    a.metrics.verdict = a.verdict;
    a.metrics.aborted = a.verdict == Verdict::Abort;
    a.metrics.tape_restored = tape.digest() == before;
    a.metrics.workspace_peak_bits = meter.peak_bits();
    a.metrics.wall_time_ms = clock.elapsed_ms();
}

} // namespace

ConnectivityAnswer connect_det(const GraphOracle& g, Vertex s, Vertex t, CatalyticTape& tape,
                               const ConnectOptions& options)
{
    const Stopwatch clock;
    check_endpoints(g, s, t);
    if (s == t)
        return trivial_path(clock);

    const Digest before = tape.digest();
    const std::uint64_t n = g.vertex_count();
    WorkspaceMeter meter;
    ScopedCharge n_bits(&meter, bits_for_range(n + 1));
    ScopedCharge width_bits(&meter, bits_for_range(std::uint64_t{det_register_width(n)} + 1));

    ConnectivityAnswer a;
    a.register_width = det_register_width(n);
    a.path_length = n;
    a.iterations_run = 1;
    a.last_modulus = BigInt(1) << a.register_width;

    const SelfLoopView looped(g, t);
    a.metrics.normalizations.push_back("virtual self-loop at t");
    RegisterFile regs = RegisterFile::full_width(tape, options.tape_base, 2 * n, a.register_width);
    ParityPushProgram program(looped, s, t, n, regs, &meter);
    a.verdict = difference_nonzero(program, default_group_bits(n)) ? Verdict::Path : Verdict::NoPath;

    a.metrics.elapsed_steps = regs.operations();
    a.metrics.catalytic_bits = regs.span_bits();
    finish(a, tape, before, meter, clock);
    return a;
}

ConnectivityAnswer connect_rand(const GraphOracle& g, Vertex s, Vertex t, CatalyticTape& tape,
                                const ConnectOptions& options)
{
    const Stopwatch clock;
    check_endpoints(g, s, t);
    if (s == t)
        return trivial_path(clock);

    const Digest before = tape.digest();
    const std::uint64_t n = g.vertex_count();
    const unsigned P = PathBoundConstants::compute(n, n).P;
    const std::uint64_t q_max = std::uint64_t{P} * P - 1;
    const std::uint64_t iterations = iteration_count(n, options.kappa);

    ConnectivityAnswer a;
    a.register_width = rand_register_width(n, options.kappa);
    a.path_length = n;
    a.verdict = Verdict::NoPath;

    WorkspaceMeter meter;
    ScopedCharge n_bits(&meter, bits_for_range(n + 1));
    ScopedCharge iter_bits(&meter, bits_for_range(iterations + 1));
    ScopedCharge q_bits(&meter, bits_for_range(q_max + 1));
    ScopedCharge d_bits(&meter, a.register_width);
    ScopedCharge beta_bits(&meter, a.register_width);

    const SelfLoopView looped(g, t);
    a.metrics.normalizations.push_back("virtual self-loop at t");
    Rng rng(options.seed, Rng::Stream::Algorithm);
    for (std::uint64_t it = 0; it < iterations; ++it) {
        ++a.iterations_run;
        const std::uint64_t q = rng.uniform(2, q_max);
        a.last_modulus = q;
        RegisterFile regs(tape, options.tape_base, 2 * n, a.register_width, q);
        a.metrics.catalytic_bits = regs.span_bits();
        const WideValue beta = random_wide(rng, a.register_width);
        regs.shift_all(beta);
        if (!regs.all_valid()) {
            regs.unshift_all(beta);
            a.metrics.elapsed_steps += regs.operations();
            a.verdict = Verdict::Abort;
            break;
        }
        ParityPushProgram program(looped, s, t, n, regs, &meter);
        const bool nonzero = difference_nonzero(program, default_group_bits(n));
        regs.unshift_all(beta);
        a.metrics.elapsed_steps += regs.operations();
        if (nonzero) {
            a.verdict = Verdict::Path;
            break;
        }
    }
    finish(a, tape, before, meter, clock);
    return a;
}

namespace {

/// Relevant vertices of the degree-reduced view (non-isolated, or s, or t),
/// in (base vertex, tree index) order.
class RelevantViewOrder final : public TargetOrder {
public:
    RelevantViewOrder(const DegreeReducedView& view, Vertex s, Vertex t) : view_(&view), s_(s), t_(t) {}

    bool relevant(Vertex x) const override
    {
        if (x >= view_->vertex_count())
            return false;
        return x == s_ || x == t_ || !view_->is_isolated(x);
    }

    std::optional<Vertex> first() const override { return scan(0, 0); }

    std::optional<Vertex> next(Vertex after) const override
    {
        return scan(view_->base_of(after), view_->index_of(after) + 1);
    }

    bool precedes(Vertex a, Vertex b) const override { return view_->order_key(a) < view_->order_key(b); }

private:
    std::optional<Vertex> scan(Vertex v, std::uint64_t i) const
    {
        const std::uint64_t n = view_->base_vertex_count();
        for (; v < n; ++v, i = 0) {
            const std::uint64_t tree = view_->tree_size(v);
            for (; i < tree; ++i) {
                const Vertex x = view_->encode(v, i);
                if (relevant(x))
                    return x;
            }
        }
        return std::nullopt;
    }

    const DegreeReducedView* view_;
    Vertex s_;
    Vertex t_;
};

/// Recovers original register values from the paused program's position:
/// the current value minus the residues already pushed into it, minus the
/// injected b, minus the shift.
class RevertibleQuery final : public OriginalTapeQuery {
public:
    RevertibleQuery(const LayeredPushProgram& program, const RegisterFile& regs, const WideValue& beta,
                    const bool& shifted)
        : program_(&program), regs_(&regs), beta_(&beta), shifted_(&shifted)
    {
    }

    bool original_bit(std::size_t tape_index) const override
    {
        const CatalyticTape& tape = regs_->tape();
        if (!*shifted_ || tape_index < regs_->base() || tape_index >= regs_->end_bit())
            return tape.bit(tape_index);
        const std::size_t rel = tape_index - regs_->base();
        const std::size_t reg = rel / regs_->width();
        const std::uint64_t n = program_->vertex_count();
        const std::uint64_t layer = reg / n;
        const Vertex x = reg % n;
        if (layer > program_->depth() || !program_->order().relevant(x))
            return tape.bit(tape_index);
        const BigInt original = original_value(layer, x);
        return boost::multiprecision::bit_test(original, static_cast<unsigned>(rel % regs_->width()));
    }

private:
    BigInt register_value(std::size_t idx) const
    {
        const WideValue limbs = regs_->value(idx);
        BigInt v = 0;
        for (std::size_t k = limbs.size(); k-- > 0;)
            v = (v << 64) | BigInt(limbs[k]);
        return v;
    }

    /// In-edges of x in `layer` whose push is currently applied, as an index
    /// range [lo, hi) into x's in-neighbor list.
    std::pair<std::uint64_t, std::uint64_t> applied_edges(std::uint64_t layer, Vertex x) const
    {
        const PushPosition& pos = program_->position();
        const std::uint64_t d = program_->graph().in_degree(x);
        if (pos.layer == layer && pos.layer != 0) {
            const bool before = program_->order().precedes(x, pos.target);
            const bool current = x == pos.target;
            if (pos.mode == PushPosition::Mode::Forward)
                return before ? std::pair{std::uint64_t{0}, d}
                              : (current ? std::pair{std::uint64_t{0}, pos.processed} : std::pair{d, d});
            return before ? std::pair{d, d} : (current ? std::pair{pos.processed, d} : std::pair{std::uint64_t{0}, d});
        }
        if (layer <= pos.pushed_layers && pos.mode != PushPosition::Mode::Idle)
            return {0, d};
        return {d, d};
    }

    BigInt original_value(std::uint64_t layer, Vertex x) const
    {
        const std::size_t idx = program_->index(layer, x);
        const BigInt current = register_value(idx);
        const BigInt q = regs_->modulus_big();
        const BigInt residue = current % q;
        BigInt pushed = 0;
        const PushPosition& pos = program_->position();
        if (layer == 0) {
            if (x == program_->source() && pos.injected)
                pushed += pos.b;
        } else {
            const auto [lo, hi] = applied_edges(layer, x);
            for (std::uint64_t j = lo; j < hi; ++j) {
                const Vertex u = program_->graph().in_neighbor(x, j);
                pushed += register_value(program_->index(layer - 1, u)) % q;
            }
        }
        BigInt before_push = (residue - pushed % q) % q;
        if (before_push < 0)
            before_push += q;
        const BigInt shifted_value = current - residue + before_push;
        BigInt beta = 0;
        for (std::size_t k = beta_->size(); k-- > 0;)
            beta = (beta << 64) | BigInt((*beta_)[k]);
        const BigInt modulus = BigInt(1) << regs_->width();
        BigInt original = (shifted_value - beta) % modulus;
        if (original < 0)
            original += modulus;
        return original;
    }

    const LayeredPushProgram* program_;
    const RegisterFile* regs_;
    const WideValue* beta_;
    const bool* shifted_;
};

} // namespace

ConnectivityAnswer connect_revertible(const GraphOracle& g, Vertex s, Vertex t, CatalyticTape& tape,
                                      const ConnectOptions& options)
{
    const Stopwatch clock;
    check_endpoints(g, s, t);
    if (s == t)
        return trivial_path(clock);

    const Digest before = tape.digest();
    const std::uint64_t n = g.vertex_count();
    const RevertibleParams params = RevertibleParams::compute(n);
    const std::uint64_t iterations = iteration_count(n, options.kappa);

    ConnectivityAnswer a;
    a.register_width = params.width;
    a.path_length = params.T;
    a.verdict = Verdict::NoPath;

    WorkspaceMeter meter;
    ScopedCharge n_bits(&meter, bits_for_range(params.view_vertices + 1));
    ScopedCharge iter_bits(&meter, bits_for_range(iterations + 1));
    ScopedCharge q_bits(&meter, bits_for_range(params.modulus_limit + 1));
    ScopedCharge beta_bits(&meter, params.width);
    ScopedCharge cursor_bits(&meter, bits_for_range(params.T + 1) + bits_for_range(params.view_vertices));

    const DegreeReducedView view(g);
    const SelfLoopView looped(view, t);
    a.metrics.normalizations.push_back("in-degree reduced to 2");
    a.metrics.normalizations.push_back("virtual self-loop at t");
    const RelevantViewOrder order(view, s, t);

    Rng rng(options.seed, Rng::Stream::Algorithm);
    std::uint64_t pause_id = 0;
    for (std::uint64_t it = 0; it < iterations; ++it) {
        ++a.iterations_run;
        const std::uint64_t q = rng.uniform(2, params.modulus_limit);
        a.last_modulus = q;
        RegisterFile regs(tape, options.tape_base, params.register_count(), params.width, q);
        a.metrics.catalytic_bits = regs.span_bits();
        const WideValue beta = random_wide(rng, params.width);
        LayeredPushProgram program(looped, s, t, params.T, regs, &meter, &order);

        bool shifted = false;
        const RevertibleQuery query(program, regs, beta, shifted);
        auto pause = [&] {
            const std::uint64_t id = pause_id++;
            if (options.pause_hook)
                options.pause_hook(id, query);
        };
        program.set_pause_callback(pause);

        auto for_each_relevant = [&](auto&& fn) {
            for (std::uint64_t layer = 0; layer <= params.T; ++layer)
                for (auto x = order.first(); x; x = order.next(*x))
                    fn(program.index(layer, *x));
        };

        for_each_relevant([&](std::size_t idx) { regs.shift(idx, beta); });
        bool valid = true;
        for_each_relevant([&](std::size_t idx) { valid = valid && regs.is_valid(idx); });
        if (!valid) {
            for_each_relevant([&](std::size_t idx) { regs.unshift(idx, beta); });
            a.metrics.elapsed_steps += regs.operations();
            a.verdict = Verdict::Abort;
            break;
        }
        shifted = true;
        pause();

        const bool nonzero = extract_difference(program, default_group_bits(n)) != 0;

        for_each_relevant([&](std::size_t idx) { regs.unshift(idx, beta); });
        shifted = false;
        pause();
        a.metrics.elapsed_steps += regs.operations();
        if (nonzero) {
            a.verdict = Verdict::Path;
            break;
        }
    }
    a.pause_points = pause_id;
    finish(a, tape, before, meter, clock);
    return a;
}

} // namespace catgraph
