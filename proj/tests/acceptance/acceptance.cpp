// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "graphs.hpp"

#include "catgraph/connectivity.hpp"
#include "catgraph/oracles.hpp"
#include "catgraph/random_walk.hpp"
#include "catgraph/registers.hpp"
#include "catgraph/views.hpp"
#include "catgraph/workspace.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace catgraph {
namespace {

using testing::kProfiles;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string first_failure;

    void fail(const std::string& why)
    {
        if (pass)
            first_failure = why;
        pass = false;
    }
};

/// Peak workspace over every driver run, against the pinned constant.
struct WorkspaceLog {
    std::uint64_t runs = 0;
    std::uint64_t violations = 0;
    double worst_ratio = 0.0;
    std::string worst_label;

    void record(const RunMetrics& m, std::uint64_t n, std::uint64_t edges, std::uint64_t T, std::uint64_t inv_eps,
                const char* label)
    {
        ++runs;
        const double ratio = static_cast<double>(m.workspace_peak_bits) / workspace_scale(n, edges, T, inv_eps);
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            std::ostringstream s;
            s << label << " n=" << n << " m=" << edges << " T=" << T << " peak=" << m.workspace_peak_bits;
            worst_label = s.str();
        }
        if (!within_workspace_bound(m.workspace_peak_bits, n, edges, T, inv_eps))
            ++violations;
    }
};

WorkspaceLog g_workspace;

std::uint64_t inv_eps(double eps) { return static_cast<std::uint64_t>(std::ceil(1.0 / eps)); }

std::string describe(const AdjacencyGraph& g, Vertex s, Vertex t)
{
    std::ostringstream o;
    o << "n=" << g.vertex_count() << " m=" << g.edges() << " s=" << s << " t=" << t;
    return o.str();
}

// ---------------------------------------------------------------------------
// 1 and 2: deterministic connectivity exactness and restoration

struct DetStats {
    std::uint64_t runs = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t unrestored = 0;
    std::string first_mismatch;
    std::string first_unrestored;
};

DetStats g_det;

void det_all_pairs(const AdjacencyGraph& g, std::uint64_t seed)
{
    const std::uint64_t n = g.vertex_count();
    const ReachMatrix reach = bfs_reach(g);
    for (Vertex s = 0; s < n; ++s)
        for (Vertex t = 0; t < n; ++t)
            for (const TapeProfile profile : kProfiles) {
                CatalyticTape tape = CatalyticTape::make(tape_bits_det(n), profile, seed + s * n + t);
                const Digest before = tape.digest();
                const ConnectivityAnswer a = connect_det(g, s, t, tape);
                ++g_det.runs;
                if ((a.verdict == Verdict::Path) != reach(s, t) || a.verdict == Verdict::Abort) {
                    if (g_det.mismatches++ == 0)
                        g_det.first_mismatch = describe(g, s, t);
                }
                if (tape.digest() != before || !a.metrics.tape_restored) {
                    if (g_det.unrestored++ == 0)
                        g_det.first_unrestored = describe(g, s, t) + " profile=" + std::string(to_string(profile));
                }
                g_workspace.record(a.metrics, n, g.edges(), a.path_length, 0, "connect_det");
            }
}

void run_det_matrix()
{
    std::uint64_t graphs = 0;
    for (std::uint64_t n = 1; n <= 4; ++n)
        testing::for_each_digraph(n, [&](const AdjacencyGraph& g) { det_all_pairs(g, graphs++); });
    Rng rng(1001, Rng::Stream::Harness);
    for (int i = 0; i < 500; ++i) {
        const std::uint64_t n = rng.uniform(1, 8);
        const AdjacencyGraph g = testing::random_digraph(rng, n, rng.unit() * 0.5);
        det_all_pairs(g, graphs++);
    }
}

Outcome criterion1()
{
    Outcome o;
    std::ostringstream d;
    d << g_det.runs << " runs (all digraphs n<=4 plus 500 random n<=8, all pairs, 3 profiles), " << g_det.mismatches
      << " mismatches";
    o.detail = d.str();
    if (g_det.mismatches)
        o.fail("mismatch at " + g_det.first_mismatch);
    return o;
}

Outcome criterion2()
{
    Outcome o;
    std::ostringstream d;
    d << g_det.runs << " runs over zeros/ones/random tapes, " << g_det.unrestored << " digest changes";
    o.detail = d.str();
    if (g_det.unrestored)
        o.fail("tape changed at " + g_det.first_unrestored);
    return o;
}

// ---------------------------------------------------------------------------
// 3: modular path counting

/// Registers for {0..T} x [n], shifted by a random beta until all are valid.
struct ShiftedFile {
    CatalyticTape tape;
    RegisterFile regs;
    WideValue beta;

    ShiftedFile(std::size_t count, unsigned width, std::uint64_t q, std::uint64_t seed)
        : tape(CatalyticTape::make(count * width, TapeProfile::Random, seed)), regs(tape, 0, count, width, q)
    {
        Rng rng(seed, Rng::Stream::Harness);
        for (;;) {
            beta = random_wide(rng, width);
            regs.shift_all(beta);
            if (regs.all_valid())
                return;
            regs.unshift_all(beta);
        }
    }
};

struct CountStats {
    std::uint64_t graphs = 0;
    std::uint64_t register_checks = 0;
    std::uint64_t driver_calls = 0;
    std::uint64_t failures = 0;
    std::string first_failure;
};

void count_check(const AdjacencyGraph& g, Rng& rng, CountStats& st)
{
    constexpr std::uint64_t kT = 4;
    constexpr unsigned kWidth = 20;
    const std::uint64_t n = g.vertex_count();
    ++st.graphs;
    for (Vertex s = 0; s < n; ++s) {
        std::vector<std::vector<BigInt>> counts;
        for (std::uint64_t i = 0; i <= kT; ++i)
            counts.push_back(count_paths(g, s, i));
        for (int pair = 0; pair < 20; ++pair) {
            const std::uint64_t q = rng.uniform(3, std::uint64_t{1} << 12);
            ShiftedFile f((kT + 1) * n, kWidth, q, rng.next());
            const Digest shifted = f.tape.digest();
            auto failure = [&](const std::string& what) {
                if (st.failures++ == 0) {
                    std::ostringstream o;
                    o << what << " " << describe(g, s, 0) << " q=" << q;
                    st.first_failure = o.str();
                }
            };

            // Every layer register: alpha_1 - alpha_0 == #paths mod q.
            LayeredPushProgram program(g, s, 0, kT, f.regs);
            std::vector<std::uint64_t> alpha0((kT + 1) * n);
            program.forward(0);
            for (std::size_t r = 0; r < alpha0.size(); ++r)
                alpha0[r] = f.regs.residue(r);
            program.reverse(0);
            program.forward(1);
            for (std::uint64_t i = 0; i <= kT; ++i)
                for (Vertex v = 0; v < n; ++v) {
                    const std::size_t r = program.index(i, v);
                    const std::uint64_t diff = (f.regs.residue(r) + q - alpha0[r]) % q;
                    ++st.register_checks;
                    if (BigInt(diff) != counts[i][v] % q)
                        failure("layer register");
                }
            program.reverse(1);
            if (f.tape.digest() != shifted)
                failure("program not reverted");

            // The driver entry point, cycling through targets and lengths.
            const Vertex t = static_cast<Vertex>(pair % n);
            const std::uint64_t T = static_cast<std::uint64_t>(pair) % (kT + 1);
            const BigInt got = st_count_mod(g, s, t, T, f.regs);
            ++st.driver_calls;
            if (got != counts[T][t] % q)
                failure("st_count_mod");
            if (f.tape.digest() != shifted)
                failure("st_count_mod changed the tape");
            f.regs.unshift_all(f.beta);
        }
    }
}

Outcome criterion3()
{
    CountStats st;
    Rng rng(3003, Rng::Stream::Harness);
    for (std::uint64_t n = 1; n <= 4; ++n)
        testing::for_each_digraph(n, [&](const AdjacencyGraph& g) { count_check(g, rng, st); });
    const std::uint64_t exhaustive = st.graphs;
    for (std::uint64_t n = 5; n <= 6; ++n)
        for (int i = 0; i < 1000; ++i)
            count_check(testing::random_digraph(rng, n, rng.unit()), rng, st);
    Outcome o;
    std::ostringstream d;
    d << exhaustive << " graphs exhaustive n<=4 + " << st.graphs - exhaustive
      << " random n=5..6, all s, T<=4, 20 (q,tape) pairs each; " << st.register_checks << " register checks, "
      << st.driver_calls << " st_count_mod calls, " << st.failures << " failures";
    o.detail = d.str();
    if (st.failures)
        o.fail(st.first_failure);
    return o;
}

// ---------------------------------------------------------------------------
// 4: randomized connectivity

/// Random instance on n vertices; with want_path a random s->t path is
/// planted, otherwise every edge from s's side of a random cut to t's side is
/// dropped.
AdjacencyGraph mixed_instance(Rng& rng, std::uint64_t n, Vertex s, Vertex t, bool want_path)
{
    const double p = rng.unit() * 0.4;
    std::vector<int> side(n);
    for (Vertex v = 0; v < n; ++v)
        side[v] = rng.coin(0.5) ? 1 : 0;
    side[s] = 0;
    side[t] = 1;
    AdjacencyGraph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && rng.coin(p) && (want_path || !(side[u] == 0 && side[v] == 1)))
                g.add_edge(u, v);
    if (want_path) {
        std::vector<Vertex> middle;
        for (Vertex v = 0; v < n; ++v)
            if (v != s && v != t && rng.coin(0.3))
                middle.push_back(v);
        Vertex prev = s;
        middle.push_back(t);
        for (Vertex v : middle) {
            if (!g.has_edge(prev, v))
                g.add_edge(prev, v);
            prev = v;
        }
    }
    return g;
}

Outcome criterion4()
{
    Rng rng(4004, Rng::Stream::Harness);
    std::uint64_t trials = 0, path_instances = 0, true_positives = 0, false_positives = 0, aborts = 0,
                  unrestored = 0;
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t n = rng.uniform(2, 10);
        const Vertex s = rng.uniform(0, n - 1);
        Vertex t = rng.uniform(0, n - 2);
        if (t >= s)
            ++t;
        const bool want_path = i % 2 == 0;
        const AdjacencyGraph g = mixed_instance(rng, n, s, t, want_path);
        const bool reachable = bfs_reach(g)(s, t);
        CatalyticTape tape = CatalyticTape::make(tape_bits_rand(n), TapeProfile::Random, rng.next());
        const Digest before = tape.digest();
        ConnectOptions opts;
        opts.seed = rng.next();
        const ConnectivityAnswer a = connect_rand(g, s, t, tape, opts);
        ++trials;
        path_instances += reachable ? 1 : 0;
        if (a.verdict == Verdict::Abort)
            ++aborts;
        else if (a.verdict == Verdict::Path)
            (reachable ? true_positives : false_positives) += 1;
        if (tape.digest() != before || !a.metrics.tape_restored)
            ++unrestored;
        g_workspace.record(a.metrics, n, g.edges(), a.path_length, 0, "connect_rand");
    }
    const double tp_rate = static_cast<double>(true_positives) / static_cast<double>(path_instances);
    const double abort_rate = static_cast<double>(aborts) / static_cast<double>(trials);
    Outcome o;
    std::ostringstream d;
    d << trials << " trials (" << path_instances << " with a path), false positives " << false_positives
      << ", true-positive rate " << tp_rate << ", abort rate " << abort_rate << ", unrestored " << unrestored;
    o.detail = d.str();
    if (false_positives)
        o.fail("false positive");
    if (tp_rate < 0.5)
        o.fail("true-positive rate below 1/2");
    if (abort_rate > 0.01)
        o.fail("abort rate above 1%");
    if (unrestored)
        o.fail("tape not restored");
    return o;
}

// ---------------------------------------------------------------------------
// 5: local revertibility

Outcome criterion5()
{
    Rng rng(5005, Rng::Stream::Harness);
    std::uint64_t graphs = 0, queries = 0, wrong_bits = 0, verdict_changes = 0, wrong_verdicts = 0, aborts = 0,
                  unrestored = 0, no_pause = 0;
    Outcome o;
    for (int i = 0; i < 200; ++i) {
        const std::uint64_t n = rng.uniform(2, 8);
        const AdjacencyGraph g = testing::random_digraph(rng, n, 0.1 + rng.unit() * 0.4);
        const Vertex s = rng.uniform(0, n - 1);
        Vertex t = rng.uniform(0, n - 2);
        if (t >= s)
            ++t;
        const std::uint64_t tape_seed = rng.next();
        ConnectOptions opts;
        opts.seed = rng.next();
        const std::size_t bits = tape_bits_revertible(n);

        CatalyticTape dry_tape = CatalyticTape::make(bits, TapeProfile::Random, tape_seed);
        const ConnectivityAnswer dry = connect_revertible(g, s, t, dry_tape, opts);
        ++graphs;

        CatalyticTape tape = CatalyticTape::make(bits, TapeProfile::Random, tape_seed);
        const CatalyticTape::Snapshot original = tape.snapshot();
        const Digest before = tape.digest();
        std::vector<std::pair<std::uint64_t, std::size_t>> plan;
        if (dry.pause_points == 0)
            ++no_pause;
        else
            for (int k = 0; k < 1000; ++k)
                plan.emplace_back(rng.uniform(0, dry.pause_points - 1), rng.uniform(0, bits - 1));
        std::sort(plan.begin(), plan.end());
        std::size_t next = 0;
        ConnectOptions hooked = opts;
        hooked.pause_hook = [&](std::uint64_t id, const OriginalTapeQuery& query) {
            for (; next < plan.size() && plan[next].first == id; ++next) {
                const std::size_t idx = plan[next].second;
                const bool want = (original.words[idx / 64] >> (idx % 64)) & 1u;
                ++queries;
                if (query.original_bit(idx) != want && wrong_bits++ == 0)
                    o.fail("wrong original bit at " + describe(g, s, t));
            }
        };
        const ConnectivityAnswer a = connect_revertible(g, s, t, tape, hooked);
        if (next != plan.size())
            o.fail("pause points differ between the dry run and the queried run");
        if (a.verdict != dry.verdict && verdict_changes++ == 0)
            o.fail("queries changed the verdict at " + describe(g, s, t));
        if (a.verdict == Verdict::Abort)
            ++aborts;
        else if ((a.verdict == Verdict::Path) != bfs_reach(g)(s, t) && wrong_verdicts++ == 0)
            o.fail("wrong verdict at " + describe(g, s, t));
        if ((tape.digest() != before || !a.metrics.tape_restored) && unrestored++ == 0)
            o.fail("tape not restored at " + describe(g, s, t));
        g_workspace.record(a.metrics, n, g.edges(), a.path_length, 0, "connect_revertible");
    }
    std::ostringstream d;
    d << graphs << " graphs, " << queries << " queries, " << wrong_bits << " wrong bits, " << verdict_changes
      << " verdict changes, " << wrong_verdicts << " wrong verdicts, " << aborts << " aborts (" << no_pause
      << " before the first pause), " << unrestored << " unrestored";
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 6: degree reduction

Outcome criterion6()
{
    Rng rng(6006, Rng::Stream::Harness);
    Outcome o;
    std::uint64_t worst_indeg = 0;
    for (int i = 0; i < 200; ++i) {
        const std::uint64_t n = rng.uniform(1, 8);
        const AdjacencyGraph g = testing::random_digraph(rng, n, rng.unit());
        const DegreeReducedView view(g);
        const ReachMatrix base = bfs_reach(g);
        const ReachMatrix lifted = bfs_reach(view);
        for (Vertex x = 0; x < view.vertex_count(); ++x)
            worst_indeg = std::max(worst_indeg, view.in_degree(x));
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = 0; v < n; ++v)
                if (base(u, v) != lifted(u, v))
                    o.fail("reachability differs at " + describe(g, u, v));
        std::uint64_t nonisolated = 0;
        auto cursor = view.enumerate_nonisolated();
        while (cursor.next())
            ++nonisolated;
        if (nonisolated > 2 * g.edges() + n)
            o.fail("too many non-isolated vertices at " + describe(g, 0, 0));
    }
    if (worst_indeg > 2)
        o.fail("in-degree above 2");
    o.detail = "200 graphs n<=8, max view in-degree " + std::to_string(worst_indeg);
    return o;
}

// ---------------------------------------------------------------------------
// 7 and 8: acyclic walks

struct FairnessStats {
    std::uint64_t runs = 0;
    std::uint64_t worst_spread = 0;
};

FairnessStats g_fairness;

Outcome criterion7()
{
    Rng rng(7007, Rng::Stream::Harness);
    Outcome o;
    std::uint64_t runs = 0;
    double worst_err = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t n = rng.uniform(2, 40);
        const AdjacencyGraph g = testing::random_dag(rng, n, 0.05 + rng.unit() * 0.25);
        const Vertex s = rng.uniform(0, n / 2);
        std::vector<Vertex> sinks;
        for (Vertex v = 0; v < n; ++v)
            if (g.out_degree(v) == 0)
                sinks.push_back(v);
        const Vertex t = sinks[rng.uniform(0, sinks.size() - 1)];
        const Rational p = dag_reach_probability(g, s)[t];
        for (const double eps : {0.1, 0.02})
            for (const TapeProfile profile : kProfiles) {
                CatalyticTape tape =
                    CatalyticTape::make(tape_bits_dag(n, g.edges(), eps), profile, rng.next());
                const Digest before = tape.digest();
                WalkOptions opts;
                opts.collect_counters = true;
                const WalkAnswer a = estimate_dag(g, s, t, eps, tape, opts);
                ++runs;
                const double err = std::abs(a.rho - static_cast<double>(p));
                worst_err = std::max(worst_err, err / eps);
                if (err > eps)
                    o.fail("|rho - p| > eps at " + describe(g, s, t));
                const Rational run_err =
                    Rational(static_cast<long long>(a.reach)) - Rational(static_cast<long long>(a.K)) * p;
                if (boost::multiprecision::abs(run_err) > Rational(static_cast<long long>(2 * g.edges())))
                    o.fail("|N_t - K p| > 2m at " + describe(g, s, t));
                if (tape.digest() != before || !a.metrics.tape_restored)
                    o.fail("tape not restored at " + describe(g, s, t));
                for (const auto& counts : a.counters->transitions)
                    if (!counts.empty()) {
                        const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
                        g_fairness.worst_spread = std::max(g_fairness.worst_spread, *hi - *lo);
                    }
                ++g_fairness.runs;
                g_workspace.record(a.metrics, n, g.edges(), 0, inv_eps(eps), "estimate_dag");
            }
    }
    std::ostringstream d;
    d << runs << " runs (100 DAGs n<=40, eps 0.1 and 0.02, 3 profiles), worst |rho-p|/eps " << worst_err;
    o.detail = d.str();
    return o;
}

Outcome criterion8()
{
    Outcome o;
    if (g_fairness.worst_spread > 2)
        o.fail("edge counts of one vertex differ by more than 2");
    Rng rng(8008, Rng::Stream::Harness);
    std::uint64_t reversals = 0;
    for (const std::uint64_t K : {0u, 1u, 2u, 5u, 50u})
        for (int i = 0; i < 40; ++i) {
            const std::uint64_t n = rng.uniform(1, 30);
            const AdjacencyGraph g = testing::random_dag(rng, n, rng.unit() * 0.4);
            const unsigned width = static_cast<unsigned>(rng.uniform(1, 8));
            CatalyticTape tape = CatalyticTape::make(n * width, kProfiles[i % 3], rng.next());
            WalkRegisters regs(tape, 0, n, width);
            const Digest before = tape.digest();
            WalkContext ctx;
            const Vertex s = rng.uniform(0, n - 1);
            forward_walks(g, s, n - 1, K, regs, ctx);
            reverse_walks(g, s, K, regs, ctx);
            ++reversals;
            if (tape.digest() != before)
                o.fail("K-forward + K-reverse changed the registers, K=" + std::to_string(K));
        }
    std::ostringstream d;
    d << g_fairness.runs << " forward phases, worst per-vertex edge-count spread " << g_fairness.worst_spread << "; "
      << reversals << " reversal runs for K in {0,1,2,5,50}";
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 9: general-graph walk

Outcome criterion9()
{
    Rng rng(9009, Rng::Stream::Harness);
    Outcome o;
    double worst = 0.0;
    constexpr double kEps = 0.05;
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t n = rng.uniform(1, 20);
        const AdjacencyGraph g = testing::random_out_regular(rng, n, rng.uniform(1, 3));
        const std::uint64_t T = rng.uniform(1, 10);
        const Vertex s = rng.uniform(0, n - 1);
        const Vertex t = rng.uniform(0, n - 1);
        const double exact = walk_distribution(g, s, T).at(t);
        CatalyticTape tape =
            CatalyticTape::make(tape_bits_general(n, g.edges(), T, kEps), kProfiles[i % 3], rng.next());
        const Digest before = tape.digest();
        const WalkAnswer a = estimate_general(g, s, t, T, kEps, tape);
        const double err = std::abs(a.rho - exact);
        worst = std::max(worst, err);
        if (err > kEps)
            o.fail("|rho - p| > eps at " + describe(g, s, t) + " T=" + std::to_string(T));
        if (tape.digest() != before || !a.metrics.tape_restored)
            o.fail("tape not restored at " + describe(g, s, t));
        g_workspace.record(a.metrics, n, g.edges(), T, inv_eps(kEps), "estimate_general");
    }
    std::ostringstream d;
    d << "100 out-regular graphs n<=20 T<=10 eps=0.05, worst error " << worst;
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 10: stationary walk

Outcome criterion10()
{
    Rng rng(10010, Rng::Stream::Harness);
    Outcome o;
    std::uint64_t runs = 0;
    double worst_slack = -1.0;
    auto check = [&](const AdjacencyGraph& g, Vertex v_star, std::uint64_t T) {
        const std::vector<double> pi = stationary_exact(g);
        const double eps_meas = mixing_error(g, T, pi);
        for (const double delta : {0.1, 0.02}) {
            CatalyticTape tape = CatalyticTape::make(g.vertex_count() * rotor_width(g), TapeProfile::Random,
                                                     rng.next());
            const Digest before = tape.digest();
            StationaryOptions opts;
            opts.start = rng.uniform(0, g.vertex_count() - 1);
            const StationaryAnswer a = estimate_stationary(g, v_star, T, delta, tape, opts);
            ++runs;
            const double err = std::abs(a.rho - pi[v_star]);
            worst_slack = std::max(worst_slack, err - (eps_meas + delta));
            if (err > eps_meas + delta)
                o.fail("|rho - pi| > eps_meas + delta at " + describe(g, v_star, v_star));
            if (tape.digest() != before || !a.metrics.tape_restored)
                o.fail("rotors not restored out of band");
            g_workspace.record(a.metrics, g.vertex_count(), g.edges(), T, inv_eps(delta), "estimate_stationary");
        }
    };
    check(testing::cycle_graph(4), 0, 8);
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t n = rng.uniform(2, 15);
        const AdjacencyGraph g = testing::random_ergodic(rng, n, rng.uniform(1, 3));
        check(g, rng.uniform(0, n - 1), 4 * n);
    }

    // Two rotor initializations that end in the same state.
    const AdjacencyGraph fig(5, {{0, 1}, {1, 0}, {0, 2}, {2, 3}, {3, 2}, {2, 4}});
    auto rotor_run = [&](std::uint64_t a_rotor, std::uint64_t c_rotor) {
        CatalyticTape tape(5);
        RegisterFile rotors = RegisterFile::full_width(tape, 0, 5, rotor_width(fig));
        rotors.store(0, a_rotor);
        rotors.store(2, c_rotor);
        WalkContext ctx;
        const Vertex end = rotor_walk(fig, 0, 4, rotors, ctx);
        return std::pair{end, tape.snapshot()};
    };
    const auto first = rotor_run(0, 1);
    const auto second = rotor_run(1, 0);
    const bool merged = first.first == 4 && second.first == 4 && first.second == second.second;
    if (!merged)
        o.fail("rotor initializations did not merge");

    std::ostringstream d;
    d << runs << " runs (4-cycle + 50 ergodic graphs n<=15, delta 0.1 and 0.02), worst error minus bound "
      << worst_slack << "; distinct initial rotors merge: " << (merged ? "yes" : "no");
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 11: workspace

Outcome criterion11()
{
    Outcome o;
    std::ostringstream d;
    d << g_workspace.runs << " driver runs, c=" << kWorkspaceConstant << ", worst peak/log2(n+m+T+1/eps+2) "
      << g_workspace.worst_ratio << " (" << g_workspace.worst_label << ")";
    o.detail = d.str();
    if (g_workspace.violations)
        o.fail(std::to_string(g_workspace.violations) + " runs above the pinned bound");
    return o;
}

// ---------------------------------------------------------------------------
// 12: scaling

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const double k = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

Outcome criterion12()
{
    Outcome o;
    Rng rng(12012, Rng::Stream::Harness);

    // connect_rand at n = 16, t has no in-edges; m doubles.
    constexpr std::uint64_t kN = 16;
    std::vector<double> ms, steps;
    for (const std::uint64_t m : {16u, 32u, 64u, 128u}) {
        AdjacencyGraph g(kN);
        while (g.edges() < m) {
            const Vertex u = rng.uniform(0, kN - 1);
            const Vertex v = rng.uniform(0, kN - 2);
            if (u != v && !g.has_edge(u, v))
                g.add_edge(u, v);
        }
        double total = 0;
        int counted = 0;
        for (std::uint64_t seed = 0; counted < 3; ++seed) {
            CatalyticTape tape = CatalyticTape::make(tape_bits_rand(kN), TapeProfile::Random, seed);
            ConnectOptions opts;
            opts.seed = seed;
            const ConnectivityAnswer a = connect_rand(g, 0, kN - 1, tape, opts);
            if (a.verdict == Verdict::Abort)
                continue;
            total += static_cast<double>(a.metrics.elapsed_steps);
            ++counted;
        }
        ms.push_back(static_cast<double>(m));
        steps.push_back(total / counted);
    }
    const double slope = loglog_slope(ms, steps);
    if (!(slope < 2.0))
        o.fail("connect_rand steps grow at least quadratically in m");

    // estimate_general at fixed m and eps; T doubles.
    const AdjacencyGraph g = testing::random_out_regular(rng, 10, 2);
    std::vector<double> ratios;
    double prev = 0;
    for (const std::uint64_t T : {4u, 8u, 16u, 32u}) {
        CatalyticTape tape = CatalyticTape::make(tape_bits_general(10, g.edges(), T, 0.1), TapeProfile::Random, T);
        const WalkAnswer a = estimate_general(g, 0, 1, T, 0.1, tape);
        const double s = static_cast<double>(a.metrics.elapsed_steps);
        if (prev > 0)
            ratios.push_back(s / prev);
        prev = s;
    }
    for (const double r : ratios)
        if (r < 2.0 || r > 8.0)
            o.fail("estimate_general step ratio outside [2, 8] when T doubles");

    std::ostringstream d;
    d << "connect_rand log-log slope in m " << slope << "; estimate_general steps(2T)/steps(T):";
    for (const double r : ratios)
        d << ' ' << r;
    o.detail = d.str();
    return o;
}

} // namespace
} // namespace catgraph

int main()
{
    using namespace catgraph;
    using Clock = std::chrono::steady_clock;
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "deterministic connectivity exactness", [] { run_det_matrix(); return criterion1(); }},
        {2, "catalytic restoration", criterion2},
        {3, "modular path counting", criterion3},
        {4, "randomized connectivity soundness and completeness", criterion4},
        {5, "local revertibility", criterion5},
        {6, "degree reduction", criterion6},
        {7, "acyclic walk accuracy", criterion7},
        {8, "fairness and reversibility", criterion8},
        {9, "general-graph walk", criterion9},
        {10, "stationary walk", criterion10},
        {11, "workspace discipline", criterion11},
        {12, "scaling smoke check", criterion12},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << ": " << c.name << " | " << o.detail;
        if (!o.pass)
            std::cout << " | first failure: " << o.first_failure;
        std::printf(" | %.1fs\n", secs);
        std::cout.flush();
        failures += o.pass ? 0 : 1;
    }
    std::cout << (failures ? "acceptance: FAIL" : "acceptance: PASS") << " (" << 12 - failures << "/12)\n";
    return failures ? 1 : 0;
}
