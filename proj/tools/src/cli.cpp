#include "cli.hpp"

#include "catgraph/connectivity.hpp"
#include "catgraph/graph.hpp"
#include "catgraph/oracles.hpp"
#include "catgraph/random_walk.hpp"
#include "catgraph/rng.hpp"
#include "catgraph/views.hpp"

#include <CLI11.hpp>
#if CATGRAPH_SYSTEM_JSON
#include <nlohmann/json.hpp>
#else
#include <json.hpp>
#endif

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <thread>

namespace catgraph::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string graph_path;
    std::string tape_profile = "random";
    std::optional<std::uint64_t> tape_seed;
    bool json = false;
    bool timing = false;
    bool verify = false;
    std::uint64_t trials = 1;
    bool parallel = false;

    void attach(CLI::App& cmd)
    {
        cmd.add_option("graph", graph_path, "Graph file")->required();
        cmd.add_option("--tape-seed", tape_seed, "Seed for the initial tape contents");
        cmd.add_option("--tape-profile", tape_profile, "Initial tape contents")
            ->check(CLI::IsMember({"zeros", "ones", "random"}));
        cmd.add_flag("--json", json, "Print metrics as JSON");
        cmd.add_flag("--timing", timing, "Report wall time (off by default so that output replays exactly)");
        cmd.add_flag("--verify", verify, "Cross-check against the reference oracles");
        cmd.add_option("--trials", trials, "Independent seeded trials")->check(CLI::PositiveNumber);
        cmd.add_flag("--parallel", parallel, "Run trials concurrently");
    }
};

/// Flag value, else CATGRAPH_SEED, else 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag)
{
    if (flag)
        return *flag;
    return seed_from_environment().value_or(0);
}

AdjacencyGraph read_graph(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open graph file: " + path);
    try {
        return load_graph_file(path);
    } catch (const GraphFormatError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void check_vertex(const AdjacencyGraph& g, Vertex v, const char* name)
{
    if (v >= g.vertex_count())
        throw InputError(std::string(name) + "=" + std::to_string(v) + " is not a vertex (n=" +
                         std::to_string(g.vertex_count()) + ")");
}

Json metrics_json(const RunMetrics& m, bool timing)
{
    Json j;
    j["verdict"] = m.verdict ? Json(std::string(to_string(*m.verdict))) : Json(nullptr);
    j["estimate"] = m.estimate ? Json(*m.estimate) : Json(nullptr);
    j["elapsed_steps"] = m.elapsed_steps;
    j["wall_time_ms"] = timing ? Json(m.wall_time_ms) : Json(nullptr);
    j["workspace_peak_bits"] = m.workspace_peak_bits;
    j["catalytic_bits"] = m.catalytic_bits;
    j["tape_restored"] = m.tape_restored;
    j["aborted"] = m.aborted;
    j["normalizations"] = m.normalizations;
    return j;
}

Json counters_json(const VisitCounters& c)
{
    Json visits = Json::object();
    Json transitions = Json::object();
    for (std::size_t v = 0; v < c.visits.size(); ++v) {
        visits[std::to_string(v)] = c.visits[v];
        Json edges = Json::object();
        for (std::size_t r = 0; r < c.transitions[v].size(); ++r)
            edges[std::to_string(r)] = c.transitions[v][r];
        transitions[std::to_string(v)] = std::move(edges);
    }
    Json j;
    j["visits"] = std::move(visits);
    j["transitions"] = std::move(transitions);
    j["reach"] = c.reach;
    return j;
}

/// One run's report and its exit code.
struct TrialResult {
    Json report;
    int code = kOk;
};

void print_human(std::ostream& out, const Json& j, const std::string& indent = "")
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it->is_object()) {
            out << indent << it.key() << ":\n";
            print_human(out, *it, indent + "  ");
        } else if (it->is_array()) {
            out << indent << it.key() << ":";
            for (const auto& x : *it)
                out << ' ' << (x.is_string() ? x.get<std::string>() : x.dump());
            out << '\n';
        } else {
            out << indent << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
        }
    }
}

void emit(std::ostream& out, const Json& j, bool json)
{
    if (json)
        out << j.dump() << '\n';
    else
        print_human(out, j);
}

/// Runs `trials` independent runs (trial i gets index i) and reports either
/// the single run or an aggregate.
int run_trials(const CommonOptions& common, const std::string& command,
               const std::function<TrialResult(std::uint64_t)>& one, std::ostream& out,
               const std::function<std::string(const TrialResult&)>& bucket)
{
    std::vector<TrialResult> results(common.trials);
    if (common.parallel && common.trials > 1) {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::string> errors(common.trials);
        const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                                 static_cast<unsigned>(common.trials)));
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t i = next++; i < common.trials; i = next++) {
                    try {
                        results[i] = one(i);
                    } catch (const std::exception& e) {
                        errors[i] = e.what();
                    }
                }
            });
        for (auto& t : pool)
            t.join();
        for (const auto& e : errors)
            if (!e.empty())
                throw InputError(e);
    } else {
        for (std::uint64_t i = 0; i < common.trials; ++i)
            results[i] = one(i);
    }

    if (common.trials == 1) {
        emit(out, results[0].report, common.json);
        return results[0].code;
    }

    Json agg;
    agg["schema"] = kSchemaVersion;
    agg["command"] = command;
    agg["trials"] = common.trials;
    Json buckets = Json::object();
    std::uint64_t mismatches = 0;
    std::uint64_t steps = 0;
    bool restored = true;
    for (const auto& r : results) {
        const std::string key = bucket(r);
        buckets[key] = buckets.value(key, std::uint64_t{0}) + 1;
        mismatches += r.code == kMismatch ? 1 : 0;
        steps += r.report["elapsed_steps"].get<std::uint64_t>();
        restored = restored && r.report["tape_restored"].get<bool>();
    }
    agg["outcomes"] = std::move(buckets);
    agg["mismatches"] = mismatches;
    agg["elapsed_steps_total"] = steps;
    agg["all_tape_restored"] = restored;
    emit(out, agg, common.json);
    return mismatches > 0 || !restored ? kMismatch : kOk;
}

// ---------------------------------------------------------------------------
// connect

struct ConnectOptionsCli {
    CommonOptions common;
    Vertex s = 0;
    Vertex t = 0;
    std::string algo = "det";
    std::optional<std::uint64_t> rng_seed;
    double kappa = 8.0;
};

int cmd_connect(const ConnectOptionsCli& o, std::ostream& out)
{
    const AdjacencyGraph g = read_graph(o.common.graph_path);
    check_vertex(g, o.s, "s");
    check_vertex(g, o.t, "t");
    const std::uint64_t n = g.vertex_count();
    const std::uint64_t tape_seed = resolve_seed(o.common.tape_seed);
    const std::uint64_t rng_seed = resolve_seed(o.rng_seed);
    const TapeProfile profile = parse_tape_profile(o.common.tape_profile);
    const std::optional<ReachMatrix> reach =
        o.common.verify ? std::optional<ReachMatrix>(bfs_reach(g)) : std::nullopt;

    auto one = [&](std::uint64_t i) {
        ConnectOptions opts;
        opts.seed = rng_seed + i;
        opts.kappa = o.kappa;
        std::size_t bits = 0;
        if (o.algo == "det")
            bits = tape_bits_det(n);
        else if (o.algo == "rand")
            bits = tape_bits_rand(n);
        else
            bits = tape_bits_revertible(n);
        CatalyticTape tape = CatalyticTape::make(bits, profile, tape_seed + i);
        ConnectivityAnswer a;
        if (o.algo == "det")
            a = connect_det(g, o.s, o.t, tape, opts);
        else if (o.algo == "rand")
            a = connect_rand(g, o.s, o.t, tape, opts);
        else
            a = connect_revertible(g, o.s, o.t, tape, opts);

        TrialResult r;
        Json& j = r.report;
        j["schema"] = kSchemaVersion;
        j["command"] = "connect";
        j["algo"] = o.algo;
        j["graph"] = {{"n", n}, {"m", g.edges()}};
        j["s"] = o.s;
        j["t"] = o.t;
        j["seeds"] = {{"tape", tape_seed + i}, {"rng", rng_seed + i}};
        j["tape_profile"] = o.common.tape_profile;
        j.update(metrics_json(a.metrics, o.common.timing));
        j["register_width"] = a.register_width;
        j["path_length"] = a.path_length;
        j["iterations"] = a.iterations_run;
        j["modulus"] = a.last_modulus.str();
        if (reach) {
            const bool expected = (*reach)(o.s, o.t);
            const bool match = a.verdict == Verdict::Abort || (a.verdict == Verdict::Path) == expected;
            j["verify"] = {{"expected", expected ? "path" : "no-path"}, {"match", match}};
            if (!match)
                r.code = kMismatch;
        }
        if (!a.metrics.tape_restored)
            r.code = kMismatch;
        else if (r.code == kOk && a.verdict == Verdict::Abort)
            r.code = kAbort;
        return r;
    };
    return run_trials(o.common, "connect", one, out,
                      [](const TrialResult& r) { return r.report["verdict"].get<std::string>(); });
}

// ---------------------------------------------------------------------------
// walk

struct WalkOptionsCli {
    CommonOptions common;
    Vertex s = 0;
    Vertex t = 0;
    std::optional<std::uint64_t> steps;
    double eps = 0.1;
    bool dag = false;
    bool counters = false;
};

int cmd_walk(const WalkOptionsCli& o, std::ostream& out)
{
    const AdjacencyGraph g = read_graph(o.common.graph_path);
    check_vertex(g, o.s, "s");
    check_vertex(g, o.t, "t");
    if (!(o.eps > 0.0))
        throw InputError("--eps must be positive");
    if (o.dag) {
        if (!is_acyclic(g))
            throw InputError("--dag given but the graph has a cycle");
        if (g.out_degree(o.t) != 0)
            throw InputError("--dag needs t to be a sink");
    } else if (!o.steps) {
        throw InputError("walk needs --steps T, or --dag for an acyclic graph");
    }
    const std::uint64_t n = g.vertex_count();
    const std::uint64_t tape_seed = resolve_seed(o.common.tape_seed);
    const TapeProfile profile = parse_tape_profile(o.common.tape_profile);

    std::optional<double> expected;
    if (o.common.verify) {
        if (o.dag)
            expected = static_cast<double>(dag_reach_probability(g, o.s)[o.t]);
        else
            expected = walk_distribution(SinkLoopView(g), o.s, *o.steps).at(o.t);
    }

    auto one = [&](std::uint64_t i) {
        const std::size_t bits = o.dag ? tape_bits_dag(n, g.edges(), o.eps)
                                       : tape_bits_general(n, g.edges(), *o.steps, o.eps);
        CatalyticTape tape = CatalyticTape::make(bits, profile, tape_seed + i);
        WalkOptions opts;
        opts.collect_counters = o.counters;
        const WalkAnswer a = o.dag ? estimate_dag(g, o.s, o.t, o.eps, tape, opts)
                                   : estimate_general(g, o.s, o.t, *o.steps, o.eps, tape, opts);
        TrialResult r;
        Json& j = r.report;
        j["schema"] = kSchemaVersion;
        j["command"] = "walk";
        j["mode"] = o.dag ? "dag" : "general";
        j["graph"] = {{"n", n}, {"m", g.edges()}};
        j["s"] = o.s;
        j["t"] = o.t;
        j["steps"] = o.steps ? Json(*o.steps) : Json(nullptr);
        j["eps"] = o.eps;
        j["seeds"] = {{"tape", tape_seed + i}};
        j["tape_profile"] = o.common.tape_profile;
        j.update(metrics_json(a.metrics, o.common.timing));
        j["rho"] = a.rho;
        j["K"] = a.K;
        j["reach"] = a.reach;
        j["register_width"] = a.register_width;
        if (a.counters)
            j["counters"] = counters_json(*a.counters);
        if (expected) {
            const bool match = std::abs(a.rho - *expected) <= o.eps;
            j["verify"] = {{"expected", *expected}, {"match", match}};
            if (!match)
                r.code = kMismatch;
        }
        if (!a.metrics.tape_restored)
            r.code = kMismatch;
        return r;
    };
    return run_trials(o.common, "walk", one, out, [](const TrialResult& r) {
        return r.report.contains("verify") && !r.report["verify"]["match"].get<bool>() ? "outside-eps"
                                                                                        : "within-eps";
    });
}

// ---------------------------------------------------------------------------
// stationary

struct StationaryOptionsCli {
    CommonOptions common;
    Vertex v_star = 0;
    std::uint64_t mix_time = 1;
    double delta = 0.05;
    Vertex start = 0;
    bool no_restore = false;
    bool counters = false;
};

int cmd_stationary(const StationaryOptionsCli& o, std::ostream& out)
{
    const AdjacencyGraph g = read_graph(o.common.graph_path);
    check_vertex(g, o.v_star, "v_star");
    check_vertex(g, o.start, "start");
    if (!(o.delta > 0.0))
        throw InputError("--delta must be positive");
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.out_degree(v) == 0)
            throw InputError("vertex " + std::to_string(v) + " has no out-edges");
    const std::uint64_t tape_seed = resolve_seed(o.common.tape_seed);
    const TapeProfile profile = parse_tape_profile(o.common.tape_profile);

    std::optional<std::pair<double, double>> oracle;
    if (o.common.verify) {
        const auto pi = stationary_exact(g);
        oracle = std::pair{pi[o.v_star], mixing_error(g, o.mix_time, pi)};
    }

    auto one = [&](std::uint64_t i) {
        CatalyticTape tape = CatalyticTape::make(g.vertex_count() * rotor_width(g), profile, tape_seed + i);
        StationaryOptions opts;
        opts.start = o.start;
        opts.restore_tape = !o.no_restore;
        opts.collect_counters = o.counters;
        const StationaryAnswer a = estimate_stationary(g, o.v_star, o.mix_time, o.delta, tape, opts);
        TrialResult r;
        Json& j = r.report;
        j["schema"] = kSchemaVersion;
        j["command"] = "stationary";
        j["graph"] = {{"n", g.vertex_count()}, {"m", g.edges()}};
        j["v_star"] = o.v_star;
        j["mix_time"] = o.mix_time;
        j["delta"] = o.delta;
        j["seeds"] = {{"tape", tape_seed + i}};
        j["tape_profile"] = o.common.tape_profile;
        j.update(metrics_json(a.metrics, o.common.timing));
        j["rho"] = a.rho;
        j["T_prime"] = a.T_prime;
        j["visits"] = a.visits;
        j["in_band_irreversible"] = a.in_band_irreversible;
        j["registers_changed"] = a.registers_changed;
        if (a.counters)
            j["counters"] = counters_json(*a.counters);
        if (oracle) {
            const double bound = oracle->second + o.delta;
            const bool match = std::abs(a.rho - oracle->first) <= bound;
            j["verify"] = {{"pi", oracle->first}, {"mixing_error", oracle->second}, {"match", match}};
            if (!match)
                r.code = kMismatch;
        }
        if (opts.restore_tape && !a.metrics.tape_restored)
            r.code = kMismatch;
        return r;
    };
    return run_trials(o.common, "stationary", one, out, [](const TrialResult& r) {
        return r.report.contains("verify") && !r.report["verify"]["match"].get<bool>() ? "outside-bound"
                                                                                        : "within-bound";
    });
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Catalytic-space graph algorithms on a simulated catalytic tape"};
    app.name("catgraph");
    app.require_subcommand(1);

    ConnectOptionsCli connect;
    CLI::App* c = app.add_subcommand("connect", "s-t connectivity");
    connect.common.attach(*c);
    c->add_option("s", connect.s, "Source vertex")->required();
    c->add_option("t", connect.t, "Target vertex")->required();
    c->add_option("--algo", connect.algo, "det, rand or revertible")
        ->check(CLI::IsMember({"det", "rand", "revertible"}));
    c->add_option("--rng-seed", connect.rng_seed, "Seed for moduli and shifts");
    c->add_option("--kappa", connect.kappa, "Iterations per log2 n")->check(CLI::PositiveNumber);

    WalkOptionsCli walk;
    CLI::App* w = app.add_subcommand("walk", "Random-walk probability estimate");
    walk.common.attach(*w);
    w->add_option("s", walk.s, "Start vertex")->required();
    w->add_option("t", walk.t, "Target vertex")->required();
    CLI::Option* steps = w->add_option("--steps", walk.steps, "Walk length T (general graphs)");
    w->add_option("--eps", walk.eps, "Additive accuracy");
    w->add_flag("--dag", walk.dag, "Graph is acyclic and t is a sink")->excludes(steps);
    w->add_flag("--counters", walk.counters, "Include visit and transition counts");

    StationaryOptionsCli stat;
    CLI::App* st = app.add_subcommand("stationary", "Stationary probability by a rotor walk");
    stat.common.attach(*st);
    st->add_option("v_star", stat.v_star, "Vertex to estimate")->required();
    st->add_option("--mix-time", stat.mix_time, "Mixing time T")->required();
    st->add_option("--delta", stat.delta, "Accuracy delta");
    st->add_option("--start", stat.start, "Start vertex of the walk");
    st->add_flag("--no-restore", stat.no_restore, "Skip the out-of-band rotor restore");
    st->add_flag("--counters", stat.counters, "Include visit and transition counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        if (c->parsed())
            return cmd_connect(connect, out);
        if (w->parsed())
            return cmd_walk(walk, out);
        return cmd_stationary(stat, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const WalkSinkError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const OracleError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"catgraph"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace catgraph::cli
