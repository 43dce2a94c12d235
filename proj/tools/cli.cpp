#include "cli.hpp"

#include <lapwalk/io.hpp>
#include <lapwalk/mechanics.hpp>
#include <lapwalk/pinned_solve.hpp>
#include <lapwalk/walk_analytics.hpp>
#include <lapwalk/walk_sim.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace lapwalk::cli {

namespace {

using nlohmann::json;
using Eigen::Index;

constexpr double kIdentityTol = 1e-9;

struct Options {
    std::string graph;
    std::string matrix;
    std::string load;
    std::string forces;
    std::string output;
    std::size_t pin = 0;
    std::size_t vertex = 0;
    std::size_t target = 0;
    std::size_t from = 0;
    std::size_t nail = 0;
    std::size_t dim = 0;
    std::vector<std::size_t> triple;
    std::vector<std::size_t> sequence;
    bool all_triples = false;
    bool trace = false;
    bool csv = false;
    bool detailed = false;
    bool weighted = false;
    double tol = -1.0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::uint64_t max_steps = 1000000000;
};

// 1-based CLI index -> 0-based, checked against the input size.
std::size_t vertex_arg(std::size_t one_based, std::size_t n, const std::string& name) {
    if (one_based < 1 || one_based > n) {
        throw IndexError("--" + name + " " + std::to_string(one_based) + " outside [1, " +
                         std::to_string(n) + "]");
    }
    return one_based - 1;
}

std::vector<std::size_t> vertex_list(const std::vector<std::size_t>& values, std::size_t n,
                                     const std::string& name) {
    std::vector<std::size_t> out;
    out.reserve(values.size());
    for (std::size_t v : values) out.push_back(vertex_arg(v, n, name));
    return out;
}

json to_json(const Vector& v) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json to_json(const Matrix& m) {
    json a = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        a.push_back(std::move(row));
    }
    return a;
}

json one_based(const std::vector<std::size_t>& v) {
    json a = json::array();
    for (std::size_t x : v) a.push_back(x + 1);
    return a;
}

WalkKind kind_of(const Options& o) { return o.weighted ? WalkKind::weighted : WalkKind::simple; }

double tol_or(const Options& o, double fallback) { return o.tol >= 0.0 ? o.tol : fallback; }

ConductanceMatrix load_matrix(const Options& o) {
    Tolerances t;
    return ConductanceMatrix(io::read_csv_matrix(o.matrix), t);
}

LoadVector load_vector(const Options& o, std::size_t n) {
    if (o.load.empty()) return LoadVector::zeros(n);
    Vector v = io::read_vector(o.load);
    if (static_cast<std::size_t>(v.size()) != n) {
        throw FormatError(o.load + ": load has " + std::to_string(v.size()) + " entries, expected " +
                          std::to_string(n));
    }
    return LoadVector(std::move(v));
}

json report_json(const ValidationReport& r) {
    json checks = {
        {"symmetric", r.symmetric},
        {"nonpositive_off_diagonal", r.nonpositive_off_diagonal},
        {"irreducible", r.irreducible},
        {"zero_row_sums", r.zero_row_sums},
        {"rank_n_minus_1", r.rank_ok},
    };
    json components = json::array();
    for (const auto& c : r.components) components.push_back(one_based(c));
    return {
        {"n", r.n},
        {"checks", checks},
        {"worst_row_sum", r.worst_row_sum},
        {"smallest_eigenvalue", r.smallest_eigenvalue},
        {"second_smallest_eigenvalue", r.second_smallest_eigenvalue},
        {"components", components},
        {"diagnostics", r.diagnostics},
        {"pass", r.passed()},
    };
}

// Either a matrix mode (--matrix/--load) or a graph mode (--graph) for commands
// that accept both.
struct System {
    ConductanceMatrix a;
    LoadVector f;
};

System system_from(const Options& o) {
    if (!o.matrix.empty()) {
        ConductanceMatrix a = load_matrix(o);
        LoadVector f = load_vector(o, a.size());
        return {std::move(a), std::move(f)};
    }
    const WeightedGraph g = io::read_edge_list(o.graph);
    if (!o.load.empty()) return {laplacian_from_graph(g), load_vector(o, g.vertex_count())};
    return {walk_laplacian(g, kind_of(o)), LoadVector(walk_degrees(g, kind_of(o)))};
}

json cmd_validate(const Options& o, int& code) {
    Tolerances t;
    if (o.tol >= 0.0) t.row_sum = o.tol;
    const ValidationReport r = validate(io::read_csv_matrix(o.matrix), t);
    if (!r.passed()) code = validation_failure;
    return report_json(r);
}

json cmd_laplacian(const Options& o, std::string& csv) {
    const ConductanceMatrix a = laplacian_from_graph(io::read_edge_list(o.graph));
    if (o.csv) csv = io::format_csv(a.entries());
    return to_json(a.entries());
}

json cmd_solve(const Options& o) {
    System s = system_from(o);
    const std::size_t pin = vertex_arg(o.pin, s.a.size(), "pin");
    const PinnedSolution x = pinned_solve(s.a, s.f, pin);
    return {{"pin", x.pin + 1}, {"values", to_json(x.values)}, {"residual", x.residual}};
}

json cmd_eliminate(const Options& o, std::string& csv) {
    const ConductanceMatrix a = load_matrix(o);
    const LoadVector f = load_vector(o, a.size());
    const std::size_t v = vertex_arg(o.vertex, a.size(), "vertex");
    const EliminationResult r = eliminate_vertex(a, f, v);
    if (o.csv) csv = io::format_csv(r.reduced_matrix.entries());
    return {
        {"eliminated", r.eliminated + 1},
        {"survivors", one_based(r.survivors)},
        {"matrix", to_json(r.reduced_matrix.entries())},
        {"load", to_json(r.reduced_load.values())},
    };
}

json cmd_star_expand(const Options& o, std::string& csv) {
    const ConductanceMatrix a = load_matrix(o);
    const TriangleStar t = triangle_star_coefficients(a);
    const ConductanceMatrix b = star_expand_triangle(a);
    if (o.csv) csv = io::format_csv(b.entries());
    return {{"alpha", t.alpha}, {"c", t.c}, {"beta", t.beta}, {"matrix", to_json(b.entries())}};
}

json cmd_equilibrium(const Options& o, unsigned threads) {
    const WeightedGraph g = io::read_edge_list(o.graph);
    const std::size_t nail = vertex_arg(o.nail, g.vertex_count(), "nail");
    const ForceField forces(io::read_forces(o.forces));
    if (o.dim != 0 && forces.dimension() != o.dim) {
        throw FormatError(o.forces + ": force field has dimension " +
                          std::to_string(forces.dimension()) + ", --dim is " + std::to_string(o.dim));
    }
    const Equilibrium eq = solve_equilibrium(g, forces, nail, threads);
    const Matrix residual = residual_forces(g, forces, eq);
    return {
        {"nail", eq.nail + 1},
        {"positions", to_json(eq.positions)},
        {"reaction", to_json(eq.reaction)},
        {"max_residual", residual.cwiseAbs().maxCoeff()},
    };
}

json cmd_hit(const Options& o) {
    const WeightedGraph g = io::read_edge_list(o.graph);
    const std::size_t target = vertex_arg(o.target, g.vertex_count(), "target");
    return to_json(hitting_times_to(g, target, kind_of(o)));
}

json cmd_hit_matrix(const Options& o, unsigned threads, std::string& csv) {
    const HittingTable h = hitting_matrix(io::read_edge_list(o.graph), kind_of(o), threads);
    if (o.csv) csv = io::format_csv(h.h);
    return to_json(h.h);
}

json cmd_return_times(const Options& o) {
    const ReturnTimes r = return_times(io::read_edge_list(o.graph), kind_of(o));
    if (!o.detailed) return to_json(r.r);
    json a = json::array();
    for (std::size_t i = 0; i < r.n; ++i) {
        a.push_back({{"i", i + 1},
                     {"deg", r.degree(static_cast<Index>(i))},
                     {"R", r.r(static_cast<Index>(i))}});
    }
    return a;
}

json trace_json(const ReductionTrace& t) {
    json out = {
        {"triple", one_based({t.triple.begin(), t.triple.end()})},
        {"eliminated", one_based(t.eliminated)},
        {"reduced_matrix", to_json(t.reduced.entries())},
        {"reduced_load", to_json(t.reduced_load)},
        {"full_residual", t.full_residual},
        {"reduced_residual", t.reduced_residual},
        {"reduced_graph", t.triangle ? "triangle" : "path"},
        {"star_residual", t.star_residual},
        {"star_additivity_gap", t.star_additivity_gap},
    };
    if (t.star) out["star_matrix"] = to_json(t.star->entries());
    return out;
}

// All ordered triples of distinct vertices, or the one given by --triple.
std::vector<std::array<std::size_t, 3>> triples_for(const Options& o, std::size_t n) {
    if (o.all_triples == !o.triple.empty()) {
        throw std::invalid_argument("give exactly one of --triple or --all-triples");
    }
    if (n < 3) throw std::invalid_argument("cycle identities need at least 3 vertices");
    std::vector<std::array<std::size_t, 3>> out;
    if (!o.all_triples) {
        const auto t = vertex_list(o.triple, n, "triple");
        out.push_back({t[0], t[1], t[2]});
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (i != j && j != k && k != i) out.push_back({i, j, k});
    return out;
}

json cmd_verify_ctw(const Options& o, int& code) {
    const double tol = tol_or(o, kIdentityTol);
    const bool hitting_mode = o.matrix.empty() && o.load.empty();

    std::size_t n = 0;
    std::function<double(std::size_t, std::size_t, std::size_t)> residual;
    double scale = 0.0;
    std::optional<HittingTable> table;
    std::optional<System> sys;
    Matrix x;  // x(p, q) = x_pq, solved lazily per pin
    std::vector<bool> solved;

    if (hitting_mode) {
        const WeightedGraph g = io::read_edge_list(o.graph);
        n = g.vertex_count();
        triples_for(o, n);  // indices are checked before any solve
        table = hitting_matrix(g, kind_of(o), threads_from_env());
        scale = table->max_entry();
        residual = [&](std::size_t i, std::size_t j, std::size_t k) {
            return ctw_residual(*table, i, j, k);
        };
    } else {
        sys = system_from(o);
        n = sys->a.size();
        x = Matrix::Zero(static_cast<Index>(n), static_cast<Index>(n));
        solved.assign(n, false);
        residual = [&](std::size_t i, std::size_t j, std::size_t k) {
            for (std::size_t p : {i, j, k}) {
                if (solved[p]) continue;
                x.row(static_cast<Index>(p)) = pinned_solve(sys->a, sys->f, p).values.transpose();
                scale = std::max(scale, x.row(static_cast<Index>(p)).cwiseAbs().maxCoeff());
                solved[p] = true;
            }
            auto at = [&](std::size_t p, std::size_t q) {
                return x(static_cast<Index>(p), static_cast<Index>(q));
            };
            return (at(i, j) + at(j, k) + at(k, i)) - (at(j, i) + at(k, j) + at(i, k));
        };
    }

    const auto triples = triples_for(o, n);
    double worst = 0.0;
    std::array<std::size_t, 3> worst_triple = triples.front();
    double single = 0.0;
    for (const auto& t : triples) {
        const double r = residual(t[0], t[1], t[2]);
        single = r;
        if (std::abs(r) > worst || (std::isnan(r))) {
            worst = std::abs(r);
            worst_triple = t;
        }
    }
    const double threshold = tol * scale;
    const bool pass = worst <= threshold;
    json out = {
        {"mode", hitting_mode ? "hitting" : "load"},
        {"triples", triples.size()},
        {"max_abs_residual", worst},
        {"worst_triple", one_based({worst_triple.begin(), worst_triple.end()})},
        {"scale", scale},
        {"tolerance", tol},
        {"threshold", threshold},
        {"pass", pass},
    };
    if (!o.all_triples) out["residual"] = single;
    if (o.trace) {
        if (o.all_triples) throw std::invalid_argument("--trace needs --triple");
        const System s = sys ? *sys : system_from(o);
        const auto& t = triples.front();
        out["trace"] = trace_json(reduction_trace(s.a, s.f, t[0], t[1], t[2]));
    }
    if (!pass) code = validation_failure;
    return out;
}

json cmd_verify_cycle(const Options& o, int& code) {
    const double tol = tol_or(o, kIdentityTol);
    const bool hitting_mode = o.matrix.empty() && o.load.empty();
    if (o.sequence.size() < 3) throw std::invalid_argument("--seq needs at least 3 vertices");
    double residual = 0.0;
    double scale = 0.0;
    if (hitting_mode) {
        const WeightedGraph g = io::read_edge_list(o.graph);
        const auto seq = vertex_list(o.sequence, g.vertex_count(), "seq");
        const HittingTable h = hitting_matrix(g, kind_of(o), threads_from_env());
        residual = hitting_cycle_residual(h, seq);
        scale = h.max_entry();
    } else {
        const System s = system_from(o);
        const auto seq = vertex_list(o.sequence, s.a.size(), "seq");
        const CycleCheck c = cycle_check(s.a, s.f, seq);
        residual = c.residual;
        scale = c.scale;
    }
    const double threshold = tol * scale;
    const bool pass = std::abs(residual) <= threshold;
    if (!pass) code = validation_failure;
    return {
        {"mode", hitting_mode ? "hitting" : "load"},
        {"sequence", o.sequence},
        {"residual", residual},
        {"scale", scale},
        {"tolerance", tol},
        {"threshold", threshold},
        {"pass", pass},
    };
}

json cmd_neighbor_sum(const Options& o) {
    const WeightedGraph g = io::read_edge_list(o.graph);
    const std::size_t v = vertex_arg(o.vertex, g.vertex_count(), "vertex");
    const Vector deg = walk_degrees(g, kind_of(o));
    const double r = neighbor_sum_residual(g, v, kind_of(o));
    const double two_m = deg.sum();
    const double expected = two_m - deg(static_cast<Index>(v));
    return {
        {"vertex", v + 1},
        {"degree", deg(static_cast<Index>(v))},
        {"two_m", two_m},
        {"neighbor_sum", expected + r},
        {"expected", expected},
        {"residual", r},
        {"pass", std::abs(r) <= tol_or(o, kIdentityTol) * two_m},
    };
}

json stats_json(const WalkStats& s) {
    return {
        {"estimate", s.estimate},
        {"stderr", s.std_error},
        {"trials", s.trials},
        {"seed", s.seed},
        {"max_steps_hit", s.max_steps_hit},
    };
}

WalkOptions walk_options(const Options& o, unsigned threads) {
    WalkOptions w;
    w.trials = o.trials;
    w.seed = o.seed;
    w.max_steps = o.max_steps;
    w.threads = threads;
    w.kind = kind_of(o);
    return w;
}

json cmd_simulate_hit(const Options& o, unsigned threads, std::ostream& err) {
    const WeightedGraph g = io::read_edge_list(o.graph);
    const std::size_t from = vertex_arg(o.from, g.vertex_count(), "from");
    const std::size_t target = vertex_arg(o.target, g.vertex_count(), "target");
    const WalkStats s = simulate_hitting(g, from, target, walk_options(o, threads));
    if (s.max_steps_hit > 0) {
        err << "warning: " << s.max_steps_hit << " trials exceeded --max-steps and were discarded\n";
    }
    return stats_json(s);
}

json cmd_simulate_return(const Options& o, unsigned threads, std::ostream& err) {
    const WeightedGraph g = io::read_edge_list(o.graph);
    const std::size_t v = vertex_arg(o.vertex, g.vertex_count(), "vertex");
    const WalkStats s = simulate_return(g, v, walk_options(o, threads));
    if (s.max_steps_hit > 0) {
        err << "warning: " << s.max_steps_hit << " trials exceeded --max-steps and were discarded\n";
    }
    return stats_json(s);
}

}  // namespace

unsigned threads_from_env() {
    const char* raw = std::getenv("LAPLACE_WALK_THREADS");
    if (!raw) return 0;
    unsigned value = 0;
    const char* end = raw + std::char_traits<char>::length(raw);
    const auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec != std::errc{} || ptr != end) return 0;
    return value;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Laplacian systems, pinned solves and random-walk hitting times", "lapwalk"};
    app.require_subcommand(1, 1);
    Options o;
    app.add_option("-o,--output", o.output, "Write the result here instead of stdout");

    auto graph_opt = [&](CLI::App* s, bool required = true) {
        auto* opt = s->add_option("--graph", o.graph, "Edge-list file")->check(CLI::ExistingFile);
        if (required) opt->required();
        return opt;
    };
    auto matrix_opt = [&](CLI::App* s, bool required = true) {
        auto* opt = s->add_option("--matrix", o.matrix, "CSV matrix file")->check(CLI::ExistingFile);
        if (required) opt->required();
        return opt;
    };
    auto load_opt = [&](CLI::App* s) {
        return s->add_option("--load", o.load, "Load vector (CSV or JSON array)")
            ->check(CLI::ExistingFile);
    };
    auto weighted_flag = [&](CLI::App* s) {
        s->add_flag("--weighted", o.weighted, "Step with probability proportional to edge weight");
    };
    auto tol_opt = [&](CLI::App* s, const std::string& what) {
        s->add_option("--tol", o.tol, what)->check(CLI::NonNegativeNumber);
    };
    auto csv_flag = [&](CLI::App* s) { s->add_flag("--csv", o.csv, "Emit the matrix as CSV"); };

    auto* validate_cmd = app.add_subcommand("validate", "Check properties (i)-(iv) and the rank");
    matrix_opt(validate_cmd);
    tol_opt(validate_cmd, "Row-sum tolerance relative to max |diagonal| (default 1e-10)");

    auto* laplacian_cmd = app.add_subcommand("laplacian", "Graph -> conductance matrix");
    graph_opt(laplacian_cmd);
    csv_flag(laplacian_cmd);

    auto* solve_cmd = app.add_subcommand("solve", "Pinned solve of A x = f_pin");
    auto* sm = matrix_opt(solve_cmd, false);
    auto* sg = graph_opt(solve_cmd, false);
    sm->excludes(sg);
    load_opt(solve_cmd);
    solve_cmd->add_option("--pin", o.pin, "Pinned vertex (1-based)")->required();

    auto* eliminate_cmd = app.add_subcommand("eliminate", "Schur-complement elimination of a vertex");
    matrix_opt(eliminate_cmd);
    load_opt(eliminate_cmd);
    eliminate_cmd->add_option("--vertex", o.vertex, "Vertex to eliminate (1-based)")->required();
    csv_flag(eliminate_cmd);

    auto* star_cmd = app.add_subcommand("star-expand", "Triangle (3x3) -> star (4x4)");
    matrix_opt(star_cmd);
    csv_flag(star_cmd);

    auto* eq_cmd = app.add_subcommand("equilibrium", "Spring-mass equilibrium with one mass nailed");
    graph_opt(eq_cmd);
    eq_cmd->add_option("--forces", o.forces, "Force field (CSV rows or JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    eq_cmd->add_option("--nail", o.nail, "Nailed mass (1-based)")->required();
    eq_cmd->add_option("--dim", o.dim, "Expected force dimension d");

    auto* hit_cmd = app.add_subcommand("hit", "Hitting times to one target");
    graph_opt(hit_cmd);
    hit_cmd->add_option("--target", o.target, "Target vertex (1-based)")->required();
    weighted_flag(hit_cmd);

    auto* hitm_cmd = app.add_subcommand("hit-matrix", "All hitting times; row j, column i = H(j,i)");
    graph_opt(hitm_cmd);
    weighted_flag(hitm_cmd);
    csv_flag(hitm_cmd);

    auto* ret_cmd = app.add_subcommand("return-times", "Return times 2m/deg(i)");
    graph_opt(ret_cmd);
    weighted_flag(ret_cmd);
    ret_cmd->add_flag("--detailed", o.detailed, "Emit {i, deg, R} objects");

    auto* ctw_cmd = app.add_subcommand("verify-ctw", "Three-cycle reversal identity");
    auto* cg = graph_opt(ctw_cmd, false);
    auto* cm = matrix_opt(ctw_cmd, false);
    cg->excludes(cm);
    load_opt(ctw_cmd);
    ctw_cmd->add_option("--triple", o.triple, "Three vertices i j k")->expected(3);
    ctw_cmd->add_flag("--all-triples", o.all_triples, "Check every ordered triple");
    ctw_cmd->add_flag("--trace", o.trace, "Include the elimination-to-star reduction trace");
    weighted_flag(ctw_cmd);
    tol_opt(ctw_cmd, "Residual tolerance relative to the largest value (default 1e-9)");

    auto* cyc_cmd = app.add_subcommand("verify-cycle", "Cycle reversal identity over a sequence");
    auto* yg = graph_opt(cyc_cmd, false);
    auto* ym = matrix_opt(cyc_cmd, false);
    yg->excludes(ym);
    load_opt(cyc_cmd);
    cyc_cmd->add_option("--seq", o.sequence, "Vertex sequence (length >= 3)")->required();
    weighted_flag(cyc_cmd);
    tol_opt(cyc_cmd, "Residual tolerance relative to the largest value (default 1e-9)");

    auto* ns_cmd = app.add_subcommand("neighbor-sum", "sum_{k~i} H(k,i) versus 2m - deg(i)");
    graph_opt(ns_cmd);
    ns_cmd->add_option("--vertex", o.vertex, "Vertex (1-based)")->required();
    weighted_flag(ns_cmd);
    tol_opt(ns_cmd, "Residual tolerance relative to 2m (default 1e-9)");

    auto walk_opts = [&](CLI::App* s) {
        s->add_option("--trials", o.trials, "Number of walks")->check(CLI::PositiveNumber);
        s->add_option("--seed", o.seed, "RNG seed");
        s->add_option("--max-steps", o.max_steps, "Per-walk step cap")->check(CLI::PositiveNumber);
        weighted_flag(s);
    };
    auto* sh_cmd = app.add_subcommand("simulate-hit", "Monte Carlo hitting time");
    graph_opt(sh_cmd);
    sh_cmd->add_option("--from", o.from, "Start vertex (1-based)")->required();
    sh_cmd->add_option("--target", o.target, "Target vertex (1-based)")->required();
    walk_opts(sh_cmd);

    auto* sr_cmd = app.add_subcommand("simulate-return", "Monte Carlo return time");
    graph_opt(sr_cmd);
    sr_cmd->add_option("--vertex", o.vertex, "Start vertex (1-based)")->required();
    walk_opts(sr_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    for (auto* s : {solve_cmd, ctw_cmd, cyc_cmd}) {
        if (s->parsed() && o.graph.empty() && o.matrix.empty()) {
            err << "error: " << s->get_name() << " needs --graph or --matrix\n";
            return usage_error;
        }
    }

    const unsigned threads = threads_from_env();
    int code = ok;
    json result;
    std::string csv;
    try {
        if (validate_cmd->parsed()) result = cmd_validate(o, code);
        else if (laplacian_cmd->parsed()) result = cmd_laplacian(o, csv);
        else if (solve_cmd->parsed()) result = cmd_solve(o);
        else if (eliminate_cmd->parsed()) result = cmd_eliminate(o, csv);
        else if (star_cmd->parsed()) result = cmd_star_expand(o, csv);
        else if (eq_cmd->parsed()) result = cmd_equilibrium(o, threads);
        else if (hit_cmd->parsed()) result = cmd_hit(o);
        else if (hitm_cmd->parsed()) result = cmd_hit_matrix(o, threads, csv);
        else if (ret_cmd->parsed()) result = cmd_return_times(o);
        else if (ctw_cmd->parsed()) result = cmd_verify_ctw(o, code);
        else if (cyc_cmd->parsed()) result = cmd_verify_cycle(o, code);
        else if (ns_cmd->parsed()) result = cmd_neighbor_sum(o);
        else if (sh_cmd->parsed()) result = cmd_simulate_hit(o, threads, err);
        else if (sr_cmd->parsed()) result = cmd_simulate_return(o, threads, err);
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const IndexError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const Error& e) {
        // ValidationError, GraphError, SolveError
        err << "error: " << e.what() << "\n";
        return validation_failure;
    }

    const std::string text = csv.empty() ? result.dump(2) + "\n" : csv;
    if (o.output.empty()) {
        out << text;
    } else {
        std::ofstream file(o.output, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << o.output << "\n";
            return usage_error;
        }
        file << text;
    }
    return code;
}

}  // namespace lapwalk::cli
