// grover_cli.cpp
// Command-line front end: run, validate, bench, entropy-scan, dump-operator.
//
// Exit status: 0 search succeeded (or command passed), 2 search failed,
// 1 error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grover/grover.hpp"

namespace {

using grover::errc;
using grover::error;

constexpr int exit_success = 0;
constexpr int exit_error = 1;
constexpr int exit_not_found = 2;

enum class Engine { dense, matrixfree, compressed, all };

Engine parse_engine(const std::string& s) {
    if (s == "dense") return Engine::dense;
    if (s == "matrixfree") return Engine::matrixfree;
    if (s == "compressed") return Engine::compressed;
    if (s == "all") return Engine::all;
    throw error(errc::parse_error, "--engine: expected dense|matrixfree|compressed|all, got '" + s + "'");
}

grover::EngineLimits limits_from_environment() {
    grover::EngineLimits limits;
    if (const char* env = std::getenv("GROVER_DENSE_LIMIT")) {
        const auto v = grover::detail::parse_uint(env, "GROVER_DENSE_LIMIT");
        if (v < 1 || v > 20) throw error(errc::parse_error, "GROVER_DENSE_LIMIT must be in [1, 20]");
        limits.dense = static_cast<int>(v);
    }
    return limits;
}

// Problem options shared by several verbs.
struct ProblemArgs {
    std::optional<int> n;
    std::string marked;
    std::string oracle_file;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--n", n, "Number of input qubits");
        cmd.add_option("--marked", marked, "Comma-separated marked indices");
        cmd.add_option("--oracle-file", oracle_file, "Oracle file (n=<int> / marked=<list>)");
    }

    grover::OracleSpec oracle() const {
        if (!oracle_file.empty()) {
            if (n || !marked.empty()) throw error(errc::parse_error, "--oracle-file excludes --n/--marked");
            return grover::read_oracle_file(oracle_file);
        }
        if (!n) throw error(errc::parse_error, "--n is required (or --oracle-file)");
        if (marked.empty()) throw error(errc::parse_error, "--marked is required (or --oracle-file)");
        return grover::make_oracle(*n, grover::parse_index_list(marked));
    }
};

struct TraceArgs {
    std::string path;
    std::string format = "csv";
    std::uint64_t stride = 1;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--trace", path, "Trace output path");
        cmd.add_option("--format", format, "Trace format: csv or json");
        cmd.add_option("--stride", stride, "Record every k-th iteration (final row always kept)");
    }

    void check() const {
        grover::parse_trace_format(format);
        if (stride == 0) throw error(errc::parse_error, "--stride must be >= 1");
    }
};

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "." + suffix;
    return path.substr(0, dot) + "." + suffix + path.substr(dot);
}

void print_summary(std::ostream& out, const std::string& engine, const grover::OracleSpec& oracle,
                   const grover::TerminationPolicy& policy, const grover::RunResult& r, double seconds) {
    out << "engine=" << engine << '\n'
        << "n=" << oracle.n() << '\n'
        << "m=" << oracle.m() << '\n'
        << "policy=" << grover::to_string(policy) << '\n'
        << "iterations=" << r.outcome.iterations << '\n'
        << "steps=" << r.steps_executed << '\n'
        << "success=" << (r.outcome.success ? "true" : "false") << '\n'
        << "p_success=" << grover::format_real(r.outcome.p_success) << '\n'
        << "entropy_bits=" << grover::format_real(r.outcome.entropy_bits) << '\n'
        << "wall_seconds=" << seconds << '\n';
}

struct RunArgs {
    std::string engine = "compressed";
    std::string policy = "m2";
    bool naive = false;
    bool entropy = false;
    std::uint64_t seed = 0;
};

int cmd_run(const ProblemArgs& problem, const TraceArgs& trace, const RunArgs& args) {
    const Engine engine = parse_engine(args.engine);
    const grover::TerminationPolicy policy = grover::parse_policy(args.policy);
    const grover::OracleSpec oracle = problem.oracle();
    trace.check();

    grover::RunOptions opts;
    opts.limits = limits_from_environment();
    opts.trace_stride = trace.path.empty() ? 0 : trace.stride;
    opts.record_entropy = args.entropy;

    const int n = oracle.n();
    const int mf_cap = args.naive ? opts.limits.matrixfree_naive : opts.limits.matrixfree_fast;
    if ((engine == Engine::dense || engine == Engine::all) && n > opts.limits.dense)
        throw error(errc::dense_limit_exceeded,
                    "--n " + std::to_string(n) + " exceeds dense limit " + std::to_string(opts.limits.dense));
    if ((engine == Engine::matrixfree || engine == Engine::all) && n > mf_cap)
        throw error(errc::matrixfree_limit_exceeded,
                    "--n " + std::to_string(n) + " exceeds matrix-free limit " + std::to_string(mf_cap));

    struct Named {
        std::string name;
        grover::RunResult result;
    };
    std::vector<Named> runs;
    auto timed = [&](const std::string& name, auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        grover::RunResult r = fn();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        print_summary(std::cout, name, oracle, policy, r, secs);
        runs.push_back({name, std::move(r)});
    };
    if (engine == Engine::dense || engine == Engine::all)
        timed("dense", [&] { return grover::run_dense(oracle, policy, opts); });
    if (engine == Engine::matrixfree || engine == Engine::all)
        timed("matrixfree", [&] { return grover::run_matrixfree(oracle, policy, !args.naive, opts); });
    if (engine == Engine::compressed || engine == Engine::all)
        timed("compressed", [&] { return grover::run_compressed(oracle, policy, opts); });

    if (!trace.path.empty()) {
        const auto format = grover::parse_trace_format(trace.format);
        for (const Named& r : runs)
            grover::emit_trace(r.result.trace, format, runs.size() == 1 ? trace.path : with_suffix(trace.path, r.name));
    }

    if (runs.size() > 1) {
        for (std::size_t i = 1; i < runs.size(); ++i) {
            const bool same_iterations = runs[i].result.outcome.iterations == runs[0].result.outcome.iterations;
            const bool close = std::abs(runs[i].result.outcome.p_success - runs[0].result.outcome.p_success) <=
                               grover::trace_tolerance;
            if (!same_iterations || !close) {
                std::cerr << "error: engines disagree (" << runs[0].name << " vs " << runs[i].name << ")\n";
                return exit_error;
            }
        }
        std::cout << "engines_agree=true\n";
    }
    return runs.back().result.outcome.success ? exit_success : exit_not_found;
}

int cmd_validate(int n_max, std::uint64_t trials, std::uint64_t seed) {
    const grover::ValidationReport rep = grover::validate(n_max, trials, seed, std::cout);
    return rep.ok() ? exit_success : exit_error;
}

int cmd_bench(const std::vector<int>& n_list, std::uint64_t m) {
    std::cout << "n,m,iterations,theoretical,match,wall_seconds\n";
    grover::RunOptions opts;
    opts.trace_stride = 0;
    for (int n : n_list) {
        const auto t0 = std::chrono::steady_clock::now();
        const grover::RunResult r = grover::run_compressed(n, m, grover::TerminationPolicy::model2(), opts);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::uint64_t theory = grover::theoretical_iterations(n, m);
        std::cout << n << ',' << m << ',' << r.outcome.iterations << ',' << theory << ','
                  << (theory == r.outcome.iterations ? "yes" : "no") << ',' << secs << '\n';
    }
    return exit_success;
}

int cmd_entropy_scan(int n, std::uint64_t m, std::uint64_t steps, const TraceArgs& trace) {
    trace.check();
    if (steps == 0) throw error(errc::parse_error, "--steps must be >= 1");
    grover::RunOptions opts;
    opts.trace_stride = trace.stride;
    opts.record_entropy = true;
    const grover::RunResult r = grover::run_compressed(n, m, grover::TerminationPolicy::model1(steps), opts);
    const auto format = grover::parse_trace_format(trace.format);
    if (trace.path.empty())
        grover::write_trace(std::cout, r.trace, format);
    else
        grover::emit_trace(r.trace, format, trace.path);
    return exit_success;
}

int cmd_dump(const ProblemArgs& problem, const std::string& kind, std::uint64_t h, const std::string& out) {
    const grover::EngineLimits limits = limits_from_environment();
    std::optional<grover::OperatorMatrix> op;
    if (kind == "sp" || kind == "int") {
        if (!problem.n) throw error(errc::parse_error, "--n is required");
        op = kind == "sp" ? grover::build_superposition(*problem.n, limits)
                          : grover::build_interference(*problem.n, limits);
    } else if (kind == "ent") {
        op = grover::build_entanglement(problem.oracle(), limits);
    } else if (kind == "gate") {
        op = grover::build_gate(problem.oracle(), h, limits);
    } else {
        throw error(errc::parse_error, "--kind: expected sp|ent|int|gate, got '" + kind + "'");
    }
    if (out.empty())
        grover::write_matrix(std::cout, *op);
    else
        grover::write_matrix(out, *op);
    return exit_success;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical simulators of Grover's quantum search"};
    app.require_subcommand(1);

    ProblemArgs run_problem;
    TraceArgs run_trace;
    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Simulate one search problem");
    run_problem.add_to(*run);
    run_trace.add_to(*run);
    run->add_option("--engine", run_args.engine, "dense | matrixfree | compressed | all");
    run->add_option("--policy", run_args.policy, "m1:max=K | m2 | m3:max=K | m4:ent=H | m5:max=K,ent=H");
    run->add_flag("--no-fast-paths", run_args.naive, "Matrix-free engine: use on-demand elements for every operator");
    run->add_flag("--entropy", run_args.entropy, "Record entropy in every trace row");
    run->add_option("--seed", run_args.seed, "Accepted for config symmetry; runs are deterministic");

    int v_nmax = 6;
    std::uint64_t v_trials = 50;
    std::uint64_t v_seed = 1;
    auto* validate = app.add_subcommand("validate", "Cross-engine equivalence on random problems");
    validate->add_option("--n-max", v_nmax, "Largest qubit count (<= 8)");
    validate->add_option("--trials", v_trials, "Number of random problems");
    validate->add_option("--seed", v_seed, "Random seed");

    std::vector<int> b_ns;
    std::uint64_t b_m = 1;
    auto* bench = app.add_subcommand("bench", "Model-2 iteration counts on the compressed engine");
    bench->add_option("--n", b_ns, "Qubit counts, comma separated")->required()->delimiter(',');
    bench->add_option("--m", b_m, "Number of marked inputs");

    int s_n = 0;
    std::uint64_t s_m = 1;
    std::uint64_t s_steps = 31;
    TraceArgs s_trace;
    auto* scan = app.add_subcommand("entropy-scan", "Entropy of every iteration on the compressed engine");
    scan->add_option("--n", s_n, "Number of input qubits")->required();
    scan->add_option("--m", s_m, "Number of marked inputs");
    scan->add_option("--steps", s_steps, "Number of iterations");
    s_trace.add_to(*scan);

    ProblemArgs d_problem;
    std::string d_kind = "sp";
    std::uint64_t d_h = 1;
    std::string d_out;
    auto* dump = app.add_subcommand("dump-operator", "Write a dense operator matrix as text");
    d_problem.add_to(*dump);
    dump->add_option("--kind", d_kind, "sp | ent | int | gate");
    dump->add_option("--gate-steps", d_h, "Gate iterations (kind=gate)");
    dump->add_option("--out", d_out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_error;
    }

    try {
        if (run->parsed()) return cmd_run(run_problem, run_trace, run_args);
        if (validate->parsed()) return cmd_validate(v_nmax, v_trials, v_seed);
        if (bench->parsed()) return cmd_bench(b_ns, b_m);
        if (scan->parsed()) return cmd_entropy_scan(s_n, s_m, s_steps, s_trace);
        if (dump->parsed()) return cmd_dump(d_problem, d_kind, d_h, d_out);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
