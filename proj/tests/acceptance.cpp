// acceptance.cpp
// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails. Set GROVER_LONG_TESTS=1 to include the n = 52..64 counts.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "grover/grover.hpp"

namespace {

std::atomic<std::size_t> allocation_count{0};

}  // namespace

void* operator new(std::size_t size) {
    ++allocation_count;
    if (void* p = std::malloc(size ? size : 1)) return p;
    throw std::bad_alloc();
}

void operator delete(void* p) noexcept { std::free(p); }
void operator delete(void* p, std::size_t) noexcept { std::free(p); }

namespace {

using namespace grover;
using clock_type = std::chrono::steady_clock;

int failures = 0;

void report(const char* id, bool ok, const std::string& detail, clock_type::time_point start) {
    const double secs = std::chrono::duration<double>(clock_type::now() - start).count();
    std::printf("[%s] %s %s (%.3f s)\n", ok ? "PASS" : "FAIL", id, detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string str(double v) { return format_real(v); }

void cross_engine_equivalence() {
    const auto start = clock_type::now();
    CaseGenerator gen(20240601);
    std::size_t cases = 0, bad = 0, element_bad = 0;
    double worst = 0.0;
    std::string first_bad;
    for (int n = 1; n <= 8; ++n)
        for (std::uint64_t m = 1; m <= 3; ++m) {
            if (m >= (std::uint64_t{1} << n)) continue;
            for (int t = 0; t < 50; ++t) {
                const OracleSpec oracle = gen.oracle(n, m);
                const TerminationPolicy policy = gen.policy(oracle);
                const CaseResult r = check_case(oracle, policy);
                ++cases;
                worst = std::max(worst, r.max_deviation);
                if (!r.passed && bad++ == 0) first_bad = describe(oracle) + " policy=" + to_string(policy);
                if (n <= 6 && t < 3 && check_elements(oracle).count) ++element_bad;
            }
        }
    const double secs = std::chrono::duration<double>(clock_type::now() - start).count();
    std::string detail = "cases=" + std::to_string(cases) + " failures=" + std::to_string(bad) +
                         " element_failures=" + std::to_string(element_bad) + " max_dev=" + str(worst);
    if (bad) detail += " first=" + first_bad;
    report("AC1 cross-engine equivalence", bad == 0 && element_bad == 0 && secs < 120.0, detail, start);
}

void worked_states() {
    const auto start = clock_type::now();
    const OracleSpec oracle = make_oracle(2, {1});
    const DenseState phi1 = apply(build_superposition(2), DenseState::basis(2, 1));
    const DenseState phi2 = apply(build_entanglement(oracle), phi1);
    const int sign1[8] = {1, -1, 1, -1, 1, -1, 1, -1};
    const int sign2[8] = {1, -1, -1, 1, 1, -1, 1, -1};
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        worst = std::max(worst, std::abs(phi1.amplitudes()[i] - sign1[i] * 0.35355));
        worst = std::max(worst, std::abs(phi2.amplitudes()[i] - sign2[i] * 0.35355));
    }
    report("AC2 worked states phi1 phi2", worst <= 1e-5, "max_dev_from_0.35355=" + str(worst), start);
}

void interference_spot_values() {
    const auto start = clock_type::now();
    const OperatorMatrix op = build_interference(2);
    bool ok = true;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            const double want = (i ^ j) & 1 ? 0.0 : (i == j ? -0.5 : 0.5);
            ok = ok && op(i, j) == want && int_element(2, i, j) == want;
        }
    report("AC3 interference spot values", ok, "n=2 entries -0.5 / +0.5 / 0 from matrix and element rule", start);
}

void entropy_optimum() {
    const auto start = clock_type::now();
    RunOptions opts;
    opts.record_entropy = true;
    const RunResult scan = run_compressed(5, 1, TerminationPolicy::model1(8), opts);
    std::uint64_t argmin = 0;
    for (const TraceRow& r : scan.trace)
        if (*r.entropy_bits < *scan.trace[argmin].entropy_bits) argmin = r.iter;
    const std::uint64_t m2 = run_compressed(5, 1, TerminationPolicy::model2()).outcome.iterations;
    const std::uint64_t dense_m2 = run_dense(make_oracle(5, {7}), TerminationPolicy::model2()).outcome.iterations;
    const double k = std::numbers::pi / 4.0 * std::sqrt(32.0);
    const std::uint64_t theory = theoretical_iterations(5, 1);
    const bool ok = argmin == 4 && m2 == 4 && dense_m2 == 4 && theory == 4 && std::floor(k) == 4.0;
    report("AC4 entropy optimum n=5",
           ok,
           "entropy_argmin=" + std::to_string(argmin) + " model2=" + std::to_string(m2) + " dense_model2=" +
               std::to_string(dense_m2) + " pi/4*sqrt(32)=" + str(k) + " theoretical=" + std::to_string(theory),
           start);
}

void table_counts() {
    struct Row {
        int n;
        std::uint64_t want;
    };
    const Row core[] = {{32, 51471}, {36, 205887}, {40, 823549}, {44, 3294198}, {48, 13176794}};
    const Row extended[] = {{52, 52707178}, {56, 210828712}, {60, 843314834}, {64, 3373259064}};
    RunOptions opts;
    opts.trace_stride = 0;

    auto run_rows = [&](const char* id, const Row* rows, std::size_t count) {
        const auto start = clock_type::now();
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t got = run_compressed(rows[i].n, 1, TerminationPolicy::model2(), opts).outcome.iterations;
            ok = ok && got == rows[i].want;
            detail += "n=" + std::to_string(rows[i].n) + ":" + std::to_string(got) + " ";
        }
        report(id, ok, detail, start);
    };
    run_rows("AC5 model-2 stop counts n=32..48", core, std::size(core));

    const char* flag = std::getenv("GROVER_LONG_TESTS");
    if (flag && *flag && std::string(flag) != "0")
        run_rows("AC5b model-2 stop counts n=52..64", extended, std::size(extended));
    else
        std::printf("[SKIP] AC5b model-2 stop counts n=52..64 (set GROVER_LONG_TESTS=1)\n");
}

void normalization_and_unitarity() {
    const auto start = clock_type::now();
    CaseGenerator gen(7);
    double norm_worst = 0.0;

    // Every iteration of every engine, stepped by hand.
    for (int n = 1; n <= 8; ++n) {
        const std::uint64_t m = std::min<std::uint64_t>(2, (std::uint64_t{1} << n) - 1);
        const OracleSpec oracle = gen.oracle(n, m);
        const std::uint64_t steps = 2 * theoretical_iterations(n, m) + 4;
        const OperatorMatrix ent = build_entanglement(oracle);
        const OperatorMatrix in = build_interference(n);
        const DenseState start_state = apply(build_superposition(n), DenseState::basis(n, 1));
        std::vector<double> dense(start_state.amplitudes().begin(), start_state.amplitudes().end());
        std::vector<double> on_demand = dense, fast = dense;
        CompressedState c = h_block(n, m);
        const TableConstants tc = table_constants(n);
        const EntanglementElements ent_e{oracle};
        const InterferenceElements in_e(n);
        for (std::uint64_t k = 0; k <= steps; ++k) {
            for (const auto* v : {&dense, &on_demand, &fast})
                norm_worst = std::max(norm_worst, std::abs(squared_norm(*v) - 1.0));
            norm_worst = std::max(norm_worst, std::abs(normalization(c) - 1.0));
            dense = apply(in, apply(ent, dense));
            on_demand = apply_on_demand(in_e, apply_on_demand(ent_e, on_demand));
            apply_entanglement_fast_inplace(oracle, fast);
            apply_interference_fast_inplace(n, fast);
            c = ud_step(c, tc);
        }
        // Traced rows from the public run functions.
        RunOptions opts;
        opts.record_entropy = false;
        const TerminationPolicy p = TerminationPolicy::model1(steps);
        for (const RunResult& r : {run_dense(oracle, p, opts), run_matrixfree(oracle, p, false, opts),
                                   run_matrixfree(oracle, p, true, opts), run_compressed(oracle, p, opts)})
            for (const TraceRow& row : r.trace) {
                const double total = normalization(CompressedState{n, m, row.vx, row.va, row.iter});
                norm_worst = std::max(norm_worst, std::abs(total - 1.0));
            }
    }

    double ortho_worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
        const OracleSpec oracle = gen.oracle(n, 1);
        for (const OperatorMatrix& op : {build_superposition(n), build_entanglement(oracle), build_interference(n),
                                         build_gate(oracle, 3)})
            ortho_worst = std::max(ortho_worst, orthogonality_error(op));
    }

    CompressedState big = h_block(64, 1);
    const TableConstants tc64 = table_constants(64);
    for (int k = 0; k < 10'000'000; ++k) big = ud_step(big, tc64);
    const double drift = std::abs(normalization(big) - 1.0);

    report("AC6 normalization and unitarity", norm_worst <= 1e-9 && ortho_worst <= 1e-10 && drift <= 1e-9,
           "norm_dev=" + str(norm_worst) + " orthogonality=" + str(ortho_worst) + " n64_drift_1e7=" + str(drift),
           start);
}

void scale_property() {
    const auto start = clock_type::now();
    RunOptions opts;
    opts.trace_stride = 0;

    auto allocations_for = [&](std::uint64_t iterations, RunResult& out) {
        const std::size_t before = allocation_count.load();
        out = run_compressed(1000, 1, TerminationPolicy::model1(iterations), opts);
        return allocation_count.load() - before;
    };
    RunResult small, large;
    const std::size_t a_small = allocations_for(1'000, small);
    const auto t0 = clock_type::now();
    const std::size_t a_large = allocations_for(1'000'000, large);
    const double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    const Registers& last = large.final_registers;
    const bool finite = std::isfinite(last.vx) && std::isfinite(last.va) && last.vx != 0.0 && last.va != 0.0;
    std::ostringstream detail;
    detail << "iterations=" << large.outcome.iterations << " allocations(1e3)=" << a_small
           << " allocations(1e6)=" << a_large << " vx=" << str(last.vx) << " va=" << str(last.va)
           << " wall_1e6=" << secs << "s";
    report("AC7 n=1000 constant memory", a_small == a_large && finite && large.outcome.iterations == 1'000'000,
           detail.str(), start);
}

void termination_consistency() {
    const auto start = clock_type::now();
    bool three_eq_two = true, five_eq_three = true, no_entropy = true;
    for (int n = 2; n <= 24; ++n)
        for (std::uint64_t m = 1; m <= 3; ++m) {
            if (2 * m >= (std::uint64_t{1} << n)) continue;
            const RunResult two = run_compressed(n, m, TerminationPolicy::model2());
            const RunResult three = run_compressed(n, m, TerminationPolicy::model3(1'000'000'000));
            three_eq_two = three_eq_two && two.trace == three.trace && two.outcome.iterations == three.outcome.iterations;
            for (std::uint64_t max : {1u, 3u, 50u, 100000u}) {
                const RunResult a = run_compressed(n, m, TerminationPolicy::model3(max));
                const RunResult b = run_compressed(n, m, TerminationPolicy::model5(max, 0.0));
                five_eq_three = five_eq_three && a.trace == b.trace && a.outcome.iterations == b.outcome.iterations;
                no_entropy = no_entropy && a.entropy_evaluations == 0 &&
                             run_compressed(n, m, TerminationPolicy::model1(max)).entropy_evaluations == 0;
            }
            no_entropy = no_entropy && two.entropy_evaluations == 0 && three.entropy_evaluations == 0;
        }
    for (int n = 2; n <= 6; ++n) {
        const OracleSpec oracle = make_oracle(n, {1});
        for (const TerminationPolicy& p :
             {TerminationPolicy::model1(5), TerminationPolicy::model2(), TerminationPolicy::model3(5)}) {
            no_entropy = no_entropy && run_dense(oracle, p).entropy_evaluations == 0 &&
                         run_matrixfree(oracle, p, false).entropy_evaluations == 0 &&
                         run_matrixfree(oracle, p, true).entropy_evaluations == 0;
        }
    }
    report("AC8 termination model consistency", three_eq_two && five_eq_three && no_entropy,
           std::string("m3==m2:") + (three_eq_two ? "yes" : "no") + " m5(ent=0)==m3:" + (five_eq_three ? "yes" : "no") +
               " m1-m3_entropy_calls=0:" + (no_entropy ? "yes" : "no"),
           start);
}

}  // namespace

int main() {
    try {
        cross_engine_equivalence();
        worked_states();
        interference_spot_values();
        entropy_optimum();
        table_counts();
        normalization_and_unitarity();
        scale_property();
        termination_consistency();
    } catch (const std::exception& e) {
        std::printf("[FAIL] unexpected exception: %s\n", e.what());
        return 1;
    }
    std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "OK", failures);
    return failures ? 1 : 0;
}
