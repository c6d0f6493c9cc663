// validate.hpp
// Cross-engine equivalence harness: dense, matrix-free (on-demand and fast
// paths) and compressed runs of the same problem must produce the same trace.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "grover/compressed.hpp"
#include "grover/dense.hpp"
#include "grover/io.hpp"
#include "grover/matrixfree.hpp"
#include "grover/termination.hpp"

namespace grover {

inline constexpr double trace_tolerance = 1e-9;

// Largest per-field difference between two traces; infinity when the rows do
// not line up (different length, iteration index or entropy presence).
inline double trace_deviation(const std::vector<TraceRow>& a, const std::vector<TraceRow>& b) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (a.size() != b.size()) return inf;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].iter != b[i].iter || a[i].entropy_bits.has_value() != b[i].entropy_bits.has_value()) return inf;
        worst = std::max({worst, std::abs(a[i].vx - b[i].vx), std::abs(a[i].va - b[i].va),
                          std::abs(a[i].p_success - b[i].p_success)});
        if (a[i].entropy_bits) worst = std::max(worst, std::abs(*a[i].entropy_bits - *b[i].entropy_bits));
    }
    return worst;
}

struct CaseResult {
    bool passed = false;
    double max_deviation = 0.0;
    std::uint64_t iterations = 0;
    std::string engine_failed;  // first engine that disagreed with dense
};

// Runs all four engine variants with a full trace and compares them to dense.
inline CaseResult check_case(const OracleSpec& oracle, const TerminationPolicy& policy) {
    RunOptions opts;
    opts.trace_stride = 1;
    opts.record_entropy = true;
    const RunResult dense = run_dense(oracle, policy, opts);
    const RunResult on_demand = run_matrixfree(oracle, policy, false, opts);
    const RunResult fast = run_matrixfree(oracle, policy, true, opts);
    const RunResult compressed = run_compressed(oracle, policy, opts);

    CaseResult r;
    r.iterations = dense.outcome.iterations;
    r.passed = true;
    const TraceRow& last = dense.trace.back();
    const bool decisive = std::abs(std::abs(last.vx) - std::abs(last.va)) > trace_tolerance;
    const std::pair<const char*, const RunResult*> others[] = {
        {"matrixfree", &on_demand}, {"matrixfree-fast", &fast}, {"compressed", &compressed}};
    for (const auto& [name, other] : others) {
        const double dev = trace_deviation(dense.trace, other->trace);
        r.max_deviation = std::max(r.max_deviation, dev);
        const bool ok = dev <= trace_tolerance && other->outcome.iterations == dense.outcome.iterations &&
                        (!decisive || other->outcome.success == dense.outcome.success);
        if (!ok && r.passed) {
            r.passed = false;
            r.engine_failed = name;
        }
    }
    return r;
}

// Exact equality of the element rules with the built matrices.
struct ElementMismatch {
    std::size_t count = 0;
    std::string first;
};

inline ElementMismatch check_elements(const OracleSpec& oracle) {
    const int n = oracle.n();
    const OperatorMatrix sp = build_superposition(n);
    const OperatorMatrix ent = build_entanglement(oracle);
    const OperatorMatrix in = build_interference(n);
    ElementMismatch mm;
    auto note = [&](const char* what, std::size_t i, std::size_t j) {
        if (mm.count++ == 0) mm.first = std::string(what) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    };
    for (std::size_t i = 0; i < sp.dim(); ++i)
        for (std::size_t j = 0; j < sp.dim(); ++j) {
            if (sp_element(n, i, j) != sp(i, j)) note("sp", i, j);
            if (ent_element(oracle, i, j) != ent(i, j)) note("ent", i, j);
            if (int_element(n, i, j) != in(i, j)) note("int", i, j);
        }
    return mm;
}

// Seeded random problem generation shared by the CLI and the test suites.
class CaseGenerator {
public:
    explicit CaseGenerator(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {  // inclusive
        return lo + rng_() % (hi - lo + 1);
    }

    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
    }

    OracleSpec oracle(int n, std::uint64_t m) {
        const std::uint64_t states = std::uint64_t{1} << n;
        std::vector<index_t> marked;
        while (marked.size() < m) {
            const index_t x = uniform(0, states - 1);
            if (std::find(marked.begin(), marked.end(), x) == marked.end()) marked.push_back(x);
        }
        return make_oracle(n, std::move(marked));
    }

    // One of the five models with parameters that terminate for this problem.
    TerminationPolicy policy(const OracleSpec& oracle) {
        const std::uint64_t opt = theoretical_iterations(oracle.n(), oracle.m());
        const std::uint64_t span = 2 * opt + 2;
        const double top = oracle.n() + 1.0;
        // With half the inputs marked the state is stationary and every comparison is a rounding tie.
        if (oracle.n() < 64 && 2 * oracle.m() == (std::uint64_t{1} << oracle.n()))
            return TerminationPolicy::model1(uniform(1, span));
        switch (uniform(1, 5)) {
        case 1: return TerminationPolicy::model1(uniform(1, span));
        case 2: return TerminationPolicy::model2();
        case 3: return TerminationPolicy::model3(uniform(1, span));
        case 4: {
            // Pick a level between the lowest entropy reached in the first period and the start.
            RunOptions o;
            o.trace_stride = 1;
            o.record_entropy = true;
            const RunResult scan = run_compressed(oracle, TerminationPolicy::model1(span), o);
            double low = top;
            for (const TraceRow& r : scan.trace) low = std::min(low, *r.entropy_bits);
            return TerminationPolicy::model4(uniform_real(low + 1e-3, top));
        }
        default: return TerminationPolicy::model5(uniform(1, span), uniform_real(0.0, top));
        }
    }

private:
    std::mt19937_64 rng_;
};

inline std::string describe(const OracleSpec& oracle) {
    std::string s = "n=" + std::to_string(oracle.n()) + " m=" + std::to_string(oracle.m()) + " marked=[";
    for (std::size_t i = 0; i < oracle.marked().size(); ++i)
        s += (i ? "," : "") + std::to_string(oracle.marked()[i]);
    return s + "]";
}

struct ValidationReport {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::size_t element_suites = 0;
    std::size_t element_failures = 0;
    double max_deviation = 0.0;

    bool ok() const noexcept { return failures == 0 && element_failures == 0; }
};

// `trials` random problems with n in [1, n_max], m in {1, 2, 3} (m < 2^n) and
// a random policy, plus the element suite for every n <= min(n_max, 6).
inline ValidationReport validate(int n_max, std::uint64_t trials, std::uint64_t seed, std::ostream& log) {
    if (n_max < 1 || n_max > 8) throw error(errc::qubit_count_out_of_range, "validate n_max must be in [1, 8]");
    ValidationReport rep;
    CaseGenerator gen(seed);

    for (int n = 1; n <= std::min(n_max, 6); ++n) {
        const OracleSpec oracle = gen.oracle(n, 1);
        const ElementMismatch mm = check_elements(oracle);
        ++rep.element_suites;
        if (mm.count) ++rep.element_failures;
        log << (mm.count ? "FAIL" : "PASS") << " elements " << describe(oracle);
        if (mm.count) log << " mismatches=" << mm.count << " first=" << mm.first;
        log << '\n';
    }

    for (std::uint64_t t = 0; t < trials; ++t) {
        const int n = static_cast<int>(gen.uniform(1, static_cast<std::uint64_t>(n_max)));
        const std::uint64_t m_cap = std::min<std::uint64_t>(3, (std::uint64_t{1} << n) - 1);
        const OracleSpec oracle = gen.oracle(n, gen.uniform(1, m_cap));
        const TerminationPolicy policy = gen.policy(oracle);
        const CaseResult r = check_case(oracle, policy);
        ++rep.cases;
        if (!r.passed) ++rep.failures;
        rep.max_deviation = std::max(rep.max_deviation, r.max_deviation);
        log << (r.passed ? "PASS" : "FAIL") << " case " << t << ' ' << describe(oracle) << " policy=" << to_string(policy)
            << " iterations=" << r.iterations << " max_dev=" << format_real(r.max_deviation);
        if (!r.passed) log << " engine=" << r.engine_failed;
        log << '\n';
    }
    log << (rep.ok() ? "PASS" : "FAIL") << " summary cases=" << rep.cases << " failures=" << rep.failures
        << " element_suites=" << rep.element_suites << " element_failures=" << rep.element_failures << '\n';
    return rep;
}

}  // namespace grover
