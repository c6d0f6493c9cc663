// compressed.hpp
// O(1)-per-iteration Grover simulation on the two-amplitude state.

#pragma once

#include <cmath>
#include <cstdint>

#include "grover/core.hpp"
#include "grover/run.hpp"
#include "grover/termination.hpp"

namespace grover {

// Uniform superposition: vx = va = hc.
inline CompressedState h_block(int n, std::uint64_t m, const EngineLimits& limits = {}) {
    if (n < 1 || n > limits.compressed)
        throw error(errc::qubit_count_out_of_range, "n=" + std::to_string(n) + " outside compressed limit [1, " +
                                                        std::to_string(limits.compressed) + "]");
    if (m == 0 || (n < 64 && m >= (std::uint64_t{1} << n)))
        throw error(errc::invalid_marked_count, "m=" + std::to_string(m) + " for n=" + std::to_string(n));
    const double hc = table_constants(n).hc;
    return CompressedState{n, m, hc, hc, 0};
}

// One Grover iteration: oracle sign flip on the marked category, then
// inversion about the mean of the odd components. The mean weight
// dc2*(2^n - m) is written as 2 - m*dc2 so 2^n never has to be formed.
inline CompressedState ud_step(const CompressedState& s, const TableConstants& tc) noexcept {
    const double marked_weight = static_cast<double>(s.m) * tc.dc2;
    const double u = -s.vx;
    const double mean2 = marked_weight * u + (2.0 - marked_weight) * s.va;
    return CompressedState{s.n, s.m, mean2 - u, mean2 - s.va, s.vi + 1};
}

// Full vector with a[2x+1] = vx or va by category and a[2x] = -a[2x+1].
inline DenseState expand(const CompressedState& s, const OracleSpec& oracle) {
    if (oracle.n() != s.n || oracle.m() != s.m)
        throw error(errc::oracle_mismatch, "state (n=" + std::to_string(s.n) + ", m=" + std::to_string(s.m) +
                                               ") vs oracle (n=" + std::to_string(oracle.n()) +
                                               ", m=" + std::to_string(oracle.m()) + ")");
    if (s.n > 40) throw error(errc::qubit_count_out_of_range, "cannot expand n=" + std::to_string(s.n));
    std::vector<double> amps(DenseState::dimension(s.n));
    for (index_t x = 0; x < amps.size() / 2; ++x) {
        const double odd = oracle.contains(x) ? s.vx : s.va;
        amps[2 * x + 1] = odd;
        amps[2 * x] = -odd;
    }
    return DenseState(s.n, std::move(amps));
}

namespace detail {

// p * log2(p) for a category of total probability p_total whose members each
// carry amplitude a; log2(a^2) is taken as 2*log2|a| to survive underflow.
inline double category_plogp(double p_total, double a) noexcept {
    if (a == 0.0 || p_total == 0.0) return 0.0;
    return p_total * 2.0 * std::log2(std::abs(a));
}

}  // namespace detail

inline double entropy_compressed(const CompressedState& s) noexcept {
    return -(detail::category_plogp(marked_probability(s), s.vx) + detail::category_plogp(unmarked_probability(s), s.va));
}

inline SearchOutcome measure_compressed(const CompressedState& s) noexcept {
    return SearchOutcome{std::abs(s.vx) > std::abs(s.va), marked_probability(s), s.vi, entropy_compressed(s)};
}

namespace detail {

class CompressedSim {
public:
    CompressedSim(int n, std::uint64_t m, const EngineLimits& limits)
        : state_(h_block(n, m, limits)), tc_(table_constants(n)) {}

    int n() const noexcept { return state_.n; }
    std::uint64_t m() const noexcept { return state_.m; }
    Registers registers() const noexcept { return {state_.vx, state_.va, state_.vi}; }
    double p_success() const noexcept { return marked_probability(state_); }
    double entropy() const noexcept { return entropy_compressed(state_); }
    void step() noexcept { state_ = ud_step(state_, tc_); }
    void save_best() noexcept {}
    void restore_best(const Registers& r) noexcept {
        state_.vx = r.vx;
        state_.va = r.va;
        state_.vi = r.vi;
    }
    const CompressedState& state() const noexcept { return state_; }

private:
    CompressedState state_;
    TableConstants tc_;
};

}  // namespace detail

// H block, then UD steps and the termination block until it stops.
inline RunResult run_compressed(int n, std::uint64_t m, const TerminationPolicy& policy, const RunOptions& opts = {}) {
    detail::CompressedSim sim(n, m, opts.limits);
    return detail::drive(sim, policy, opts);
}

inline RunResult run_compressed(const OracleSpec& oracle, const TerminationPolicy& policy, const RunOptions& opts = {}) {
    return run_compressed(oracle.n(), oracle.m(), policy, opts);
}

}  // namespace grover
