// run.hpp
// Engine-independent iteration driver: superposition once, then quantum
// steps until the termination policy stops the run.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grover/core.hpp"
#include "grover/termination.hpp"

namespace grover {

struct RunOptions {
    // Record every k-th iteration (and always the final one); 0 disables the trace.
    std::uint64_t trace_stride = 1;
    // Fill entropy_bits in trace rows.
    bool record_entropy = false;
    // Hard iteration stop for uncapped policies; 0 selects default_iteration_ceiling.
    std::uint64_t iteration_ceiling = 0;
    EngineLimits limits{};
};

struct RunResult {
    SearchOutcome outcome;
    std::vector<TraceRow> trace;
    Registers final_registers;
    std::uint64_t steps_executed = 0;
    // Entropy values requested by the termination policy.
    std::uint64_t entropy_evaluations = 0;
};

namespace detail {

// Sim provides:
//   int n() const; std::uint64_t m() const;
//   Registers registers() const;      // vx, va, vi of the live state
//   double p_success() const;
//   double entropy() const;
//   void step();                      // one oracle + diffusion application
//   void save_best();                 // live state became the stored best
//   void restore_best(const Registers&);
template <class Sim>
void record(const Sim& sim, const RunOptions& opts, std::vector<TraceRow>& trace) {
    const Registers r = sim.registers();
    TraceRow row{r.vi, r.vx, r.va, sim.p_success(), std::nullopt};
    if (opts.record_entropy) row.entropy_bits = sim.entropy();
    trace.push_back(row);
}

template <class Sim>
RunResult drive(Sim& sim, const TerminationPolicy& policy, const RunOptions& opts) {
    policy.validate();
    RunResult result;
    const std::uint64_t stride = opts.trace_stride;
    std::uint64_t ceiling = opts.iteration_ceiling;
    if (ceiling == 0) ceiling = policy.max_iterations.value_or(default_iteration_ceiling(sim.n(), sim.m()));
    if (policy.max_iterations && *policy.max_iterations < ceiling) ceiling = *policy.max_iterations;

    TerminationState best;
    Registers live = sim.registers();
    // The superposed state is the first candidate for the best-so-far registers.
    block_push(live, best);
    sim.save_best();
    if (stride != 0) record(sim, opts, result.trace);

    auto entropy = [&] {
        ++result.entropy_evaluations;
        return sim.entropy();
    };

    for (;;) {
        if (live.vi >= ceiling)
            throw error(errc::iteration_ceiling_reached,
                        "no stop after " + std::to_string(live.vi) + " iterations under policy " + to_string(policy));
        sim.step();
        ++result.steps_executed;
        live = sim.registers();
        if (stride != 0 && live.vi % stride == 0) record(sim, opts, result.trace);

        const StepDecision d = evaluate(policy, live, best, entropy);
        if (d.pushed) sim.save_best();
        if (d.restored) sim.restore_best(live);
        if (d.verdict == Verdict::stop) break;
    }

    if (stride != 0) {
        while (!result.trace.empty() && result.trace.back().iter > live.vi) result.trace.pop_back();
        if (result.trace.empty() || result.trace.back().iter != live.vi) record(sim, opts, result.trace);
    }

    const Registers fin = sim.registers();
    result.final_registers = fin;
    result.outcome.success = std::abs(fin.vx) > std::abs(fin.va);
    result.outcome.p_success = sim.p_success();
    result.outcome.iterations = fin.vi;
    result.outcome.entropy_bits = sim.entropy();
    return result;
}

}  // namespace detail

}  // namespace grover
