// termination.hpp
// Stop rules for the Grover iteration, assembled from small blocks:
//   A     iteration cap
//   PUSH  remember the best marked amplitude seen so far
//   POP   rewind the live registers to the remembered best
//   D     entropy at or below an acceptable level
//
//   Model 1: A
//   Model 2: PUSH, POP on the first failed PUSH (first maximum of |vx|)
//   Model 3: A guarding Model 2
//   Model 4: D
//   Model 5: A guarding (D, then Model 2)
//
// Models 1-3 work on amplitudes only and never request an entropy value.

#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "grover/core.hpp"

namespace grover {

enum class Model { m1 = 1, m2, m3, m4, m5 };

struct TerminationPolicy {
    Model model = Model::m2;
    std::optional<std::uint64_t> max_iterations;
    std::optional<double> entropy_threshold;

    static TerminationPolicy model1(std::uint64_t max) { return checked({Model::m1, max, std::nullopt}); }
    static TerminationPolicy model2() { return checked({Model::m2, std::nullopt, std::nullopt}); }
    static TerminationPolicy model3(std::uint64_t max) { return checked({Model::m3, max, std::nullopt}); }
    static TerminationPolicy model4(double threshold) { return checked({Model::m4, std::nullopt, threshold}); }
    static TerminationPolicy model5(std::uint64_t max, double threshold) {
        return checked({Model::m5, max, threshold});
    }

    bool needs_max() const noexcept { return model == Model::m1 || model == Model::m3 || model == Model::m5; }
    bool needs_entropy() const noexcept { return model == Model::m4 || model == Model::m5; }

    void validate() const {
        if (needs_max() && (!max_iterations || *max_iterations == 0))
            throw error(errc::policy_parameter_missing,
                        "model " + std::to_string(static_cast<int>(model)) + " requires max_iterations >= 1");
        if (needs_entropy() && (!entropy_threshold || !(*entropy_threshold >= 0.0)))
            throw error(errc::policy_parameter_missing,
                        "model " + std::to_string(static_cast<int>(model)) + " requires entropy_threshold >= 0");
    }

    friend bool operator==(const TerminationPolicy&, const TerminationPolicy&) = default;

private:
    static TerminationPolicy checked(TerminationPolicy p) {
        p.validate();
        return p;
    }
};

// Live registers of a run: category amplitudes and the iteration index.
struct Registers {
    double vx = 0.0;
    double va = 0.0;
    std::uint64_t vi = 0;
};

// Best-so-far registers (mvx, mva, mvi).
struct TerminationState {
    double mvx = 0.0;
    double mva = 0.0;
    std::uint64_t mvi = 0;
};

enum class Verdict { proceed, stop };

struct StepDecision {
    Verdict verdict = Verdict::proceed;
    bool restored = false;  // POP rewound the live registers; implies stop
    bool pushed = false;    // the live registers became the stored best
};

inline Verdict block_a(std::uint64_t vi, std::uint64_t max) noexcept {
    return vi >= max ? Verdict::stop : Verdict::proceed;
}

inline bool block_push(const Registers& live, TerminationState& best) noexcept {
    if (std::abs(live.vx) > std::abs(best.mvx)) {
        best.mvx = live.vx;
        best.mva = live.va;
        best.mvi = live.vi;
        return true;
    }
    return false;
}

inline bool block_pop(Registers& live, const TerminationState& best) noexcept {
    if (std::abs(live.vx) <= std::abs(best.mvx)) {
        live.vx = best.mvx;
        live.va = best.mva;
        live.vi = best.mvi;
        return true;
    }
    return false;
}

// Inclusive: an entropy equal to the threshold is acceptable.
inline Verdict block_d(double entropy, double threshold) noexcept {
    return entropy <= threshold ? Verdict::stop : Verdict::proceed;
}

namespace detail {

// Model 2 core: keep going while |vx| grows, otherwise rewind and stop.
inline StepDecision turnover(Registers& live, TerminationState& best) noexcept {
    if (block_push(live, best)) return {Verdict::proceed, false, true};
    const bool restored = block_pop(live, best);
    return {Verdict::stop, restored, false};
}

// Cap reached: the current state wins if it is a new best, otherwise rewind.
inline StepDecision final_at_cap(Registers& live, TerminationState& best) noexcept {
    if (block_push(live, best)) return {Verdict::stop, false, true};
    const bool restored = block_pop(live, best);
    return {Verdict::stop, restored, false};
}

}  // namespace detail

// Called once after every quantum step. `entropy` is only invoked by the
// models that need it (4 and 5).
template <class EntropyFn>
StepDecision evaluate(const TerminationPolicy& policy, Registers& live, TerminationState& best, EntropyFn&& entropy) {
    switch (policy.model) {
    case Model::m1:
        return {block_a(live.vi, policy.max_iterations.value()), false, false};
    case Model::m2:
        return detail::turnover(live, best);
    case Model::m3:
        if (block_a(live.vi, policy.max_iterations.value()) == Verdict::stop) return detail::final_at_cap(live, best);
        return detail::turnover(live, best);
    case Model::m4:
        return {block_d(entropy(), policy.entropy_threshold.value()), false, false};
    case Model::m5:
        if (block_a(live.vi, policy.max_iterations.value()) == Verdict::stop) return detail::final_at_cap(live, best);
        if (block_d(entropy(), policy.entropy_threshold.value()) == Verdict::stop) return {Verdict::stop, false, false};
        return detail::turnover(live, best);
    }
    return {};
}

// Iteration count maximizing the marked amplitude, round(pi/4*sqrt(2^n/m) - 1/2).
inline std::uint64_t theoretical_iterations(int n, std::uint64_t m) {
    if (n < 1 || n > 124) throw error(errc::qubit_count_out_of_range, "theoretical_iterations n=" + std::to_string(n));
    if (m == 0 || (n < 64 && m >= (std::uint64_t{1} << n)))
        throw error(errc::invalid_marked_count, "m=" + std::to_string(m));
    const long double ratio = std::ldexp(1.0L, n) / static_cast<long double>(m);
    const long double k = std::numbers::pi_v<long double> / 4.0L * std::sqrt(ratio) - 0.5L;
    return static_cast<std::uint64_t>(std::llround(k < 0.0L ? 0.0L : k));
}

// Hard stop for policies without an iteration cap (Models 2 and 4): several
// amplitude periods past the theoretical optimum.
inline std::uint64_t default_iteration_ceiling(int n, std::uint64_t m) noexcept {
    const double k = std::numbers::pi / 4.0 * std::sqrt(std::ldexp(1.0, n) / static_cast<double>(m));
    const double ceiling = 8.0 * k + 64.0;
    if (!(ceiling < 1.8e19)) return UINT64_MAX;
    return static_cast<std::uint64_t>(ceiling);
}

// ---------------------------------------------------------------------------
// Policy strings: m1:max=<int>, m2, m3:max=<int>, m4:ent=<float>,
// m5:max=<int>,ent=<float>

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::uint64_t parse_uint(std::string_view s, std::string_view what) {
    s = trim(s);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
        throw error(errc::parse_error, std::string(what) + ": not an unsigned integer: '" + std::string(s) + "'");
    return v;
}

inline double parse_real(std::string_view s, std::string_view what) {
    s = trim(s);
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
        throw error(errc::parse_error, std::string(what) + ": not a number: '" + std::string(s) + "'");
    return v;
}

}  // namespace detail

inline TerminationPolicy parse_policy(std::string_view text) {
    text = detail::trim(text);
    const auto colon = text.find(':');
    const std::string_view head = detail::trim(text.substr(0, colon));
    TerminationPolicy p;
    if (head == "m1") p.model = Model::m1;
    else if (head == "m2") p.model = Model::m2;
    else if (head == "m3") p.model = Model::m3;
    else if (head == "m4") p.model = Model::m4;
    else if (head == "m5") p.model = Model::m5;
    else throw error(errc::parse_error, "policy: unknown model '" + std::string(head) + "'");

    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos)
                throw error(errc::parse_error, "policy: expected key=value, got '" + std::string(item) + "'");
            const std::string_view key = detail::trim(item.substr(0, eq));
            const std::string_view value = item.substr(eq + 1);
            if (key == "max") p.max_iterations = detail::parse_uint(value, "policy max");
            else if (key == "ent") p.entropy_threshold = detail::parse_real(value, "policy ent");
            else throw error(errc::parse_error, "policy: unknown key '" + std::string(key) + "'");
        }
    }
    if (p.max_iterations && !p.needs_max())
        throw error(errc::parse_error, "policy: '" + std::string(head) + "' takes no max");
    if (p.entropy_threshold && !p.needs_entropy())
        throw error(errc::parse_error, "policy: '" + std::string(head) + "' takes no ent");
    p.validate();
    return p;
}

inline std::string to_string(const TerminationPolicy& p) {
    std::string s = "m" + std::to_string(static_cast<int>(p.model));
    std::string sep = ":";
    if (p.needs_max() && p.max_iterations) {
        s += sep + "max=" + std::to_string(*p.max_iterations);
        sep = ",";
    }
    if (p.needs_entropy() && p.entropy_threshold) {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, *p.entropy_threshold);
        s += sep + "ent=" + std::string(buf, end);
    }
    return s;
}

}  // namespace grover
