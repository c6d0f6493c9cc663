// core.hpp
// Search problem description, table constants and the two state
// representations shared by every simulation engine.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace grover {

using index_t = std::uint64_t;

enum class errc {
    empty_marked_set,
    index_out_of_range,
    all_marked,
    qubit_count_out_of_range,
    invalid_marked_count,
    dense_limit_exceeded,
    matrixfree_limit_exceeded,
    dimension_mismatch,
    not_normalized,
    oracle_mismatch,
    policy_parameter_missing,
    iteration_ceiling_reached,
    parse_error,
    io_error,
};

inline const char* errc_name(errc code) noexcept {
    switch (code) {
    case errc::empty_marked_set: return "EmptyMarkedSet";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::all_marked: return "AllMarked";
    case errc::qubit_count_out_of_range: return "QubitCountOutOfRange";
    case errc::invalid_marked_count: return "InvalidMarkedCount";
    case errc::dense_limit_exceeded: return "DenseLimitExceeded";
    case errc::matrixfree_limit_exceeded: return "MatrixFreeLimitExceeded";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::not_normalized: return "NotNormalized";
    case errc::oracle_mismatch: return "OracleMismatch";
    case errc::policy_parameter_missing: return "PolicyParameterMissing";
    case errc::iteration_ceiling_reached: return "IterationCeilingReached";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Largest n for which 2^-(n+1)/2 stays a normal double with headroom.
inline constexpr int max_qubits = 2040;

// Per-engine qubit caps. The dense cap bounds a 2^(n+1) x 2^(n+1) matrix.
struct EngineLimits {
    int dense = 12;
    int matrixfree_fast = 20;
    int matrixfree_naive = 13;
    int compressed = max_qubits;
};

// ---------------------------------------------------------------------------
// OracleSpec

class OracleSpec {
public:
    int n() const noexcept { return n_; }
    std::uint64_t m() const noexcept { return marked_.size(); }
    const std::vector<index_t>& marked() const noexcept { return marked_; }

    // Number of input basis states, 2^n. Only meaningful for n < 64.
    index_t input_states() const noexcept { return index_t{1} << n_; }

    bool contains(index_t x) const noexcept {
        return std::binary_search(marked_.begin(), marked_.end(), x);
    }

    // First input index not in the marked set.
    index_t first_unmarked() const noexcept {
        index_t x = 0;
        for (index_t mk : marked_) {
            if (mk != x) break;
            ++x;
        }
        return x;
    }

    friend bool operator==(const OracleSpec&, const OracleSpec&) = default;

    friend OracleSpec make_oracle(int n, std::vector<index_t> marked);

private:
    OracleSpec(int n, std::vector<index_t> marked) : n_(n), marked_(std::move(marked)) {}

    int n_;
    std::vector<index_t> marked_;
};

inline OracleSpec make_oracle(int n, std::vector<index_t> marked) {
    if (n < 1 || n > max_qubits)
        throw error(errc::qubit_count_out_of_range, "n=" + std::to_string(n) + " outside [1, " +
                                                        std::to_string(max_qubits) + "]");
    if (marked.empty()) throw error(errc::empty_marked_set, "at least one marked index is required");
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    if (n < 64) {
        const index_t limit = index_t{1} << n;
        if (marked.back() >= limit)
            throw error(errc::index_out_of_range, "marked index " + std::to_string(marked.back()) +
                                                      " >= 2^" + std::to_string(n));
        if (marked.size() == limit)
            throw error(errc::all_marked, "all 2^" + std::to_string(n) + " inputs are marked");
    }
    return OracleSpec(n, std::move(marked));
}

// f(x) of the search problem: 1 iff x is marked.
inline int f_eval(const OracleSpec& oracle, index_t x) {
    if (oracle.n() < 64 && x >= oracle.input_states())
        throw error(errc::index_out_of_range, "x=" + std::to_string(x) + " >= 2^" + std::to_string(oracle.n()));
    return oracle.contains(x) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// TableConstants

struct TableConstants {
    int n;
    double hc;   // 2^-(n+1)/2
    double dc1;  // 2^(1-n) - 1
    double dc2;  // 2^(1-n)
};

inline TableConstants table_constants(int n) {
    if (n < 1 || n > max_qubits)
        throw error(errc::qubit_count_out_of_range, "n=" + std::to_string(n) + " outside [1, " +
                                                        std::to_string(max_qubits) + "]");
    const int e = n + 1;
    double hc = std::ldexp(1.0, -(e / 2));
    if (e % 2 != 0) hc *= std::sqrt(0.5);
    const double dc2 = std::ldexp(1.0, 1 - n);
    return TableConstants{n, hc, dc2 - 1.0, dc2};
}

// ---------------------------------------------------------------------------
// DenseState

inline constexpr double dense_norm_tolerance = 1e-9;

inline double squared_norm(std::span<const double> amps) noexcept {
    double s = 0.0;
    for (double a : amps) s += a * a;
    return s;
}

// Full real amplitude vector over n input qubits plus one output qubit.
// Basis index i = (x << 1) | y: the output qubit is the least significant bit.
class DenseState {
public:
    DenseState(int n, std::vector<double> amps) : n_(n), amps_(std::move(amps)) {
        if (n < 1 || n > 40) throw error(errc::qubit_count_out_of_range, "dense state n=" + std::to_string(n));
        if (amps_.size() != dimension(n))
            throw error(errc::dimension_mismatch, "expected " + std::to_string(dimension(n)) + " amplitudes, got " +
                                                      std::to_string(amps_.size()));
        const double norm = squared_norm(amps_);
        if (std::abs(norm - 1.0) > dense_norm_tolerance)
            throw error(errc::not_normalized, "sum of squared amplitudes is " + std::to_string(norm));
    }

    static std::size_t dimension(int n) noexcept { return std::size_t{2} << n; }

    static DenseState basis(int n, index_t i) {
        std::vector<double> amps(dimension(n), 0.0);
        if (i >= amps.size()) throw error(errc::index_out_of_range, "basis index " + std::to_string(i));
        amps[i] = 1.0;
        return DenseState(n, std::move(amps));
    }

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return amps_.size(); }
    std::span<const double> amplitudes() const noexcept { return amps_; }
    double operator[](std::size_t i) const noexcept { return amps_[i]; }

    std::vector<double> release() && noexcept { return std::move(amps_); }

private:
    int n_;
    std::vector<double> amps_;
};

// ---------------------------------------------------------------------------
// CompressedState

// Two-amplitude summary of a Grover state. vx is the odd-index amplitude of
// every marked input, va the odd-index amplitude of every unmarked input; the
// even component of each pair is the negated odd one.
struct CompressedState {
    int n = 1;
    std::uint64_t m = 1;
    double vx = 0.0;
    double va = 0.0;
    std::uint64_t vi = 0;

    friend bool operator==(const CompressedState&, const CompressedState&) = default;
};

// 2m*vx^2, the total probability of the marked inputs.
inline double marked_probability(const CompressedState& s) noexcept {
    return 2.0 * static_cast<double>(s.m) * s.vx * s.vx;
}

// 2(2^n - m)*va^2, evaluated with rescaling so it stays finite for n > 1023.
inline double unmarked_probability(const CompressedState& s) noexcept {
    const double scaled = std::ldexp(s.va, s.n / 2);
    const double n_va2 = scaled * scaled * ((s.n % 2 != 0) ? 2.0 : 1.0);  // 2^n * va^2
    return 2.0 * n_va2 * (1.0 - std::ldexp(static_cast<double>(s.m), -s.n));
}

inline double normalization(const CompressedState& s) noexcept {
    return marked_probability(s) + unmarked_probability(s);
}

// ---------------------------------------------------------------------------
// Run results

struct SearchOutcome {
    bool success = false;
    double p_success = 0.0;
    std::uint64_t iterations = 0;
    double entropy_bits = 0.0;
};

// vx and va use the compressed sign convention (odd-index amplitude of the
// category) for every engine.
struct TraceRow {
    std::uint64_t iter = 0;
    double vx = 0.0;
    double va = 0.0;
    double p_success = 0.0;
    std::optional<double> entropy_bits;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

}  // namespace grover
