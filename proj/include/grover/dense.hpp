// dense.hpp
// Explicit operator matrices for the Grover gate and their application to a
// full state vector. Ground truth for the other engines.

#pragma once

#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "grover/core.hpp"
#include "grover/run.hpp"
#include "grover/termination.hpp"

namespace grover {

enum class OperatorKind { superposition, entanglement, interference, gate };

inline const char* kind_name(OperatorKind k) noexcept {
    switch (k) {
    case OperatorKind::superposition: return "superposition";
    case OperatorKind::entanglement: return "entanglement";
    case OperatorKind::interference: return "interference";
    case OperatorKind::gate: return "gate";
    }
    return "?";
}

// Square row-major real matrix.
class OperatorMatrix {
public:
    OperatorMatrix(std::size_t dim, OperatorKind kind) : dim_(dim), kind_(kind), entries_(dim * dim, 0.0) {}

    std::size_t dim() const noexcept { return dim_; }
    OperatorKind kind() const noexcept { return kind_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * dim_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * dim_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {entries_.data() + i * dim_, dim_}; }
    std::span<const double> entries() const noexcept { return entries_; }

private:
    std::size_t dim_;
    OperatorKind kind_;
    std::vector<double> entries_;
};

namespace detail {

inline void check_dense_limit(int n, const EngineLimits& limits) {
    if (n < 1 || n > limits.dense)
        throw error(errc::dense_limit_exceeded,
                    "n=" + std::to_string(n) + " outside dense limit [1, " + std::to_string(limits.dense) + "]");
}

inline OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b, OperatorKind kind) {
    const std::size_t d = a.dim();
    OperatorMatrix c(d, kind);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

}  // namespace detail

// Sp = H^(n+1): entry (i,j) = (-1)^popcount(i AND j) * 2^-(n+1)/2.
inline OperatorMatrix build_superposition(int n, const EngineLimits& limits = {}) {
    detail::check_dense_limit(n, limits);
    const std::size_t d = DenseState::dimension(n);
    const double hc = table_constants(n).hc;
    OperatorMatrix op(d, OperatorKind::superposition);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) op(i, j) = (std::popcount(i & j) & 1) ? -hc : hc;
    return op;
}

// U_F: identity on the (2x, 2x+1) block of unmarked x, NOT on marked x.
inline OperatorMatrix build_entanglement(const OracleSpec& oracle, const EngineLimits& limits = {}) {
    detail::check_dense_limit(oracle.n(), limits);
    const std::size_t d = DenseState::dimension(oracle.n());
    OperatorMatrix op(d, OperatorKind::entanglement);
    for (std::size_t x = 0; x < d / 2; ++x) {
        const std::size_t lo = 2 * x;
        if (oracle.contains(x)) {
            op(lo, lo + 1) = 1.0;
            op(lo + 1, lo) = 1.0;
        } else {
            op(lo, lo) = 1.0;
            op(lo + 1, lo + 1) = 1.0;
        }
    }
    return op;
}

// D_n (x) I: dc1 on the diagonal, dc2 between distinct inputs of equal output
// bit, 0 across output bits.
inline OperatorMatrix build_interference(int n, const EngineLimits& limits = {}) {
    detail::check_dense_limit(n, limits);
    const std::size_t d = DenseState::dimension(n);
    const TableConstants tc = table_constants(n);
    OperatorMatrix op(d, OperatorKind::interference);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if ((i ^ j) & 1) continue;
            op(i, j) = (i >> 1) == (j >> 1) ? tc.dc1 : tc.dc2;
        }
    return op;
}

// (Int * U_F)^h * Sp, h >= 1.
inline OperatorMatrix build_gate(const OracleSpec& oracle, std::uint64_t h, const EngineLimits& limits = {}) {
    if (h == 0) throw error(errc::invalid_marked_count, "build_gate requires h >= 1");
    const OperatorMatrix step = detail::multiply(build_interference(oracle.n(), limits),
                                                 build_entanglement(oracle, limits), OperatorKind::gate);
    OperatorMatrix gate = detail::multiply(step, build_superposition(oracle.n(), limits), OperatorKind::gate);
    for (std::uint64_t k = 1; k < h; ++k) gate = detail::multiply(step, gate, OperatorKind::gate);
    return gate;
}

inline std::vector<double> apply(const OperatorMatrix& op, std::span<const double> x) {
    if (op.dim() != x.size())
        throw error(errc::dimension_mismatch,
                    "operator dim " + std::to_string(op.dim()) + " vs state size " + std::to_string(x.size()));
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto r = op.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

// Forwarding overload so unqualified calls on a vector do not resolve to std::apply.
template <class V>
    requires std::same_as<std::remove_cvref_t<V>, std::vector<double>>
std::vector<double> apply(const OperatorMatrix& op, V&& x) {
    return apply(op, std::span<const double>(x));
}

inline DenseState apply(const OperatorMatrix& op, const DenseState& state) {
    return DenseState(state.n(), grover::apply(op, state.amplitudes()));
}

// max |(M M^T - I)_ij|
inline double orthogonality_error(const OperatorMatrix& op) {
    const std::size_t d = op.dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const auto ri = op.row(i);
            const auto rj = op.row(j);
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) acc += ri[k] * rj[k];
            worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

// Shannon entropy in bits of the measurement distribution p_i = a_i^2.
inline double shannon_entropy(std::span<const double> amps) {
    double total = 0.0;
    double h = 0.0;
    for (double a : amps) {
        const double p = a * a;
        total += p;
        if (p > 0.0) h -= p * std::log2(p);
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw error(errc::not_normalized, "probabilities sum to " + std::to_string(total));
    return h;
}

inline double state_entropy_dense(const DenseState& state) { return shannon_entropy(state.amplitudes()); }

// Registers of a full state in the compressed sign convention: vx = -a[2x+1]
// for the first marked x, va likewise for the first unmarked x. A run from
// |0..01> is the negation of the expanded compressed state.
inline Registers dense_registers(const OracleSpec& oracle, std::span<const double> amps, std::uint64_t vi) {
    return Registers{-amps[2 * oracle.marked().front() + 1], -amps[2 * oracle.first_unmarked() + 1], vi};
}

inline double dense_marked_probability(const OracleSpec& oracle, std::span<const double> amps) {
    double p = 0.0;
    for (index_t x : oracle.marked()) p += amps[2 * x] * amps[2 * x] + amps[2 * x + 1] * amps[2 * x + 1];
    return p;
}

namespace detail {

// Shared state handling for engines that keep the full vector.
class FullVectorSim {
public:
    FullVectorSim(const OracleSpec& oracle, std::vector<double> amps) : oracle_(oracle), amps_(std::move(amps)) {}

    int n() const noexcept { return oracle_.n(); }
    std::uint64_t m() const noexcept { return oracle_.m(); }
    Registers registers() const { return dense_registers(oracle_, amps_, vi_); }
    double p_success() const { return dense_marked_probability(oracle_, amps_); }
    double entropy() const { return shannon_entropy(amps_); }
    void save_best() { best_ = amps_, best_vi_ = vi_; }
    void restore_best(const Registers&) { amps_ = best_, vi_ = best_vi_; }

protected:
    const OracleSpec& oracle_;
    std::vector<double> amps_;
    std::vector<double> best_;
    std::uint64_t vi_ = 0;
    std::uint64_t best_vi_ = 0;
};

class DenseSim : public FullVectorSim {
public:
    DenseSim(const OracleSpec& oracle, const EngineLimits& limits)
        : FullVectorSim(oracle, {}),
          ent_(build_entanglement(oracle, limits)),
          int_(build_interference(oracle.n(), limits)) {
        const OperatorMatrix sp = build_superposition(oracle.n(), limits);
        amps_ = DenseState::basis(oracle.n(), 1).release();
        amps_ = grover::apply(sp, amps_);
    }

    void step() {
        amps_ = grover::apply(int_, grover::apply(ent_, amps_));
        ++vi_;
    }

private:
    OperatorMatrix ent_;
    OperatorMatrix int_;
};

}  // namespace detail

// Sp once on |0..01>, then (U_F, Int) until the policy stops.
inline RunResult run_dense(const OracleSpec& oracle, const TerminationPolicy& policy, const RunOptions& opts = {}) {
    detail::check_dense_limit(oracle.n(), opts.limits);
    detail::DenseSim sim(oracle, opts.limits);
    return detail::drive(sim, policy, opts);
}

// One row per line, space separated, 17 significant digits.
inline void write_matrix(std::ostream& out, const OperatorMatrix& op) {
    char buf[32];
    for (std::size_t i = 0; i < op.dim(); ++i) {
        const auto r = op.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", r[j]);
            if (j) out << ' ';
            out << buf;
        }
        out << '\n';
    }
}

inline void write_matrix(const std::string& path, const OperatorMatrix& op) {
    std::ofstream out(path);
    if (!out) throw error(errc::io_error, "cannot open '" + path + "' for writing");
    write_matrix(out, op);
    if (!out) throw error(errc::io_error, "write to '" + path + "' failed");
}

inline OperatorMatrix read_matrix(std::istream& in, OperatorKind kind) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok) row.push_back(detail::parse_real(tok, "matrix entry"));
        rows.push_back(std::move(row));
    }
    OperatorMatrix op(rows.size(), kind);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw error(errc::dimension_mismatch, "matrix row " + std::to_string(i) + " has " +
                                                      std::to_string(rows[i].size()) + " entries");
        for (std::size_t j = 0; j < rows.size(); ++j) op(i, j) = rows[i][j];
    }
    return op;
}

}  // namespace grover
