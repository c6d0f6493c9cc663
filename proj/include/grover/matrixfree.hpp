// matrixfree.hpp
// Compute-on-demand simulation: operator entries come from bitwise element
// rules at the moment they are used, nothing is stored.

#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "grover/core.hpp"
#include "grover/dense.hpp"
#include "grover/run.hpp"

namespace grover {

namespace detail {

inline void check_element_index(int n, index_t i, index_t j) {
    if (n < 1 || n > 62) throw error(errc::qubit_count_out_of_range, "element n=" + std::to_string(n));
    const index_t d = index_t{2} << n;
    if (i >= d || j >= d)
        throw error(errc::index_out_of_range,
                    "(" + std::to_string(i) + "," + std::to_string(j) + ") outside " + std::to_string(d) + "^2");
}

}  // namespace detail

// Walsh-Hadamard element: walk both indices bit by bit over n+1 rounds and
// flip the sign whenever both current bits are set.
inline double sp_element(int n, index_t i, index_t j) {
    detail::check_element_index(n, i, j);
    index_t ii = i;
    index_t jj = j;
    double h = 1.0;
    for (int k = 0; k <= n; ++k) {
        if ((ii & jj) & 1) h = -h;
        ii >>= 1;
        jj >>= 1;
    }
    return h * table_constants(n).hc;
}

inline double ent_element(const OracleSpec& oracle, index_t i, index_t j) {
    detail::check_element_index(oracle.n(), i, j);
    const index_t r = i >> 1;
    if (r != (j >> 1)) return 0.0;
    if (oracle.contains(r)) return ((i ^ j) & 1) ? 1.0 : 0.0;
    return i == j ? 1.0 : 0.0;
}

inline double int_element(int n, index_t i, index_t j) {
    detail::check_element_index(n, i, j);
    if ((i ^ j) & 1) return 0.0;
    const TableConstants tc = table_constants(n);
    return i == j ? tc.dc1 : tc.dc2;
}

// Element sources for apply_on_demand. Table values are computed once per
// source, as the element rules expect.
struct SuperpositionElements {
    int n;
    double hc;
    explicit SuperpositionElements(int n_) : n(n_), hc(table_constants(n_).hc) {}
    int qubits() const noexcept { return n; }
    double operator()(index_t i, index_t j) const noexcept { return (std::popcount(i & j) & 1) ? -hc : hc; }
};

struct EntanglementElements {
    const OracleSpec& oracle;
    int qubits() const noexcept { return oracle.n(); }
    double operator()(index_t i, index_t j) const noexcept {
        const index_t r = i >> 1;
        if (r != (j >> 1)) return 0.0;
        if (oracle.contains(r)) return ((i ^ j) & 1) ? 1.0 : 0.0;
        return i == j ? 1.0 : 0.0;
    }
};

struct InterferenceElements {
    int n;
    TableConstants tc;
    explicit InterferenceElements(int n_) : n(n_), tc(table_constants(n_)) {}
    int qubits() const noexcept { return n; }
    double operator()(index_t i, index_t j) const noexcept {
        if ((i ^ j) & 1) return 0.0;
        return i == j ? tc.dc1 : tc.dc2;
    }
};

// y_i = sum_j element(i, j) * x_j without materializing the operator.
template <class Elements>
std::vector<double> apply_on_demand(const Elements& element, std::span<const double> x) {
    const std::size_t d = DenseState::dimension(element.qubits());
    if (x.size() != d)
        throw error(errc::dimension_mismatch, "state size " + std::to_string(x.size()) + " vs " + std::to_string(d));
    std::vector<double> y(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += element(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

template <class Elements>
DenseState apply_on_demand(const Elements& element, const DenseState& state) {
    return DenseState(state.n(), apply_on_demand(element, state.amplitudes()));
}

namespace detail {

inline void check_state(int n, std::span<const double> x) {
    if (x.size() != DenseState::dimension(n))
        throw error(errc::dimension_mismatch,
                    "state size " + std::to_string(x.size()) + " vs " + std::to_string(DenseState::dimension(n)));
}

}  // namespace detail

// U_F as amplitude swaps on the pairs of marked inputs.
inline void apply_entanglement_fast_inplace(const OracleSpec& oracle, std::span<double> x) {
    detail::check_state(oracle.n(), x);
    for (index_t mk : oracle.marked()) std::swap(x[2 * mk], x[2 * mk + 1]);
}

inline DenseState apply_entanglement_fast(const OracleSpec& oracle, const DenseState& state) {
    std::vector<double> x(state.amplitudes().begin(), state.amplitudes().end());
    apply_entanglement_fast_inplace(oracle, x);
    return DenseState(state.n(), std::move(x));
}

// Int: each element becomes dc1 * itself + dc2 * (sum of the other elements
// with the same output bit).
inline void apply_interference_fast_inplace(int n, std::span<double> x) {
    detail::check_state(n, x);
    const TableConstants tc = table_constants(n);
    double sum[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) sum[i & 1] += x[i];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = tc.dc1 * x[i] + tc.dc2 * (sum[i & 1] - x[i]);
}

inline DenseState apply_interference_fast(int n, const DenseState& state) {
    std::vector<double> x(state.amplitudes().begin(), state.amplitudes().end());
    apply_interference_fast_inplace(n, x);
    return DenseState(state.n(), std::move(x));
}

// Butterfly Walsh-Hadamard transform scaled by hc; same entries as
// sp_element.
inline void apply_superposition_fast_inplace(int n, std::span<double> x) {
    detail::check_state(n, x);
    for (std::size_t half = 1; half < x.size(); half <<= 1)
        for (std::size_t base = 0; base < x.size(); base += 2 * half)
            for (std::size_t k = base; k < base + half; ++k) {
                const double a = x[k];
                const double b = x[k + half];
                x[k] = a + b;
                x[k + half] = a - b;
            }
    const double hc = table_constants(n).hc;
    for (double& v : x) v *= hc;
}

inline DenseState apply_superposition_fast(int n, const DenseState& state) {
    std::vector<double> x(state.amplitudes().begin(), state.amplitudes().end());
    apply_superposition_fast_inplace(n, x);
    return DenseState(state.n(), std::move(x));
}

namespace detail {

inline void check_matrixfree_limit(int n, bool fast_paths, const EngineLimits& limits) {
    const int cap = fast_paths ? limits.matrixfree_fast : limits.matrixfree_naive;
    if (n < 1 || n > cap)
        throw error(errc::matrixfree_limit_exceeded, "n=" + std::to_string(n) + " outside matrix-free limit [1, " +
                                                         std::to_string(cap) + "]" +
                                                         (fast_paths ? "" : " without fast paths"));
}

class MatrixFreeSim : public FullVectorSim {
public:
    MatrixFreeSim(const OracleSpec& oracle, bool fast_paths) : FullVectorSim(oracle, {}), fast_(fast_paths) {
        amps_ = DenseState::basis(oracle.n(), 1).release();
        if (fast_)
            apply_superposition_fast_inplace(oracle.n(), amps_);
        else
            amps_ = apply_on_demand(SuperpositionElements(oracle.n()), amps_);
    }

    void step() {
        if (fast_) {
            apply_entanglement_fast_inplace(oracle_, amps_);
            apply_interference_fast_inplace(oracle_.n(), amps_);
        } else {
            amps_ = apply_on_demand(EntanglementElements{oracle_}, amps_);
            amps_ = apply_on_demand(InterferenceElements(oracle_.n()), amps_);
        }
        ++vi_;
    }

private:
    bool fast_;
};

}  // namespace detail

inline RunResult run_matrixfree(const OracleSpec& oracle, const TerminationPolicy& policy, bool fast_paths,
                                const RunOptions& opts = {}) {
    detail::check_matrixfree_limit(oracle.n(), fast_paths, opts.limits);
    detail::MatrixFreeSim sim(oracle, fast_paths);
    return detail::drive(sim, policy, opts);
}

}  // namespace grover
