#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mixcast/combinatorics.hpp"
#include "mixcast/rational.hpp"

namespace mixcast {

using cplx = std::complex<double>;

// Dense-operator ceiling (2^12 x 2^12 matrices); overridable per call.
inline constexpr int kDefaultMaxQubits = 12;
// Hard ceiling for state vectors.
inline constexpr int kMaxStateQubits = 20;

// Diagonal single-qubit mixed state c0|up><up| + c1|down><down|.
// c1 and bloch_r are derived from c0, so c0 + c1 == 1 holds exactly.
struct MixedQubit {
    double c0 = 1.0;

    explicit MixedQubit(double up_probability);
    double c1() const { return 1.0 - c0; }
    double bloch_r() const { return 2.0 * c0 - 1.0; }
};

// Names the phase-tagged basis state of n qubits with m down spins and
// root-of-unity tag alpha, 0 <= alpha < C(n, m).
struct BasisLabel {
    int n = 1;
    int m = 0;
    std::uint64_t alpha = 0;

    void validate() const;
    bool operator==(const BasisLabel&) const = default;
};

// Dense complex vector over n qubits; index convention matches WeightConfig
// (qubit 0 at the most significant bit).
struct PureState {
    int n_qubits = 0;
    std::vector<cplx> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
};

// Dense complex matrix over n qubits, row-major.
struct DensityOperator {
    int n_qubits = 0;
    std::vector<cplx> matrix;

    std::size_t dim() const { return std::size_t{1} << n_qubits; }
    cplx& at(std::size_t r, std::size_t c) { return matrix[r * dim() + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return matrix[r * dim() + c]; }
    cplx trace() const;
    double hermiticity_defect() const;  // max |A - A^dagger| entry
};

double frobenius_distance(const DensityOperator& a, const DensityOperator& b);

// rho^(tensor n): diagonal operator with entry c0^(n-w) c1^w on each mask of
// weight w.
DensityOperator tensor_power(const MixedQubit& q, int n, int max_qubits = kDefaultMaxQubits);

// Same diagonal in exact rationals; entry order matches tensor_power.
std::vector<Rational> tensor_power_exact(const Rational& c0, int n, int max_qubits = kDefaultMaxQubits);

// The phase-tagged basis state: amplitude exp(2*pi*i*alpha*(j-1)/C)/sqrt(C)
// on the j-th weight-m mask, zero elsewhere.
PureState phase_tagged_state(const BasisLabel& label);

// Conjugate-linear in the first argument.
cplx inner_product(const PureState& a, const PureState& b);

// Reduction of an n-qubit operator to the single kept qubit.
DensityOperator partial_trace_to_single(const DensityOperator& dop, int keep);

// Same reduction computed from a pure state without forming the projector.
DensityOperator partial_trace_to_single(const PureState& state, int keep);

// Closed-form single-qubit marginal of any weight-w tagged state of M qubits:
// ((M-w)/M, w/M), no state construction.
std::pair<double, double> marginal_of_tagged(int m_total, int w);

}  // namespace mixcast
