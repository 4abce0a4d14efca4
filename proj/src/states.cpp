#include "mixcast/states.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mixcast/errors.hpp"

namespace mixcast {

MixedQubit::MixedQubit(double up_probability) : c0(up_probability) {
    if (!(c0 >= 0.0 && c0 <= 1.0)) {
        throw std::invalid_argument("MixedQubit: c0 must lie in [0,1], got " + std::to_string(c0));
    }
}

void BasisLabel::validate() const {
    if (n < 1 || n > kMaxStateQubits) {
        throw SizeLimitError("BasisLabel: n=" + std::to_string(n) + " outside [1," +
                             std::to_string(kMaxStateQubits) + "]");
    }
    if (m < 0 || m > n) throw std::invalid_argument("BasisLabel: m outside [0,n]");
    if (alpha >= binomial(n, m)) {
        throw std::invalid_argument("BasisLabel: alpha=" + std::to_string(alpha) +
                                    " not below C(n,m)=" + std::to_string(binomial(n, m)));
    }
}

double PureState::norm() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

cplx DensityOperator::trace() const {
    cplx t = 0.0;
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i) t += matrix[i * d + i];
    return t;
}

double DensityOperator::hermiticity_defect() const {
    const std::size_t d = dim();
    double worst = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
            worst = std::max(worst, std::abs(matrix[r * d + c] - std::conj(matrix[c * d + r])));
        }
    }
    return worst;
}

double frobenius_distance(const DensityOperator& a, const DensityOperator& b) {
    if (a.n_qubits != b.n_qubits) {
        throw std::invalid_argument("frobenius_distance: dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.matrix.size(); ++i) s += std::norm(a.matrix[i] - b.matrix[i]);
    return std::sqrt(s);
}

namespace {
void check_operator_size(int n, int max_qubits) {
    if (n < 1) throw std::invalid_argument("qubit count must be positive");
    if (n > max_qubits || n > kMaxStateQubits) {
        throw SizeLimitError("dense operator over " + std::to_string(n) +
                             " qubits exceeds the ceiling of " + std::to_string(max_qubits));
    }
}
}  // namespace

DensityOperator tensor_power(const MixedQubit& q, int n, int max_qubits) {
    check_operator_size(n, max_qubits);
    const std::size_t d = std::size_t{1} << n;
    DensityOperator out{n, std::vector<cplx>(d * d, cplx{0.0, 0.0})};
    for (std::size_t mask = 0; mask < d; ++mask) {
        const int w = std::popcount(mask);
        out.matrix[mask * d + mask] = std::pow(q.c0, n - w) * std::pow(q.c1(), w);
    }
    return out;
}

std::vector<Rational> tensor_power_exact(const Rational& c0, int n, int max_qubits) {
    check_operator_size(n, max_qubits);
    const Rational c1 = Rational(1) - c0;
    const std::size_t d = std::size_t{1} << n;
    std::vector<Rational> diag(d);
    for (std::size_t mask = 0; mask < d; ++mask) {
        const int w = std::popcount(mask);
        diag[mask] = c0.pow(n - w) * c1.pow(w);
    }
    return diag;
}

PureState phase_tagged_state(const BasisLabel& label) {
    label.validate();
    const auto configs = enumerate_weight_configs(label.n, label.m);
    const std::uint64_t count = configs.size();
    PureState out{label.n, std::vector<cplx>(std::size_t{1} << label.n, cplx{0.0, 0.0})};
    const double scale = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::uint64_t j = 0; j < count; ++j) {
        // Reduce alpha*(j) mod C before converting to an angle so large tags
        // lose no precision.
        const std::uint64_t t = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(label.alpha) * j) % count);
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(count);
        out.amplitudes[configs[j].mask] = std::polar(scale, angle);
    }
    return out;
}

cplx inner_product(const PureState& a, const PureState& b) {
    if (a.n_qubits != b.n_qubits) {
        throw std::invalid_argument("inner_product: qubit count mismatch");
    }
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return s;
}

DensityOperator partial_trace_to_single(const DensityOperator& dop, int keep) {
    const int n = dop.n_qubits;
    if (keep < 0 || keep >= n) throw std::out_of_range("partial_trace_to_single: keep index out of range");
    const std::size_t d = dop.dim();
    const int shift = n - 1 - keep;  // qubit 0 is the most significant bit
    const std::uint64_t bit = std::uint64_t{1} << shift;
    const std::uint64_t low = bit - 1;

    DensityOperator out{1, std::vector<cplx>(4, cplx{0.0, 0.0})};
    const std::size_t half = d >> 1;
    for (std::size_t y = 0; y < half; ++y) {
        // Insert a hole at the kept qubit's bit position.
        const std::uint64_t rest = ((y & ~low) << 1) | (y & low);
        const std::uint64_t i0 = rest;        // kept qubit up
        const std::uint64_t i1 = rest | bit;  // kept qubit down
        out.matrix[0] += dop.matrix[i0 * d + i0];
        out.matrix[1] += dop.matrix[i0 * d + i1];
        out.matrix[2] += dop.matrix[i1 * d + i0];
        out.matrix[3] += dop.matrix[i1 * d + i1];
    }
    return out;
}

DensityOperator partial_trace_to_single(const PureState& state, int keep) {
    const int n = state.n_qubits;
    if (keep < 0 || keep >= n) throw std::out_of_range("partial_trace_to_single: keep index out of range");
    const int shift = n - 1 - keep;
    const std::uint64_t bit = std::uint64_t{1} << shift;
    const std::uint64_t low = bit - 1;
    const std::size_t half = state.dim() >> 1;

    cplx r00 = 0.0, r01 = 0.0, r11 = 0.0;
    for (std::size_t y = 0; y < half; ++y) {
        const std::uint64_t rest = ((y & ~low) << 1) | (y & low);
        const cplx a0 = state.amplitudes[rest];
        const cplx a1 = state.amplitudes[rest | bit];
        r00 += a0 * std::conj(a0);
        r01 += a0 * std::conj(a1);
        r11 += a1 * std::conj(a1);
    }
    DensityOperator out{1, {r00, r01, std::conj(r01), r11}};
    return out;
}

std::pair<double, double> marginal_of_tagged(int m_total, int w) {
    if (m_total < 1) throw std::invalid_argument("marginal_of_tagged: qubit count must be positive");
    if (w < 0 || w > m_total) throw std::invalid_argument("marginal_of_tagged: weight outside [0,M]");
    const double md = static_cast<double>(m_total);
    return {(md - w) / md, w / md};
}

}  // namespace mixcast
