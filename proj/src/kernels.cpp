#include "mixcast/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mixcast::kernels {

namespace {

void check_same_shape(std::span<const double> weights, std::span<const PureState> states) {
    if (weights.size() != states.size()) {
        throw std::invalid_argument("kernels: weights/states length mismatch");
    }
    for (const PureState& s : states) {
        if (s.n_qubits != states.front().n_qubits) {
            throw std::invalid_argument("kernels: states differ in qubit count");
        }
    }
}

// Fixed block count for reductions: partials are combined in block order, so
// the result does not depend on the thread count.
constexpr std::size_t kReductionBlocks = 64;

}  // namespace

std::vector<cplx> gram_matrix_serial(std::span<const PureState> states) {
    const std::size_t n = states.size();
    std::vector<cplx> gram(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            gram[i * n + j] = inner_product(states[i], states[j]);
        }
    }
    return gram;
}

std::vector<cplx> gram_matrix(std::span<const PureState> states) {
    const std::size_t n = states.size();
    std::vector<cplx> gram(n * n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            gram[i * n + j] = inner_product(states[i], states[j]);
        }
    }
    return gram;
}

double max_identity_deviation(std::span<const cplx> gram, std::size_t n) {
    if (gram.size() != n * n) throw std::invalid_argument("max_identity_deviation: bad size");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cplx expect = (i == j) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            worst = std::max(worst, std::abs(gram[i * n + j] - expect));
        }
    }
    return worst;
}

DensityOperator mixture_density_serial(std::span<const double> weights,
                                       std::span<const PureState> states) {
    check_same_shape(weights, states);
    const int n_qubits = states.empty() ? 1 : states.front().n_qubits;
    const std::size_t d = std::size_t{1} << n_qubits;
    DensityOperator out{n_qubits, std::vector<cplx>(d * d, cplx{0.0, 0.0})};
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t t = 0; t < states.size(); ++t) {
            const cplx wr = weights[t] * states[t].amplitudes[r];
            if (wr == cplx{0.0, 0.0}) continue;
            const cplx* amp = states[t].amplitudes.data();
            cplx* row = out.matrix.data() + r * d;
            for (std::size_t c = 0; c < d; ++c) row[c] += wr * std::conj(amp[c]);
        }
    }
    return out;
}

DensityOperator mixture_density(std::span<const double> weights,
                                std::span<const PureState> states) {
    check_same_shape(weights, states);
    const int n_qubits = states.empty() ? 1 : states.front().n_qubits;
    const std::size_t d = std::size_t{1} << n_qubits;
    DensityOperator out{n_qubits, std::vector<cplx>(d * d, cplx{0.0, 0.0})};
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(d); ++r) {
        for (std::size_t t = 0; t < states.size(); ++t) {
            const cplx wr = weights[t] * states[t].amplitudes[static_cast<std::size_t>(r)];
            if (wr == cplx{0.0, 0.0}) continue;
            const cplx* amp = states[t].amplitudes.data();
            cplx* row = out.matrix.data() + static_cast<std::size_t>(r) * d;
            for (std::size_t c = 0; c < d; ++c) row[c] += wr * std::conj(amp[c]);
        }
    }
    return out;
}

namespace {

// Shared blocked implementation: entry sums are split into kReductionBlocks
// ranges whose partials are added back in block order.
DensityOperator single_marginal_blocked(const DensityOperator& dop, int keep, bool parallel) {
    const int n = dop.n_qubits;
    if (keep < 0 || keep >= n) throw std::out_of_range("single_marginal: keep index out of range");
    const std::size_t d = dop.dim();
    const int shift = n - 1 - keep;
    const std::uint64_t bit = std::uint64_t{1} << shift;
    const std::uint64_t low = bit - 1;
    const std::size_t half = d >> 1;

    const std::size_t blocks = std::min<std::size_t>(kReductionBlocks, half);
    std::vector<cplx> partial(blocks * 4, cplx{0.0, 0.0});

#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
        const std::size_t begin = half * b / blocks;
        const std::size_t end = half * (b + 1) / blocks;
        cplx p00 = 0.0, p01 = 0.0, p10 = 0.0, p11 = 0.0;
        for (std::size_t y = begin; y < end; ++y) {
            const std::uint64_t rest = ((y & ~low) << 1) | (y & low);
            const std::uint64_t i0 = rest;
            const std::uint64_t i1 = rest | bit;
            p00 += dop.matrix[i0 * d + i0];
            p01 += dop.matrix[i0 * d + i1];
            p10 += dop.matrix[i1 * d + i0];
            p11 += dop.matrix[i1 * d + i1];
        }
        partial[b * 4 + 0] = p00;
        partial[b * 4 + 1] = p01;
        partial[b * 4 + 2] = p10;
        partial[b * 4 + 3] = p11;
    }

    DensityOperator out{1, std::vector<cplx>(4, cplx{0.0, 0.0})};
    for (std::size_t b = 0; b < blocks; ++b) {
        for (int e = 0; e < 4; ++e) out.matrix[e] += partial[b * 4 + e];
    }
    return out;
}

}  // namespace

DensityOperator single_marginal_serial(const DensityOperator& dop, int keep) {
    return single_marginal_blocked(dop, keep, false);
}

DensityOperator single_marginal(const DensityOperator& dop, int keep) {
    return single_marginal_blocked(dop, keep, true);
}

namespace {

DensityOperator ensemble_marginal_impl(std::span<const double> weights,
                                       std::span<const PureState> states, int keep,
                                       bool parallel) {
    check_same_shape(weights, states);
    const std::size_t n = states.size();
    std::vector<DensityOperator> per_branch(n);

#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(n); ++t) {
        per_branch[t] = partial_trace_to_single(states[t], keep);
    }

    DensityOperator out{1, std::vector<cplx>(4, cplx{0.0, 0.0})};
    for (std::size_t t = 0; t < n; ++t) {
        for (int e = 0; e < 4; ++e) out.matrix[e] += weights[t] * per_branch[t].matrix[e];
    }
    return out;
}

}  // namespace

DensityOperator ensemble_marginal_serial(std::span<const double> weights,
                                         std::span<const PureState> states, int keep) {
    return ensemble_marginal_impl(weights, states, keep, false);
}

DensityOperator ensemble_marginal(std::span<const double> weights,
                                  std::span<const PureState> states, int keep) {
    return ensemble_marginal_impl(weights, states, keep, true);
}

}  // namespace mixcast::kernels
