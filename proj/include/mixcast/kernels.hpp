#pragma once

#include <span>
#include <vector>

#include "mixcast/states.hpp"

namespace mixcast::kernels {

// Dense inner-loop kernels. Each has an OpenMP version (the default name)
// and a plain serial reference (the _serial name) kept for testing and for
// the benchmark tool. The parallel versions assign every output element to
// exactly one thread, or combine fixed-size block partials in block order,
// so results are bit-identical across runs and thread counts.

// G[i*n + j] = <states[i] | states[j]>.
std::vector<cplx> gram_matrix_serial(std::span<const PureState> states);
std::vector<cplx> gram_matrix(std::span<const PureState> states);

// max_ij |G[i][j] - delta_ij| of a square matrix given row-major.
double max_identity_deviation(std::span<const cplx> gram, std::size_t n);

// rho = sum_i weights[i] |states[i]><states[i]|.
DensityOperator mixture_density_serial(std::span<const double> weights,
                                       std::span<const PureState> states);
DensityOperator mixture_density(std::span<const double> weights,
                                std::span<const PureState> states);

// Single-qubit reduction of a dense operator; blocked deterministic sums.
DensityOperator single_marginal_serial(const DensityOperator& dop, int keep);
DensityOperator single_marginal(const DensityOperator& dop, int keep);

// Weighted sum of single-qubit marginals of pure states.
DensityOperator ensemble_marginal_serial(std::span<const double> weights,
                                         std::span<const PureState> states, int keep);
DensityOperator ensemble_marginal(std::span<const double> weights,
                                  std::span<const PureState> states, int keep);

}  // namespace mixcast::kernels
