#pragma once

#include <vector>

#include "mixcast/analysis.hpp"
#include "mixcast/broadcasting.hpp"
#include "mixcast/decomposition.hpp"
#include "mixcast/states.hpp"

namespace mixcast::verification {

// Max |Gram - I| over all 2^n phase-tagged states (basis completeness).
double tagged_gram_deviation(int n);

// Max Frobenius distance between reconstruct(decompose(c0, n)) and
// tensor_power(c0, n) over the grid.
double reconstruction_deviation(int n, const std::vector<double>& c0_grid);

// Exact-mode reconstruction identity: true when the rebuilt diagonal equals
// the tensor-power diagonal as rationals.
bool exact_reconstruction_identity(const Rational& c0, int n);

// Max |Gram - I| over the 2^N full output vectors of the tag-preserving
// isometry, with the symbolic ancilla labels materialized as an explicit
// orthonormal dimension.
double isometry_gram_deviation(int n_in, int m_out);

// Max entry deviation between the single-qubit marginal of each tagged
// projector (all alpha, all kept qubits) and the closed form ((n-m)/n, m/n).
double marginal_alpha_independence_deviation(int n);

// Max entry gap between tag-preserving and symmetrized marginals, over every
// input label and over mixed inputs on the c0 grid.
double variant_marginal_gap(int n_in, int m_out, const std::vector<double>& c0_grid);

// Frobenius gap between the dense ensemble output of broadcast_density and
// the ancilla-traced projector sum built from explicitly enumerated
// output (x) ancilla vectors.
double channel_consistency_deviation(const MixedQubit& q, int n_in, int m_out);

// Superbroadcasting curve evaluated through the unreduced triple sum over
// sectors (j, m, k) with per-sector 2j -> M amplitude rows; second route
// against the closed form.
double superbroadcast_eta_triple_sum(double r, int n_in, int m_out);
Rational superbroadcast_eta_triple_sum_exact(const Rational& r, int n_in, int m_out);

// Exact rational pipeline identity: the single-qubit output diagonal of the
// broadcast channel obeys out00 = eta*c0 + (1-eta)/2 with
// eta = N(M+2)/(M(N+2)), as rationals. Returns true when the identity holds.
bool exact_shrink_identity(const Rational& c0, int n_in, int m_out);

// Exact beta/upsilon row normalization: every row sums to exactly one.
bool exact_beta_rows_normalized(int n_in, int m_out);
bool exact_upsilon_rows_normalized(int n_in, int m_out);

// Spin-sector dimension checksum: sum_j d_j (2j+1) == 2^n, exact integers.
bool sector_dimension_checksum(int n);

}  // namespace mixcast::verification
