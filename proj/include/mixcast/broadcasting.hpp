#pragma once

#include <cstdint>
#include <vector>

#include "mixcast/decomposition.hpp"
#include "mixcast/rational.hpp"
#include "mixcast/states.hpp"

namespace mixcast {

// Amplitudes beta_mk of the N->M broadcasting isometry, m in [0,N],
// k in [0,M-N]. Every row satisfies sum_k beta_mk^2 = 1.
class BetaTable {
public:
    BetaTable(int n_in, int m_out);

    int n_in() const { return n_in_; }
    int m_out() const { return m_out_; }
    int k_count() const { return m_out_ - n_in_ + 1; }
    double at(int m, int k) const;
    double row_square_sum(int m) const;

private:
    int n_in_;
    int m_out_;
    std::vector<double> values_;  // (N+1) x (M-N+1), row-major in m
};

// Exact squared amplitudes beta_mk^2 as rationals; same index ranges.
std::vector<std::vector<Rational>> beta_squared_exact(int n_in, int m_out);

// Normalization factors Upsilon_mk for the spin-labelled transformation
// variants; rows indexed by two_m in {-N, -N+2, ..., N}, k in [0,M-N].
class UpsilonTable {
public:
    UpsilonTable(int n_in, int m_out);

    int n_in() const { return n_in_; }
    int m_out() const { return m_out_; }
    int k_count() const { return m_out_ - n_in_ + 1; }
    int row_count() const { return n_in_ + 1; }
    double at(int two_m, int k) const;
    double row_square_sum(int two_m) const;

private:
    int n_in_;
    int m_out_;
    std::vector<double> values_;
};

std::vector<std::vector<Rational>> upsilon_squared_exact(int n_in, int m_out);

// Symbolic orthonormal ancilla label R carried by each branch: weight k and
// tag alpha of the (M-N)-qubit reference pattern. Labels are never
// materialized as vectors; distinct (k, alpha) pairs are orthogonal by
// construction.
struct AncillaLabel {
    int m_out = 0;
    int n_in = 0;
    int k = 0;
    std::uint64_t alpha = 0;

    bool operator==(const AncillaLabel&) const = default;
};

// One decohered branch of a broadcast output: an M-qubit pure state tagged
// with its ancilla label.
struct Branch {
    double probability = 0.0;
    BasisLabel state_label;  // phase-tagged output state, materialize on demand
    AncillaLabel ancilla;
};

struct BranchEnsemble {
    int m_out = 0;
    std::vector<Branch> branches;

    double probability_sum() const;
    // Dense 2^M mixture of the branch projectors.
    DensityOperator to_density(int max_qubits = kDefaultMaxQubits) const;
    // Weighted single-qubit marginal over all branches (brute force on the
    // branch state vectors).
    DensityOperator single_marginal(int keep) const;
};

enum class Variant { kTagPreserving, kSymmetrized };

// Applies the isometry to one phase-tagged input: branch k carries
// probability beta_mk^2, output tag alpha (preserved), ancilla (k, alpha).
BranchEnsemble broadcast_tagged(const BasisLabel& label, int m_out);

// The symmetrized-output variant: each k splits uniformly over all output
// tags alpha', with the ancilla tag matching alpha'.
BranchEnsemble broadcast_tagged_symmetrized(const BasisLabel& label, int m_out);

// Channel on rho^(tensor N): mixes the per-term ensembles with decomposition
// weights c0^(N-m) c1^m. Returned flattened; branch probabilities already
// include the term weights.
BranchEnsemble broadcast_density(const MixedQubit& q, int n_in, int m_out, Variant variant);

}  // namespace mixcast
