#pragma once

#include <vector>

#include "mixcast/kernels.hpp"
#include "mixcast/rational.hpp"
#include "mixcast/states.hpp"

namespace mixcast {

// rho^(tensor n) written as a weighted sum of phase-tagged projectors.
// Terms are stored as labels and materialized on demand; zero-weight terms
// are kept so the term count is always 2^n.
struct Decomposition {
    int n = 0;
    std::vector<std::pair<double, BasisLabel>> terms;

    double weight_sum() const;
};

struct ExactDecomposition {
    int n = 0;
    std::vector<std::pair<Rational, BasisLabel>> terms;

    Rational weight_sum() const;
};

// Weight of (n, m, alpha) is c0^(n-m) c1^m for every alpha. Term order is
// frozen: m ascending, alpha ascending.
Decomposition decompose_tensor_power(const MixedQubit& q, int n, int max_qubits = kDefaultMaxQubits);
ExactDecomposition decompose_tensor_power_exact(const Rational& c0, int n,
                                                int max_qubits = kDefaultMaxQubits);

// Dense sum of weighted projectors.
DensityOperator reconstruct(const Decomposition& d, int max_qubits = kDefaultMaxQubits);

// Exact reconstruction. Within each weight class the tag phases cancel by
// the root-of-unity geometric sum, so every entry of the rebuilt operator is
// rational: diagonal entries carry the class weight, off-diagonal entries
// vanish identically. The returned vector is the exact diagonal; off-diagonal
// cancellation is re-derived (not assumed) from the alpha-sum residues.
std::vector<Rational> reconstruct_exact(const ExactDecomposition& d);

// Checks <tag(n,m',a)| P_m |tag(n,m'',a')> = delta_{m'm} delta_{mm''}
// delta_{aa'} over all index triples, where P_m projects onto weight-m masks.
struct OrthogonalityReport {
    int n = 0;
    std::size_t checked_triples = 0;
    double max_violation = 0.0;
};

OrthogonalityReport orthogonality_audit(int n);
OrthogonalityReport orthogonality_audit_serial(int n);

}  // namespace mixcast
