#pragma once

#include <cstdint>
#include <vector>

namespace mixcast {

// One computational-basis configuration of n qubits. Bit convention: qubit 0
// sits at the most significant position of the n-bit mask, a set bit is a
// down spin. The mask therefore doubles as the amplitude index of the
// corresponding basis vector.
struct WeightConfig {
    int n_qubits = 0;
    std::uint64_t mask = 0;
    int weight = 0;  // popcount(mask), number of down spins
};

// Total-spin label with doubled entries so half-integer spins stay exact.
struct SpinLabel {
    int two_j = 0;
    int two_m = 0;

    // |two_m| <= two_j, matching parity, and two_j <= n when n is given.
    void validate(int n = -1) const;
};

// Exact C(n, k). Returns 0 outside [0, n]; throws std::overflow_error
// instead of wrapping when the result exceeds 64 bits.
std::uint64_t binomial(int n, int k);

// All C(n, m) masks of weight m, in strictly increasing mask order.
// The ordering is part of the phase-tagged basis definition and is frozen.
std::vector<WeightConfig> enumerate_weight_configs(int n, int m);

// Multiplicity d_j of the spin-j sector of n spin-1/2 systems:
// C(n, n/2 - j) - C(n, n/2 - j - 1), with two_j doubled.
std::uint64_t multiplicity_d(int n, int two_j);

}  // namespace mixcast
