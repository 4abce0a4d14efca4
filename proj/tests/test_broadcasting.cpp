#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "mixcast/broadcasting.hpp"
#include "mixcast/errors.hpp"
#include "mixcast/verification.hpp"

using namespace mixcast;

namespace {

constexpr double kTol = 1e-12;

// Independent oracle: the amplitude formula evaluated with plain double
// factorials, no log-gamma and no rationals.
double beta_ref(int n, int m_out, int m, int k) {
    auto fact = [](int v) {
        double f = 1.0;
        for (int i = 2; i <= v; ++i) f *= i;
        return f;
    };
    return std::sqrt(fact(m_out - n) * fact(n + 1) / fact(m_out + 1)) *
           std::sqrt(fact(m_out - m - k) / (fact(n - m) * fact(m_out - n - k))) *
           std::sqrt(fact(m + k) / (fact(m) * fact(k)));
}

}  // namespace

TEST_CASE("beta_table: worked values and the factorial oracle") {
    // Identity case: a single k column of ones.
    for (int n : {1, 3, 7}) {
        const BetaTable identity(n, n);
        REQUIRE(identity.k_count() == 1);
        for (int m = 0; m <= n; ++m) CHECK(identity.at(m, 0) == 1.0);
    }

    const BetaTable b34(3, 4);
    CHECK(std::abs(b34.at(0, 0) - 2.0 / std::sqrt(5.0)) < kTol);
    CHECK(std::abs(b34.at(0, 1) - 1.0 / std::sqrt(5.0)) < kTol);

    const BetaTable b12(1, 2);
    CHECK(std::abs(b12.at(0, 0) - std::sqrt(2.0 / 3.0)) < kTol);
    CHECK(std::abs(b12.at(0, 1) - std::sqrt(1.0 / 3.0)) < kTol);

    for (int n = 1; n <= 6; ++n) {
        for (int m_out = n; m_out <= 10; ++m_out) {
            const BetaTable table(n, m_out);
            for (int m = 0; m <= n; ++m) {
                CHECK(std::abs(table.row_square_sum(m) - 1.0) < kTol);
                for (int k = 0; k < table.k_count(); ++k) {
                    CHECK(std::abs(table.at(m, k) - beta_ref(n, m_out, m, k)) < kTol);
                    CHECK(table.at(m, k) >= 0.0);
                }
            }
        }
    }

    CHECK_THROWS_AS((void)BetaTable(3, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)BetaTable(3, 4).at(4, 0), std::out_of_range);
}

TEST_CASE("beta squared rows sum to one exactly, up to M = 30") {
    for (int n = 1; n <= 5; ++n) {
        for (int m_out : {n, n + 1, n + 4, 16, 30}) {
            if (m_out < n) continue;
            CHECK(verification::exact_beta_rows_normalized(n, m_out));
        }
    }
    // Squared entries match the floating table.
    const auto sq = beta_squared_exact(3, 7);
    const BetaTable table(3, 7);
    for (int m = 0; m <= 3; ++m) {
        for (int k = 0; k < table.k_count(); ++k) {
            CHECK(std::abs(sq[m][k].to_double() - table.at(m, k) * table.at(m, k)) < kTol);
        }
    }
}

TEST_CASE("broadcast_tagged: branch structure, worked cases") {
    // Symmetric input goes to symmetric outputs with beta_0k^2 weights.
    const int m_out = 6;
    const BranchEnsemble sym = broadcast_tagged({4, 0, 0}, m_out);
    const BetaTable table(4, m_out);
    REQUIRE(sym.branches.size() == static_cast<std::size_t>(table.k_count()));
    for (int k = 0; k < table.k_count(); ++k) {
        const Branch& b = sym.branches[k];
        CHECK(b.state_label == BasisLabel{m_out, k, 0});
        CHECK(b.ancilla.k == k);
        CHECK(std::abs(b.probability - table.at(0, k) * table.at(0, k)) < kTol);
    }
    CHECK(std::abs(sym.probability_sum() - 1.0) < kTol);

    // Tag preservation: output and ancilla both keep the input tag.
    const BranchEnsemble tagged = broadcast_tagged({3, 1, 1}, 5);
    for (const Branch& b : tagged.branches) {
        CHECK(b.state_label.alpha == 1);
        CHECK(b.ancilla.alpha == 1);
        CHECK(b.state_label.m == 1 + b.ancilla.k);
    }

    // N = M reproduces the input exactly.
    const BranchEnsemble id = broadcast_tagged({4, 2, 3}, 4);
    REQUIRE(id.branches.size() == 1);
    CHECK(id.branches[0].probability == 1.0);
    CHECK(id.branches[0].state_label == BasisLabel{4, 2, 3});
}

TEST_CASE("three-to-M worked case: all eight inputs, branch by branch") {
    // The full three-qubit family: one symmetric input per weight plus the
    // tagged pairs at m = 1, 2. Every input maps through the beta row of its
    // weight class with the subscript carried unchanged.
    const int m_out = 5;
    const BetaTable table(3, m_out);
    for (int m = 0; m <= 3; ++m) {
        for (std::uint64_t alpha = 0; alpha < binomial(3, m); ++alpha) {
            const BranchEnsemble out = broadcast_tagged({3, m, alpha}, m_out);
            REQUIRE(out.branches.size() == static_cast<std::size_t>(table.k_count()));
            for (int k = 0; k < table.k_count(); ++k) {
                const Branch& b = out.branches[k];
                CHECK(std::abs(b.probability - table.at(m, k) * table.at(m, k)) < kTol);
                CHECK(b.state_label == BasisLabel{m_out, m + k, alpha});
                CHECK(b.ancilla == AncillaLabel{m_out, 3, k, alpha});
            }
        }
    }
    // Branch states of fixed k are mutually orthogonal across tags, which is
    // what lets the tagged families decohere after the ancilla trace.
    const PureState s0 = phase_tagged_state({m_out, 2, 0});
    const PureState s1 = phase_tagged_state({m_out, 2, 1});
    const PureState s2 = phase_tagged_state({m_out, 2, 2});
    CHECK(std::abs(inner_product(s0, s1)) < kTol);
    CHECK(std::abs(inner_product(s1, s2)) < kTol);
}

TEST_CASE("tag embedding stays valid for every label and branch") {
    // alpha < C(N,m) <= C(M,m+k) for all k in range; materializing each
    // branch state exercises the label validation.
    for (int n = 1; n <= 5; ++n) {
        for (int m_out = n; m_out <= 9; ++m_out) {
            for (int m = 0; m <= n; ++m) {
                for (std::uint64_t alpha = 0; alpha < binomial(n, m); ++alpha) {
                    const BranchEnsemble out = broadcast_tagged({n, m, alpha}, m_out);
                    for (const Branch& b : out.branches) {
                        CHECK(binomial(n, m) <= binomial(m_out, b.state_label.m));
                        CHECK_NOTHROW((void)phase_tagged_state(b.state_label));
                    }
                }
            }
        }
    }
}

TEST_CASE("isometry: full output vectors stay orthonormal (spot sizes)") {
    for (auto [n, m_out] : {std::pair{2, 5}, {3, 6}, {4, 7}}) {
        CHECK(verification::isometry_gram_deviation(n, m_out) < kTol);
    }
}

TEST_CASE("isometry preserves the norm of random superpositions") {
    // Hand-rolled generator: random coefficients over the tagged basis, the
    // full output assembled with an explicit ancilla dimension.
    const int n = 3, m_out = 6;
    const BetaTable beta(n, m_out);
    std::mt19937 rng(20240817);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::uint64_t max_tags = 0;
    for (int m = 0; m <= n; ++m) max_tags = std::max(max_tags, binomial(n, m));
    const std::size_t ancilla_dim = static_cast<std::size_t>(beta.k_count()) * max_tags;
    const std::size_t out_dim = std::size_t{1} << m_out;

    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cplx> out(out_dim * ancilla_dim, cplx{0.0, 0.0});
        double in_norm_sq = 0.0;
        for (int m = 0; m <= n; ++m) {
            for (std::uint64_t alpha = 0; alpha < binomial(n, m); ++alpha) {
                const cplx coeff{gauss(rng), gauss(rng)};
                in_norm_sq += std::norm(coeff);
                for (int k = 0; k < beta.k_count(); ++k) {
                    const PureState tagged = phase_tagged_state({m_out, m + k, alpha});
                    const std::size_t a = static_cast<std::size_t>(k) * max_tags + alpha;
                    const cplx scale = coeff * beta.at(m, k);
                    for (std::size_t x = 0; x < out_dim; ++x) {
                        out[x * ancilla_dim + a] += scale * tagged.amplitudes[x];
                    }
                }
            }
        }
        double out_norm_sq = 0.0;
        for (const cplx& v : out) out_norm_sq += std::norm(v);
        CHECK(std::abs(out_norm_sq - in_norm_sq) < kTol * in_norm_sq);
    }
}

TEST_CASE("broadcast_tagged_symmetrized: uniform tag split per k") {
    const int n = 3, m_out = 5;
    const BranchEnsemble out = broadcast_tagged_symmetrized({n, 1, 2}, m_out);
    const BetaTable table(n, m_out);

    std::map<int, double> per_k_total;
    std::map<int, int> per_k_count;
    for (const Branch& b : out.branches) {
        per_k_total[b.ancilla.k] += b.probability;
        per_k_count[b.ancilla.k] += 1;
        // Ancilla tag tracks the output tag.
        CHECK(b.ancilla.alpha == b.state_label.alpha);
    }
    for (int k = 0; k < table.k_count(); ++k) {
        CHECK(per_k_count[k] == static_cast<int>(binomial(m_out, 1 + k)));
        CHECK(std::abs(per_k_total[k] - table.at(1, k) * table.at(1, k)) < kTol);
        // Uniform split within the k branch.
        const double expected = table.at(1, k) * table.at(1, k) / binomial(m_out, 1 + k);
        for (const Branch& b : out.branches) {
            if (b.ancilla.k == k) CHECK(std::abs(b.probability - expected) < kTol);
        }
    }
    CHECK(std::abs(out.probability_sum() - 1.0) < kTol);

    // N = M: only the k = 0 branch family survives and marginals match the
    // input's, though the state is spread over all tags of its weight.
    const BranchEnsemble id = broadcast_tagged_symmetrized({3, 1, 0}, 3);
    for (const Branch& b : id.branches) CHECK(b.ancilla.k == 0);
    CHECK(std::abs(id.probability_sum() - 1.0) < kTol);
    const DensityOperator marg = id.single_marginal(0);
    const auto [up, down] = marginal_of_tagged(3, 1);
    CHECK(std::abs(marg.matrix[0] - cplx{up, 0.0}) < kTol);
    CHECK(std::abs(marg.matrix[3] - cplx{down, 0.0}) < kTol);
}

TEST_CASE("variants produce identical single-qubit marginals (N <= 4, M <= 7)") {
    for (int n = 1; n <= 4; ++n) {
        for (int m_out = n; m_out <= 7; ++m_out) {
            CHECK(verification::variant_marginal_gap(n, m_out, {0.0, 0.25, 0.5, 0.75, 1.0}) < kTol);
        }
    }
}

TEST_CASE("broadcast_density: channel structure") {
    // Pure up input: only the m = 0 family contributes.
    const BranchEnsemble pure = broadcast_density(MixedQubit(1.0), 3, 5, Variant::kTagPreserving);
    const BetaTable table(3, 5);
    double total = 0.0;
    for (const Branch& b : pure.branches) {
        if (b.probability == 0.0) continue;
        const int input_m = b.state_label.m - b.ancilla.k;
        CHECK(input_m == 0);
        CHECK(b.state_label.alpha == 0);
        total += b.probability;
        CHECK(std::abs(b.probability - table.at(0, b.ancilla.k) * table.at(0, b.ancilla.k)) < kTol);
    }
    CHECK(std::abs(total - 1.0) < kTol);

    // Identity channel on the maximally mixed state.
    const DensityOperator mixed =
        broadcast_density(MixedQubit(0.5), 2, 2, Variant::kTagPreserving).single_marginal(0);
    CHECK(std::abs(mixed.matrix[0] - cplx{0.5, 0.0}) < kTol);
    CHECK(std::abs(mixed.matrix[3] - cplx{0.5, 0.0}) < kTol);
    CHECK(std::abs(mixed.matrix[1]) < kTol);

    CHECK_THROWS_AS((void)broadcast_density(MixedQubit(0.5), 3, 2, Variant::kTagPreserving),
                    std::invalid_argument);
}

TEST_CASE("dense channel output equals the enumerated output-ancilla oracle") {
    for (int n = 1; n <= 4; ++n) {
        for (int m_out = n; m_out <= 7; ++m_out) {
            CHECK(verification::channel_consistency_deviation(MixedQubit(0.7), n, m_out) < kTol);
        }
    }
    CHECK(verification::channel_consistency_deviation(MixedQubit(0.0), 2, 5) < kTol);
    CHECK(verification::channel_consistency_deviation(MixedQubit(1.0), 3, 6) < kTol);
}

TEST_CASE("every output copy carries the same marginal") {
    for (auto [n, m_out] : {std::pair{2, 5}, {3, 6}}) {
        const BranchEnsemble ensemble =
            broadcast_density(MixedQubit(0.65), n, m_out, Variant::kTagPreserving);
        const DensityOperator first = ensemble.single_marginal(0);
        for (int keep = 1; keep < m_out; ++keep) {
            const DensityOperator other = ensemble.single_marginal(keep);
            for (int e = 0; e < 4; ++e) {
                CHECK(std::abs(first.matrix[e] - other.matrix[e]) < kTol);
            }
        }
    }
}

TEST_CASE("channel outputs satisfy the density-operator invariants") {
    for (double c0 : {0.0, 0.35, 1.0}) {
        const BranchEnsemble ensemble =
            broadcast_density(MixedQubit(c0), 3, 6, Variant::kTagPreserving);
        const DensityOperator rho = ensemble.to_density();
        CHECK(rho.hermiticity_defect() < 1e-12);
        CHECK(std::abs(rho.trace() - cplx{1.0, 0.0}) < 1e-12);
        for (std::size_t i = 0; i < rho.dim(); ++i) {
            CHECK(rho.at(i, i).real() >= -1e-10);  // necessary for positivity
        }
        // The one-qubit marginal's eigenvalues are available in closed form.
        const DensityOperator marg = ensemble.single_marginal(0);
        const double tr = marg.matrix[0].real() + marg.matrix[3].real();
        const double det = (marg.matrix[0] * marg.matrix[3] - marg.matrix[1] * marg.matrix[2]).real();
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
        CHECK((tr - disc) / 2.0 >= -1e-10);
        CHECK((tr + disc) / 2.0 <= 1.0 + 1e-10);
    }
}

TEST_CASE("upsilon_table: trivial value, row sums, reduction to beta") {
    const UpsilonTable trivial(2, 2);
    CHECK(trivial.at(2, 0) == 1.0);  // stretched row, single column

    const UpsilonTable u24(2, 4);
    for (int two_m = -2; two_m <= 2; two_m += 2) {
        CHECK(std::abs(u24.row_square_sum(two_m) - 1.0) < kTol);
    }

    // Row two_m corresponds to the beta row m' = (N + two_m)/2.
    for (int n = 1; n <= 8; ++n) {
        for (int m_out = n; m_out <= 8; ++m_out) {
            const UpsilonTable upsilon(n, m_out);
            const BetaTable beta(n, m_out);
            for (int two_m = -n; two_m <= n; two_m += 2) {
                const int beta_row = (n + two_m) / 2;
                for (int k = 0; k < beta.k_count(); ++k) {
                    CHECK(std::abs(upsilon.at(two_m, k) - beta.at(beta_row, k)) < kTol);
                }
            }
        }
    }

    // Exact row normalization across the acceptance domain.
    for (int n = 1; n <= 8; ++n) {
        CHECK(verification::exact_upsilon_rows_normalized(n, 16));
    }
    CHECK_THROWS_AS((void)UpsilonTable(2, 4).at(1, 0), std::out_of_range);  // parity
}
