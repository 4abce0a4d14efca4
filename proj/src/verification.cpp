#include "mixcast/verification.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "mixcast/kernels.hpp"

namespace mixcast::verification {

namespace {

std::vector<BasisLabel> all_labels(int n) {
    std::vector<BasisLabel> labels;
    labels.reserve(std::size_t{1} << n);
    for (int m = 0; m <= n; ++m) {
        for (std::uint64_t alpha = 0; alpha < binomial(n, m); ++alpha) {
            labels.push_back({n, m, alpha});
        }
    }
    return labels;
}

double max_entry_gap(const DensityOperator& a, const DensityOperator& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.matrix.size(); ++i) {
        worst = std::max(worst, std::abs(a.matrix[i] - b.matrix[i]));
    }
    return worst;
}

}  // namespace

double tagged_gram_deviation(int n) {
    const auto labels = all_labels(n);
    std::vector<PureState> states;
    states.reserve(labels.size());
    for (const auto& label : labels) states.push_back(phase_tagged_state(label));
    const auto gram = kernels::gram_matrix(states);
    return kernels::max_identity_deviation(gram, states.size());
}

double reconstruction_deviation(int n, const std::vector<double>& c0_grid) {
    double worst = 0.0;
    for (double c0 : c0_grid) {
        const MixedQubit q(c0);
        const DensityOperator direct = tensor_power(q, n);
        const DensityOperator rebuilt = reconstruct(decompose_tensor_power(q, n));
        worst = std::max(worst, frobenius_distance(direct, rebuilt));
    }
    return worst;
}

bool exact_reconstruction_identity(const Rational& c0, int n) {
    const auto direct = tensor_power_exact(c0, n);
    const auto rebuilt = reconstruct_exact(decompose_tensor_power_exact(c0, n));
    if (direct.size() != rebuilt.size()) return false;
    for (std::size_t i = 0; i < direct.size(); ++i) {
        if (direct[i] != rebuilt[i]) return false;
    }
    return true;
}

double isometry_gram_deviation(int n_in, int m_out) {
    const BetaTable beta(n_in, m_out);
    const auto labels = all_labels(n_in);

    // Explicit ancilla dimension: index (k, alpha) densely.
    std::uint64_t max_tags = 0;
    for (int m = 0; m <= n_in; ++m) max_tags = std::max(max_tags, binomial(n_in, m));
    const std::size_t ancilla_dim = static_cast<std::size_t>(beta.k_count()) * max_tags;
    const std::size_t out_dim = std::size_t{1} << m_out;
    const std::size_t full_dim = out_dim * ancilla_dim;

    std::vector<std::vector<cplx>> full(labels.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(labels.size()); ++i) {
        const BasisLabel& label = labels[i];
        std::vector<cplx> vec(full_dim, cplx{0.0, 0.0});
        for (int k = 0; k < beta.k_count(); ++k) {
            const PureState out_state = phase_tagged_state({m_out, label.m + k, label.alpha});
            const std::size_t a = static_cast<std::size_t>(k) * max_tags + label.alpha;
            const double b = beta.at(label.m, k);
            for (std::size_t x = 0; x < out_dim; ++x) {
                vec[x * ancilla_dim + a] = b * out_state.amplitudes[x];
            }
        }
        full[i] = std::move(vec);
    }

    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(labels.size()); ++i) {
        for (std::size_t j = 0; j < labels.size(); ++j) {
            cplx g = 0.0;
            for (std::size_t e = 0; e < full_dim; ++e) {
                g += std::conj(full[i][e]) * full[j][e];
            }
            const cplx expect = (static_cast<std::size_t>(i) == j) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            worst = std::max(worst, std::abs(g - expect));
        }
    }
    return worst;
}

double marginal_alpha_independence_deviation(int n) {
    const auto labels = all_labels(n);
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(labels.size()); ++i) {
        const PureState state = phase_tagged_state(labels[i]);
        const auto [up, down] = marginal_of_tagged(n, labels[i].m);
        for (int keep = 0; keep < n; ++keep) {
            const DensityOperator reduced = partial_trace_to_single(state, keep);
            double dev = std::abs(reduced.matrix[0] - cplx{up, 0.0});
            dev = std::max(dev, std::abs(reduced.matrix[3] - cplx{down, 0.0}));
            dev = std::max(dev, std::abs(reduced.matrix[1]));
            dev = std::max(dev, std::abs(reduced.matrix[2]));
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

double variant_marginal_gap(int n_in, int m_out, const std::vector<double>& c0_grid) {
    double worst = 0.0;
    for (const BasisLabel& label : all_labels(n_in)) {
        const DensityOperator a = broadcast_tagged(label, m_out).single_marginal(0);
        const DensityOperator b = broadcast_tagged_symmetrized(label, m_out).single_marginal(0);
        worst = std::max(worst, max_entry_gap(a, b));
    }
    for (double c0 : c0_grid) {
        const MixedQubit q(c0);
        const DensityOperator a =
            broadcast_density(q, n_in, m_out, Variant::kTagPreserving).single_marginal(0);
        const DensityOperator b =
            broadcast_density(q, n_in, m_out, Variant::kSymmetrized).single_marginal(0);
        worst = std::max(worst, max_entry_gap(a, b));
    }
    return worst;
}

double channel_consistency_deviation(const MixedQubit& q, int n_in, int m_out) {
    const DensityOperator ensemble_route =
        broadcast_density(q, n_in, m_out, Variant::kTagPreserving).to_density();

    // Independent route: materialize each full output vector with an explicit
    // ancilla index, form the projector, and trace the ancilla numerically.
    const BetaTable beta(n_in, m_out);
    std::uint64_t max_tags = 0;
    for (int m = 0; m <= n_in; ++m) max_tags = std::max(max_tags, binomial(n_in, m));
    const std::size_t ancilla_dim = static_cast<std::size_t>(beta.k_count()) * max_tags;
    const std::size_t out_dim = std::size_t{1} << m_out;

    DensityOperator traced{m_out, std::vector<cplx>(out_dim * out_dim, cplx{0.0, 0.0})};
    const Decomposition dec = decompose_tensor_power(q, n_in, kMaxStateQubits);
    for (const auto& [weight, label] : dec.terms) {
        if (weight == 0.0) continue;
        std::vector<cplx> vec(out_dim * ancilla_dim, cplx{0.0, 0.0});
        for (int k = 0; k < beta.k_count(); ++k) {
            const PureState out_state = phase_tagged_state({m_out, label.m + k, label.alpha});
            const std::size_t a = static_cast<std::size_t>(k) * max_tags + label.alpha;
            for (std::size_t x = 0; x < out_dim; ++x) {
                vec[x * ancilla_dim + a] = beta.at(label.m, k) * out_state.amplitudes[x];
            }
        }
#pragma omp parallel for schedule(static)
        for (std::int64_t x = 0; x < static_cast<std::int64_t>(out_dim); ++x) {
            for (std::size_t y = 0; y < out_dim; ++y) {
                cplx s = 0.0;
                for (std::size_t a = 0; a < ancilla_dim; ++a) {
                    s += vec[x * ancilla_dim + a] * std::conj(vec[y * ancilla_dim + a]);
                }
                traced.matrix[x * out_dim + y] += weight * s;
            }
        }
    }
    return frobenius_distance(ensemble_route, traced);
}

namespace {

// beta_mk^2 rows of the 2j -> M pure-state cloner, exact; n_in may be zero
// (the empty-input row is uniform over k).
std::vector<Rational> cloner_beta_sq_row(int two_j, int row_m, int m_out) {
    const int n = two_j;
    std::vector<Rational> out;
    const Rational prefactor = Rational::factorial(m_out - n) * Rational::factorial(n + 1) /
                               Rational::factorial(m_out + 1);
    for (int k = 0; k <= m_out - n; ++k) {
        const Rational mid = Rational::factorial(m_out - row_m - k) /
                             (Rational::factorial(n - row_m) * Rational::factorial(m_out - n - k));
        const Rational last =
            Rational::factorial(row_m + k) / (Rational::factorial(row_m) * Rational::factorial(k));
        out.push_back(prefactor * mid * last);
    }
    return out;
}

Rational triple_sum_r_pp(const Rational& r, int n_in, int m_out) {
    const Rational half(1, 2);
    const Rational c0 = (Rational(1) + r) * half;
    const Rational c1 = (Rational(1) - r) * half;

    Rational r_pp(0);
    for (int two_j = n_in % 2; two_j <= n_in; two_j += 2) {
        if (m_out < two_j) {
            throw std::invalid_argument("superbroadcast triple sum: M must reach every 2j sector");
        }
        const Rational dj(static_cast<std::int64_t>(multiplicity_d(n_in, two_j)));
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
            const Rational weight = c0.pow((n_in - two_m) / 2) * c1.pow((n_in + two_m) / 2);
            const int row_m = (two_j + two_m) / 2;  // j + m downs in the kept sector
            const auto beta_sq = cloner_beta_sq_row(two_j, row_m, m_out);
            Rational inner(0);
            for (int k = 0; k <= m_out - two_j; ++k) {
                // (M - 2(j+m+k)) / M
                inner += beta_sq[k] * Rational(m_out - 2 * (row_m + k), m_out);
            }
            r_pp += weight * dj * inner;
        }
    }
    return r_pp;
}

}  // namespace

Rational superbroadcast_eta_triple_sum_exact(const Rational& r, int n_in, int m_out) {
    if (r.is_zero()) throw std::invalid_argument("superbroadcast triple sum: r must be nonzero");
    return triple_sum_r_pp(r, n_in, m_out) / r;
}

double superbroadcast_eta_triple_sum(double r, int n_in, int m_out) {
    const double c0 = (1.0 + r) / 2.0;
    const double c1 = (1.0 - r) / 2.0;
    double r_pp = 0.0;
    for (int two_j = n_in % 2; two_j <= n_in; two_j += 2) {
        const double dj = static_cast<double>(multiplicity_d(n_in, two_j));
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
            const double weight = std::pow(c0, (n_in - two_m) / 2) * std::pow(c1, (n_in + two_m) / 2);
            const int row_m = (two_j + two_m) / 2;
            const auto beta_sq = cloner_beta_sq_row(two_j, row_m, m_out);
            double inner = 0.0;
            for (int k = 0; k <= m_out - two_j; ++k) {
                inner += beta_sq[k].to_double() *
                         (static_cast<double>(m_out - 2 * (row_m + k)) / m_out);
            }
            r_pp += weight * dj * inner;
        }
    }
    return r_pp / r;
}

bool exact_shrink_identity(const Rational& c0, int n_in, int m_out) {
    const Rational c1 = Rational(1) - c0;
    const auto beta_sq = beta_squared_exact(n_in, m_out);

    // Diagonal of the single-qubit output: each decomposition class (m, any
    // alpha) contributes C(N,m) branches with weight c0^(N-m) c1^m and
    // closed-form marginal ((M-m-k)/M, (m+k)/M).
    Rational out00(0);
    for (int m = 0; m <= n_in; ++m) {
        const Rational weight = c0.pow(n_in - m) * c1.pow(m);
        const Rational tags(static_cast<std::int64_t>(binomial(n_in, m)));
        Rational inner(0);
        for (int k = 0; k <= m_out - n_in; ++k) {
            inner += beta_sq[m][k] * Rational(m_out - m - k, m_out);
        }
        out00 += weight * tags * inner;
    }

    const Rational r = c0 - c1;
    const Rational eta = optimal_eta_exact(n_in, m_out);
    // out00 must equal eta*c0 + (1-eta)/2 whether or not r vanishes.
    const Rational expected = eta * c0 + (Rational(1) - eta) * Rational(1, 2);
    if (out00 != expected) return false;
    if (!r.is_zero()) {
        const Rational eta_extracted = (Rational(2) * out00 - Rational(1)) / r;
        return eta_extracted == eta;
    }
    return true;
}

bool exact_beta_rows_normalized(int n_in, int m_out) {
    for (const auto& row : beta_squared_exact(n_in, m_out)) {
        Rational s(0);
        for (const Rational& v : row) s += v;
        if (!s.is_one()) return false;
    }
    return true;
}

bool exact_upsilon_rows_normalized(int n_in, int m_out) {
    for (const auto& row : upsilon_squared_exact(n_in, m_out)) {
        Rational s(0);
        for (const Rational& v : row) s += v;
        if (!s.is_one()) return false;
    }
    return true;
}

bool sector_dimension_checksum(int n) {
    unsigned __int128 total = 0;
    for (int two_j = n % 2; two_j <= n; two_j += 2) {
        total += static_cast<unsigned __int128>(multiplicity_d(n, two_j)) *
                 static_cast<unsigned __int128>(two_j + 1);
    }
    return total == (static_cast<unsigned __int128>(1) << n);
}

}  // namespace mixcast::verification
