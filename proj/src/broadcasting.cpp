#include "mixcast/broadcasting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mixcast/errors.hpp"

namespace mixcast {

namespace {

// Coefficient tables are pure combinatorics with no state ceiling.
void check_table_pair(int n_in, int m_out) {
    if (n_in < 1) throw std::invalid_argument("broadcast: N must be positive");
    if (m_out < n_in) {
        throw std::invalid_argument("broadcast: M=" + std::to_string(m_out) +
                                    " must be at least N=" + std::to_string(n_in));
    }
}

void check_pair(int n_in, int m_out) {
    check_table_pair(n_in, m_out);
    if (m_out > kMaxStateQubits) {
        throw SizeLimitError("broadcast: M=" + std::to_string(m_out) + " exceeds the state ceiling " +
                             std::to_string(kMaxStateQubits));
    }
}

double lfact(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// log of beta_mk^2 from the factorial form; exact-rational route available
// via beta_squared_exact.
double beta_log_sq(int n, int m, int k, int m_out) {
    return lfact(m_out - n) + lfact(n + 1) - lfact(m_out + 1)        //
           + lfact(m_out - m - k) - lfact(n - m) - lfact(m_out - n - k)  //
           + lfact(m + k) - lfact(m) - lfact(k);
}

}  // namespace

BetaTable::BetaTable(int n_in, int m_out) : n_in_(n_in), m_out_(m_out) {
    check_table_pair(n_in, m_out);
    const int kc = k_count();
    values_.assign(static_cast<std::size_t>(n_in + 1) * kc, 0.0);
    for (int m = 0; m <= n_in; ++m) {
        for (int k = 0; k < kc; ++k) {
            values_[static_cast<std::size_t>(m) * kc + k] =
                std::exp(0.5 * beta_log_sq(n_in, m, k, m_out));
        }
        const double defect = std::abs(row_square_sum(m) - 1.0);
        if (defect > 1e-12) {
            throw std::logic_error("internal: beta row " + std::to_string(m) +
                                   " normalization defect " + std::to_string(defect));
        }
    }
}

double BetaTable::at(int m, int k) const {
    if (m < 0 || m > n_in_ || k < 0 || k >= k_count()) {
        throw std::out_of_range("BetaTable::at: index outside table");
    }
    return values_[static_cast<std::size_t>(m) * k_count() + k];
}

double BetaTable::row_square_sum(int m) const {
    double s = 0.0;
    for (int k = 0; k < k_count(); ++k) s += at(m, k) * at(m, k);
    return s;
}

std::vector<std::vector<Rational>> beta_squared_exact(int n_in, int m_out) {
    check_table_pair(n_in, m_out);
    std::vector<std::vector<Rational>> table(n_in + 1);
    const Rational prefactor = Rational::factorial(m_out - n_in) * Rational::factorial(n_in + 1) /
                               Rational::factorial(m_out + 1);
    for (int m = 0; m <= n_in; ++m) {
        table[m].reserve(m_out - n_in + 1);
        for (int k = 0; k <= m_out - n_in; ++k) {
            const Rational mid = Rational::factorial(m_out - m - k) /
                                 (Rational::factorial(n_in - m) * Rational::factorial(m_out - n_in - k));
            const Rational last =
                Rational::factorial(m + k) / (Rational::factorial(m) * Rational::factorial(k));
            table[m].push_back(prefactor * mid * last);
        }
    }
    return table;
}

UpsilonTable::UpsilonTable(int n_in, int m_out) : n_in_(n_in), m_out_(m_out) {
    check_table_pair(n_in, m_out);
    const int kc = k_count();
    values_.assign(static_cast<std::size_t>(n_in + 1) * kc, 0.0);
    for (int row = 0; row <= n_in; ++row) {
        const int two_m = -n_in + 2 * row;
        // (N/2 - m) and (N/2 + m) stay integral because two_m == N (mod 2).
        const int half_minus = (n_in - two_m) / 2;
        const int half_plus = (n_in + two_m) / 2;
        for (int k = 0; k < kc; ++k) {
            const double log_sq = lfact(m_out - n_in) + lfact(n_in + 1) - lfact(m_out + 1)  //
                                  + lfact(m_out - half_plus - k) - lfact(half_minus) -
                                  lfact(m_out - n_in - k)  //
                                  + lfact(half_plus + k) - lfact(half_plus) - lfact(k);
            values_[static_cast<std::size_t>(row) * kc + k] = std::exp(0.5 * log_sq);
        }
        const double defect = std::abs(row_square_sum(two_m) - 1.0);
        if (defect > 1e-12) {
            throw std::logic_error("internal: upsilon row two_m=" + std::to_string(two_m) +
                                   " normalization defect " + std::to_string(defect));
        }
    }
}

double UpsilonTable::at(int two_m, int k) const {
    if (std::abs(two_m) > n_in_ || ((two_m + n_in_) % 2) != 0 || k < 0 || k >= k_count()) {
        throw std::out_of_range("UpsilonTable::at: index outside table");
    }
    const int row = (two_m + n_in_) / 2;
    return values_[static_cast<std::size_t>(row) * k_count() + k];
}

double UpsilonTable::row_square_sum(int two_m) const {
    double s = 0.0;
    for (int k = 0; k < k_count(); ++k) s += at(two_m, k) * at(two_m, k);
    return s;
}

std::vector<std::vector<Rational>> upsilon_squared_exact(int n_in, int m_out) {
    check_table_pair(n_in, m_out);
    std::vector<std::vector<Rational>> table(n_in + 1);
    const Rational prefactor = Rational::factorial(m_out - n_in) * Rational::factorial(n_in + 1) /
                               Rational::factorial(m_out + 1);
    for (int row = 0; row <= n_in; ++row) {
        const int two_m = -n_in + 2 * row;
        const int half_minus = (n_in - two_m) / 2;
        const int half_plus = (n_in + two_m) / 2;
        table[row].reserve(m_out - n_in + 1);
        for (int k = 0; k <= m_out - n_in; ++k) {
            const Rational mid =
                Rational::factorial(m_out - half_plus - k) /
                (Rational::factorial(half_minus) * Rational::factorial(m_out - n_in - k));
            const Rational last = Rational::factorial(half_plus + k) /
                                  (Rational::factorial(half_plus) * Rational::factorial(k));
            table[row].push_back(prefactor * mid * last);
        }
    }
    return table;
}

double BranchEnsemble::probability_sum() const {
    double s = 0.0;
    for (const Branch& b : branches) s += b.probability;
    return s;
}

DensityOperator BranchEnsemble::to_density(int max_qubits) const {
    if (m_out > max_qubits) {
        throw SizeLimitError("BranchEnsemble::to_density: M=" + std::to_string(m_out) +
                             " exceeds ceiling " + std::to_string(max_qubits));
    }
    std::vector<double> weights;
    std::vector<PureState> states;
    weights.reserve(branches.size());
    states.reserve(branches.size());
    for (const Branch& b : branches) {
        weights.push_back(b.probability);
        states.push_back(phase_tagged_state(b.state_label));
    }
    return kernels::mixture_density(weights, states);
}

DensityOperator BranchEnsemble::single_marginal(int keep) const {
    std::vector<double> weights;
    std::vector<PureState> states;
    weights.reserve(branches.size());
    states.reserve(branches.size());
    for (const Branch& b : branches) {
        weights.push_back(b.probability);
        states.push_back(phase_tagged_state(b.state_label));
    }
    return kernels::ensemble_marginal(weights, states, keep);
}

BranchEnsemble broadcast_tagged(const BasisLabel& label, int m_out) {
    label.validate();
    check_pair(label.n, m_out);
    const BetaTable beta(label.n, m_out);

    BranchEnsemble out{m_out, {}};
    out.branches.reserve(beta.k_count());
    for (int k = 0; k < beta.k_count(); ++k) {
        const double b = beta.at(label.m, k);
        // The output tag reuses the input tag: alpha < C(N,m) <= C(M,m+k)
        // for every k in range, so the label stays valid (the canonical
        // embedding of input tags into the larger output tag space).
        Branch branch{b * b, BasisLabel{m_out, label.m + k, label.alpha},
                      AncillaLabel{m_out, label.n, k, label.alpha}};
        out.branches.push_back(branch);
    }
    return out;
}

BranchEnsemble broadcast_tagged_symmetrized(const BasisLabel& label, int m_out) {
    label.validate();
    check_pair(label.n, m_out);
    const BetaTable beta(label.n, m_out);

    BranchEnsemble out{m_out, {}};
    for (int k = 0; k < beta.k_count(); ++k) {
        const double b = beta.at(label.m, k);
        const std::uint64_t tags = binomial(m_out, label.m + k);
        // Uniform split over output tags; the ancilla tag tracks the output
        // tag, so distinct alpha' branches decohere after the ancilla trace.
        const double p = b * b / static_cast<double>(tags);
        for (std::uint64_t alpha_out = 0; alpha_out < tags; ++alpha_out) {
            out.branches.push_back({p, BasisLabel{m_out, label.m + k, alpha_out},
                                    AncillaLabel{m_out, label.n, k, alpha_out}});
        }
    }
    return out;
}

BranchEnsemble broadcast_density(const MixedQubit& q, int n_in, int m_out, Variant variant) {
    check_pair(n_in, m_out);
    const Decomposition dec = decompose_tensor_power(q, n_in, kMaxStateQubits);

    BranchEnsemble out{m_out, {}};
    for (const auto& [weight, label] : dec.terms) {
        const BranchEnsemble per_term = (variant == Variant::kTagPreserving)
                                            ? broadcast_tagged(label, m_out)
                                            : broadcast_tagged_symmetrized(label, m_out);
        for (const Branch& b : per_term.branches) {
            out.branches.push_back({weight * b.probability, b.state_label, b.ancilla});
        }
    }
    return out;
}

}  // namespace mixcast
