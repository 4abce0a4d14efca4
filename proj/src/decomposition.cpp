#include "mixcast/decomposition.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "mixcast/errors.hpp"

namespace mixcast {

double Decomposition::weight_sum() const {
    double s = 0.0;
    for (const auto& [w, label] : terms) s += w;
    return s;
}

Rational ExactDecomposition::weight_sum() const {
    Rational s(0);
    for (const auto& [w, label] : terms) s += w;
    return s;
}

namespace {
void check_size(int n, int max_qubits) {
    if (n < 1) throw std::invalid_argument("decompose: n must be positive");
    if (n > max_qubits) {
        throw SizeLimitError("decompose: n=" + std::to_string(n) + " exceeds ceiling " +
                             std::to_string(max_qubits));
    }
}
}  // namespace

Decomposition decompose_tensor_power(const MixedQubit& q, int n, int max_qubits) {
    check_size(n, max_qubits);
    Decomposition d{n, {}};
    d.terms.reserve(std::size_t{1} << n);
    for (int m = 0; m <= n; ++m) {
        const double weight = std::pow(q.c0, n - m) * std::pow(q.c1(), m);
        const std::uint64_t count = binomial(n, m);
        for (std::uint64_t alpha = 0; alpha < count; ++alpha) {
            d.terms.emplace_back(weight, BasisLabel{n, m, alpha});
        }
    }
    return d;
}

ExactDecomposition decompose_tensor_power_exact(const Rational& c0, int n, int max_qubits) {
    check_size(n, max_qubits);
    const Rational c1 = Rational(1) - c0;
    ExactDecomposition d{n, {}};
    d.terms.reserve(std::size_t{1} << n);
    for (int m = 0; m <= n; ++m) {
        const Rational weight = c0.pow(n - m) * c1.pow(m);
        const std::uint64_t count = binomial(n, m);
        for (std::uint64_t alpha = 0; alpha < count; ++alpha) {
            d.terms.emplace_back(weight, BasisLabel{n, m, alpha});
        }
    }
    return d;
}

DensityOperator reconstruct(const Decomposition& d, int max_qubits) {
    check_size(d.n, max_qubits);
    std::vector<double> weights;
    std::vector<PureState> states;
    weights.reserve(d.terms.size());
    states.reserve(d.terms.size());
    for (const auto& [w, label] : d.terms) {
        weights.push_back(w);
        states.push_back(phase_tagged_state(label));
    }
    return kernels::mixture_density(weights, states);
}

std::vector<Rational> reconstruct_exact(const ExactDecomposition& d) {
    const std::size_t dim = std::size_t{1} << d.n;
    std::vector<Rational> diag(dim, Rational(0));

    // Group terms by weight class m. Within a class with C = C(n,m) masks,
    // entry (j, j') of the alpha-summed projector is
    //   weight/C * sum_alpha omega^{alpha (j - j')},  omega = exp(2 pi i / C),
    // which is weight when j == j' and zero otherwise because |j - j'| < C.
    // The residue test below evaluates that geometric sum exactly.
    for (int m = 0; m <= d.n; ++m) {
        const auto configs = enumerate_weight_configs(d.n, m);
        const std::int64_t count = static_cast<std::int64_t>(configs.size());
        Rational class_weight(0);
        std::uint64_t class_terms = 0;
        for (const auto& [w, label] : d.terms) {
            if (label.m == m) {
                class_weight += w;
                ++class_terms;
            }
        }
        if (class_terms != static_cast<std::uint64_t>(count)) {
            throw std::logic_error("reconstruct_exact: weight class incomplete");
        }
        for (std::int64_t j = 0; j < count; ++j) {
            for (std::int64_t jp = 0; jp < count; ++jp) {
                const std::int64_t residue = (j - jp) % count;
                if (residue != 0) continue;  // off-diagonal: phase sum vanishes
                if (j != jp) throw std::logic_error("reconstruct_exact: residue aliasing");
                diag[configs[j].mask] += class_weight / Rational(count);
            }
        }
    }
    return diag;
}

namespace {

OrthogonalityReport orthogonality_audit_impl(int n, bool parallel) {
    if (n < 1 || n > 8) throw std::invalid_argument("orthogonality_audit: n outside [1,8]");

    std::vector<BasisLabel> labels;
    for (int m = 0; m <= n; ++m) {
        for (std::uint64_t alpha = 0; alpha < binomial(n, m); ++alpha) {
            labels.push_back({n, m, alpha});
        }
    }
    std::vector<PureState> states(labels.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(labels.size()); ++i) {
        states[i] = phase_tagged_state(labels[i]);
    }

    const auto masks_by_weight = [&] {
        std::vector<std::vector<std::uint64_t>> by_w(n + 1);
        for (int m = 0; m <= n; ++m) {
            for (const auto& cfg : enumerate_weight_configs(n, m)) by_w[m].push_back(cfg.mask);
        }
        return by_w;
    }();

    const std::size_t count = labels.size();
    double worst = 0.0;
    std::size_t triples = 0;

#pragma omp parallel for schedule(static) reduction(max : worst) reduction(+ : triples) if (parallel)
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(count); ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            for (int m = 0; m <= n; ++m) {
                cplx val = 0.0;
                for (std::uint64_t mask : masks_by_weight[m]) {
                    val += std::conj(states[a].amplitudes[mask]) * states[b].amplitudes[mask];
                }
                const bool expect_one = labels[a].m == m && labels[b].m == m && a == static_cast<std::int64_t>(b);
                const cplx expect = expect_one ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
                worst = std::max(worst, std::abs(val - expect));
                ++triples;
            }
        }
    }
    return {n, triples, worst};
}

}  // namespace

OrthogonalityReport orthogonality_audit(int n) { return orthogonality_audit_impl(n, true); }
OrthogonalityReport orthogonality_audit_serial(int n) { return orthogonality_audit_impl(n, false); }

}  // namespace mixcast
