#include "mixcast/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

#include "mixcast/errors.hpp"
#include "mixcast/kernels.hpp"

namespace mixcast {

namespace {

void check_pair(int n_in, int m_out) {
    if (n_in < 1 || m_out < n_in) {
        throw std::invalid_argument("need 1 <= N <= M, got N=" + std::to_string(n_in) +
                                    " M=" + std::to_string(m_out));
    }
}

double pow_int(double base, int e) {
    double out = 1.0;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

}  // namespace

double optimal_eta(int n_in, int m_out) {
    check_pair(n_in, m_out);
    return (static_cast<double>(n_in) * (m_out + 2)) / (static_cast<double>(m_out) * (n_in + 2));
}

Rational optimal_eta_exact(int n_in, int m_out) {
    check_pair(n_in, m_out);
    return Rational(static_cast<std::int64_t>(n_in) * (m_out + 2),
                    static_cast<std::int64_t>(m_out) * (n_in + 2));
}

ShrinkReport extract_shrinking_factor(const MixedQubit& q, const DensityOperator& out_single) {
    if (out_single.n_qubits != 1 || out_single.matrix.size() != 4) {
        throw std::invalid_argument("extract_shrinking_factor: output must be a single qubit");
    }
    const double r = q.bloch_r();
    if (std::abs(r) <= 1e-9) {
        throw DegenerateInputError(
            "extract_shrinking_factor: bloch_r ~ 0, the scalar relation cannot identify eta");
    }
    const double eta = (2.0 * out_single.matrix[0].real() - 1.0) / r;

    // Residual against the full scalar form, off-diagonals included.
    const double s00 = eta * q.c0 + (1.0 - eta) / 2.0;
    const double s11 = eta * q.c1() + (1.0 - eta) / 2.0;
    double residual = std::abs(out_single.matrix[0] - cplx{s00, 0.0});
    residual = std::max(residual, std::abs(out_single.matrix[3] - cplx{s11, 0.0}));
    residual = std::max(residual, std::abs(out_single.matrix[1]));
    residual = std::max(residual, std::abs(out_single.matrix[2]));

    return {eta, residual, 0, 0, q.c0};
}

ShrinkReport shrink_via_pipeline(const MixedQubit& q, int n_in, int m_out, Variant variant) {
    check_pair(n_in, m_out);
    const BranchEnsemble ensemble = broadcast_density(q, n_in, m_out, variant);
    const DensityOperator marginal = ensemble.single_marginal(0);
    ShrinkReport report = extract_shrinking_factor(q, marginal);
    report.n_in = n_in;
    report.m_out = m_out;
    return report;
}

UniversalityScan universality_scan(int n_in, int m_out, const std::vector<double>& c0_grid,
                                   Variant variant) {
    check_pair(n_in, m_out);
    const double bound = optimal_eta(n_in, m_out);
    UniversalityScan scan{n_in, m_out, 0.0, 0.0, 0.0, 0, 0};

    for (double c0 : c0_grid) {
        const MixedQubit q(c0);
        if (std::abs(q.bloch_r()) <= 1e-9) {
            // Unidentifiable eta; assert the scalar form directly: output
            // marginal must be I/2.
            const BranchEnsemble ensemble = broadcast_density(q, n_in, m_out, variant);
            const DensityOperator marginal = ensemble.single_marginal(0);
            double dev = std::abs(marginal.matrix[0] - cplx{0.5, 0.0});
            dev = std::max(dev, std::abs(marginal.matrix[3] - cplx{0.5, 0.0}));
            dev = std::max(dev, std::abs(marginal.matrix[1]));
            dev = std::max(dev, std::abs(marginal.matrix[2]));
            scan.max_degenerate_deviation = std::max(scan.max_degenerate_deviation, dev);
            ++scan.degenerate_points;
        } else {
            const ShrinkReport report = shrink_via_pipeline(q, n_in, m_out, variant);
            scan.max_eta_deviation = std::max(scan.max_eta_deviation, std::abs(report.eta - bound));
            scan.max_residual = std::max(scan.max_residual, report.residual);
            ++scan.extracted_points;
        }
    }
    return scan;
}

SuperbroadcastReport superbroadcast_eta(double r, int n_in, int m_out) {
    check_pair(n_in, m_out);
    if (!(r > 0.0 && r <= 1.0)) {
        throw std::invalid_argument("superbroadcast_eta: r must lie in (0,1], got " +
                                    std::to_string(r));
    }
    const double x = (1.0 + r) / 2.0;
    const double y = (1.0 - r) / 2.0;

    double outer = 0.0;
    for (int two_j = n_in % 2; two_j <= n_in; two_j += 2) {
        const double dj = static_cast<double>(multiplicity_d(n_in, two_j));
        double inner = 0.0;
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
            const SpinLabel spin{two_j, two_m};
            spin.validate(n_in);
            inner += 0.5 * spin.two_m * pow_int(x, (n_in - spin.two_m) / 2) *
                     pow_int(y, (n_in + spin.two_m) / 2);
        }
        outer += dj * inner * 2.0 / (two_j + 2);  // d_j / (j + 1)
    }

    const double eta = -(m_out + 2.0) / (r * m_out) * outer;
    const double r_pp = eta * r;
    SuperbroadcastReport report;
    report.r = r;
    report.n_in = n_in;
    report.m_out = m_out;
    report.eta_double_prime = eta;
    report.eta_pure_bound = optimal_eta(n_in, m_out);
    report.r_double_prime = r_pp;
    report.c0pp = (1.0 + r_pp) / 2.0;
    report.c1pp = (1.0 - r_pp) / 2.0;
    return report;
}

Rational superbroadcast_eta_exact(const Rational& r, int n_in, int m_out) {
    check_pair(n_in, m_out);
    if (r.is_zero() || Rational(1) < r || r < Rational(0)) {
        throw std::invalid_argument("superbroadcast_eta_exact: r must lie in (0,1]");
    }
    const Rational half(1, 2);
    const Rational x = (Rational(1) + r) * half;
    const Rational y = (Rational(1) - r) * half;

    Rational outer(0);
    for (int two_j = n_in % 2; two_j <= n_in; two_j += 2) {
        const Rational dj(static_cast<std::int64_t>(multiplicity_d(n_in, two_j)));
        Rational inner(0);
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
            inner += Rational(two_m, 2) * x.pow((n_in - two_m) / 2) * y.pow((n_in + two_m) / 2);
        }
        outer += dj * inner * Rational(2, two_j + 2);
    }
    return -Rational(m_out + 2) / (r * Rational(m_out)) * outer;
}

std::vector<SchemeRow> compare_schemes(int n_in, int m_out, const std::vector<double>& c0_grid,
                                       const std::vector<double>& r_grid) {
    check_pair(n_in, m_out);
    std::vector<SchemeRow> rows;

    const auto state_level_row = [&](const char* name, Variant variant, double c0) {
        const MixedQubit q(c0);
        if (std::abs(q.bloch_r()) <= 1e-9) {
            // eta unidentifiable at r = 0; report the I/2 deviation instead.
            const DensityOperator marginal =
                broadcast_density(q, n_in, m_out, variant).single_marginal(0);
            double dev = std::abs(marginal.matrix[0] - cplx{0.5, 0.0});
            dev = std::max(dev, std::abs(marginal.matrix[3] - cplx{0.5, 0.0}));
            dev = std::max(dev, std::abs(marginal.matrix[1]));
            dev = std::max(dev, std::abs(marginal.matrix[2]));
            rows.push_back({name, "c0", c0, std::numeric_limits<double>::quiet_NaN(), dev});
        } else {
            const ShrinkReport report = shrink_via_pipeline(q, n_in, m_out, variant);
            rows.push_back({name, "c0", c0, report.eta, report.residual});
        }
    };

    for (double c0 : c0_grid) {
        state_level_row("tag-preserving", Variant::kTagPreserving, c0);
        state_level_row("symmetrized", Variant::kSymmetrized, c0);
    }
    for (double r : r_grid) {
        const SuperbroadcastReport report = superbroadcast_eta(r, n_in, m_out);
        rows.push_back({"superbroadcast", "r", r, report.eta_double_prime, 0.0});
    }
    return rows;
}

namespace {

// Output of the isometry on an arbitrary N-qubit pure state, organized as
// M-qubit vectors per symbolic ancilla label.
using AncillaBlocks = std::map<std::pair<int, std::uint64_t>, std::vector<cplx>>;

AncillaBlocks apply_isometry(const PureState& input, int m_out) {
    const int n = input.n_qubits;
    const BetaTable beta(n, m_out);
    const std::size_t out_dim = std::size_t{1} << m_out;
    AncillaBlocks blocks;

    for (int m = 0; m <= n; ++m) {
        const std::uint64_t tags = binomial(n, m);
        for (std::uint64_t alpha = 0; alpha < tags; ++alpha) {
            const BasisLabel label{n, m, alpha};
            const PureState tagged = phase_tagged_state(label);
            const cplx coeff = inner_product(tagged, input);
            if (std::abs(coeff) == 0.0) continue;
            for (int k = 0; k < beta.k_count(); ++k) {
                const PureState out_state = phase_tagged_state(BasisLabel{m_out, m + k, alpha});
                auto& block = blocks[{k, alpha}];
                if (block.empty()) block.assign(out_dim, cplx{0.0, 0.0});
                const cplx scale = coeff * beta.at(m, k);
                for (std::size_t i = 0; i < out_dim; ++i) block[i] += scale * out_state.amplitudes[i];
            }
        }
    }
    return blocks;
}

// Single-qubit marginal (kept qubit 0) of a pure system+ancilla state given
// by its ancilla blocks; unnormalized if the input was.
DensityOperator blocked_marginal(const AncillaBlocks& blocks, int m_out) {
    DensityOperator out{1, std::vector<cplx>(4, cplx{0.0, 0.0})};
    for (const auto& [key, block] : blocks) {
        const PureState view{m_out, block};
        const DensityOperator part = partial_trace_to_single(view, 0);
        for (int e = 0; e < 4; ++e) out.matrix[e] += part.matrix[e];
    }
    return out;
}

}  // namespace

RotatedProbeReport rotated_input_probe(const std::array<double, 3>& bloch_direction, double c0,
                                       int n_in, int m_out) {
    check_pair(n_in, m_out);
    const MixedQubit q(c0);
    const double norm = std::sqrt(bloch_direction[0] * bloch_direction[0] +
                                  bloch_direction[1] * bloch_direction[1] +
                                  bloch_direction[2] * bloch_direction[2]);
    if (norm == 0.0) throw std::invalid_argument("rotated_input_probe: zero direction");
    const double nx = bloch_direction[0] / norm;
    const double ny = bloch_direction[1] / norm;
    const double nz = bloch_direction[2] / norm;

    // Eigenvectors of n.sigma: |u0> for +1, |u1> for -1.
    const double theta = std::acos(std::clamp(nz, -1.0, 1.0));
    const double phi = std::atan2(ny, nx);
    const cplx u0_up = std::cos(theta / 2.0);
    const cplx u0_dn = std::polar(std::sin(theta / 2.0), phi);
    const cplx u1_up = -std::polar(std::sin(theta / 2.0), -phi);
    const cplx u1_dn = std::cos(theta / 2.0);

    const std::array<std::array<cplx, 2>, 2> eigvec{{{u0_up, u0_dn}, {u1_up, u1_dn}}};
    const std::array<double, 2> eigval{q.c0, q.c1()};

    // rho^(tensor N) = sum over eigenvector choices of a product state.
    const std::size_t in_dim = std::size_t{1} << n_in;
    DensityOperator marginal{1, std::vector<cplx>(4, cplx{0.0, 0.0})};
    for (std::size_t choice = 0; choice < in_dim; ++choice) {
        double weight = 1.0;
        for (int qubit = 0; qubit < n_in; ++qubit) {
            weight *= eigval[(choice >> (n_in - 1 - qubit)) & 1];
        }
        if (weight == 0.0) continue;

        PureState product{n_in, std::vector<cplx>(in_dim, cplx{1.0, 0.0})};
        for (std::size_t idx = 0; idx < in_dim; ++idx) {
            cplx amp{1.0, 0.0};
            for (int qubit = 0; qubit < n_in; ++qubit) {
                const int which = (choice >> (n_in - 1 - qubit)) & 1;
                const int bit = (idx >> (n_in - 1 - qubit)) & 1;
                amp *= eigvec[which][bit];
            }
            product.amplitudes[idx] = amp;
        }

        const AncillaBlocks blocks = apply_isometry(product, m_out);
        const DensityOperator part = blocked_marginal(blocks, m_out);
        for (int e = 0; e < 4; ++e) marginal.matrix[e] += weight * part.matrix[e];
    }

    const double r_in = q.bloch_r();
    const std::array<double, 3> bloch_in{r_in * nx, r_in * ny, r_in * nz};
    const std::array<double, 3> bloch_out{
        2.0 * marginal.matrix[1].real(),
        -2.0 * marginal.matrix[1].imag(),
        marginal.matrix[0].real() - marginal.matrix[3].real(),
    };

    RotatedProbeReport report;
    report.bloch_in = bloch_in;
    report.bloch_out = bloch_out;
    report.marginal_trace_defect = std::abs(marginal.trace() - cplx{1.0, 0.0});

    const double in_sq =
        bloch_in[0] * bloch_in[0] + bloch_in[1] * bloch_in[1] + bloch_in[2] * bloch_in[2];
    if (in_sq > 1e-18) {
        report.eta_fit = (bloch_out[0] * bloch_in[0] + bloch_out[1] * bloch_in[1] +
                          bloch_out[2] * bloch_in[2]) /
                         in_sq;
    } else {
        report.eta_fit = 0.0;
    }

    // Deviation from eta*rho + (1-eta)/2 I with the fitted eta.
    const double eta = report.eta_fit;
    const std::array<cplx, 4> rho_in{cplx{(1.0 + bloch_in[2]) / 2.0, 0.0},
                                     cplx{bloch_in[0] / 2.0, -bloch_in[1] / 2.0},
                                     cplx{bloch_in[0] / 2.0, bloch_in[1] / 2.0},
                                     cplx{(1.0 - bloch_in[2]) / 2.0, 0.0}};
    double dev = 0.0;
    for (int e = 0; e < 4; ++e) {
        const cplx scalar_form =
            eta * rho_in[e] + ((e == 0 || e == 3) ? cplx{(1.0 - eta) / 2.0, 0.0} : cplx{0.0, 0.0});
        dev = std::max(dev, std::abs(marginal.matrix[e] - scalar_form));
    }
    report.scalar_form_deviation = dev;
    return report;
}

}  // namespace mixcast
