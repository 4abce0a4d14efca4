#pragma once

#include <array>
#include <string>
#include <vector>

#include "mixcast/broadcasting.hpp"
#include "mixcast/rational.hpp"
#include "mixcast/states.hpp"

namespace mixcast {

// Optimal universal shrinking factor N(M+2)/(M(N+2)).
double optimal_eta(int n_in, int m_out);
Rational optimal_eta_exact(int n_in, int m_out);

// Fit of a single-qubit output against eta*rho + (1-eta)/2 * I.
struct ShrinkReport {
    double eta = 0.0;
    double residual = 0.0;  // max entrywise deviation, off-diagonals included
    int n_in = 0;
    int m_out = 0;
    double c0 = 0.0;
};

// eta = (2 <up|out|up> - 1) / bloch_r. Throws DegenerateInputError when
// |bloch_r| <= 1e-9: the scalar relation cannot identify eta there.
ShrinkReport extract_shrinking_factor(const MixedQubit& q, const DensityOperator& out_single);

// Full pipeline: broadcast rho^(tensor N), reduce to one qubit, extract.
ShrinkReport shrink_via_pipeline(const MixedQubit& q, int n_in, int m_out,
                                 Variant variant = Variant::kTagPreserving);

struct UniversalityScan {
    int n_in = 0;
    int m_out = 0;
    double max_eta_deviation = 0.0;  // against optimal_eta over the grid
    double max_residual = 0.0;
    // c0 = 0.5 rows cannot use extraction; they assert marginal == I/2.
    double max_degenerate_deviation = 0.0;
    std::size_t extracted_points = 0;
    std::size_t degenerate_points = 0;
};

UniversalityScan universality_scan(int n_in, int m_out, const std::vector<double>& c0_grid,
                                   Variant variant = Variant::kTagPreserving);

// Superbroadcasting curve evaluated from the closed-form double sum over
// (j, m); the measure-and-reclone protocol itself is not simulated.
struct SuperbroadcastReport {
    double r = 0.0;
    int n_in = 0;
    int m_out = 0;
    double eta_double_prime = 0.0;
    double eta_pure_bound = 0.0;
    double c0pp = 0.0;
    double c1pp = 0.0;
    double r_double_prime = 0.0;
};

SuperbroadcastReport superbroadcast_eta(double r, int n_in, int m_out);
Rational superbroadcast_eta_exact(const Rational& r, int n_in, int m_out);

struct SchemeRow {
    std::string scheme;       // "tag-preserving", "symmetrized", "superbroadcast"
    std::string parameter;    // "c0" or "r"
    double value = 0.0;       // the grid point
    double eta = 0.0;
    double residual = 0.0;
};

// Juxtaposes the two state-level schemes over a c0 grid and the
// superbroadcasting closed form over an r grid.
std::vector<SchemeRow> compare_schemes(int n_in, int m_out, const std::vector<double>& c0_grid,
                                       const std::vector<double>& r_grid);

// Exploratory check: feeds a state that is NOT diagonal in the machine
// basis through the fixed computational-basis machine and reports the
// deviation from the scalar form. Reported, never asserted.
struct RotatedProbeReport {
    double eta_fit = 0.0;            // from the Bloch-vector contraction ratio
    double scalar_form_deviation = 0.0;  // max entry deviation from eta*rho+(1-eta)/2 I
    double marginal_trace_defect = 0.0;
    std::array<double, 3> bloch_in{};
    std::array<double, 3> bloch_out{};
};

RotatedProbeReport rotated_input_probe(const std::array<double, 3>& bloch_direction, double c0,
                                       int n_in, int m_out);

}  // namespace mixcast
