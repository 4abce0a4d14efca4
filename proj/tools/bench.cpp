// Times the OpenMP kernels against their serial references on
// representative workloads and prints one table row per kernel.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "mixcast/broadcasting.hpp"
#include "mixcast/decomposition.hpp"
#include "mixcast/kernels.hpp"
#include "mixcast/states.hpp"

using namespace mixcast;

namespace {

template <typename F>
double time_best_of(int repeats, F&& f) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        f();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(stop - start).count());
    }
    return best;
}

std::vector<PureState> tagged_basis(int n) {
    std::vector<PureState> states;
    for (int m = 0; m <= n; ++m) {
        for (std::uint64_t alpha = 0; alpha < binomial(n, m); ++alpha) {
            states.push_back(phase_tagged_state({n, m, alpha}));
        }
    }
    return states;
}

void report(const char* kernel, const char* workload, double serial, double parallel) {
    std::printf("%-22s %-28s %10.4f ms %10.4f ms %7.2fx\n", kernel, workload, serial * 1e3,
                parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-22s %-28s %13s %13s %8s\n", "kernel", "workload", "serial", "openmp", "speedup");

    {
        const int n = 8;
        const auto states = tagged_basis(n);
        volatile double sink = 0.0;
        const double serial = time_best_of(3, [&] {
            const auto gram = kernels::gram_matrix_serial(states);
            sink = sink + gram[0].real();
        });
        const double parallel = time_best_of(3, [&] {
            const auto gram = kernels::gram_matrix(states);
            sink = sink + gram[0].real();
        });
        report("gram_matrix", "2^8 tagged states", serial, parallel);
    }

    {
        const int n = 8;
        const auto states = tagged_basis(n);
        const std::vector<double> weights(states.size(), 1.0 / states.size());
        volatile double sink = 0.0;
        const double serial = time_best_of(3, [&] {
            const auto rho = kernels::mixture_density_serial(weights, states);
            sink = sink + rho.matrix[0].real();
        });
        const double parallel = time_best_of(3, [&] {
            const auto rho = kernels::mixture_density(weights, states);
            sink = sink + rho.matrix[0].real();
        });
        report("mixture_density", "2^8 projectors, dim 256", serial, parallel);
    }

    {
        const MixedQubit q(0.7);
        const DensityOperator rho = tensor_power(q, 10);
        volatile double sink = 0.0;
        const double serial = time_best_of(5, [&] {
            const auto reduced = kernels::single_marginal_serial(rho, 3);
            sink = sink + reduced.matrix[0].real();
        });
        const double parallel = time_best_of(5, [&] {
            const auto reduced = kernels::single_marginal(rho, 3);
            sink = sink + reduced.matrix[0].real();
        });
        report("single_marginal", "dense rho, 10 qubits", serial, parallel);
    }

    {
        const BranchEnsemble ensemble = broadcast_density(MixedQubit(0.8), 5, 16, Variant::kTagPreserving);
        std::vector<double> weights;
        std::vector<PureState> states;
        for (const Branch& b : ensemble.branches) {
            weights.push_back(b.probability);
            states.push_back(phase_tagged_state(b.state_label));
        }
        volatile double sink = 0.0;
        const double serial = time_best_of(3, [&] {
            const auto reduced = kernels::ensemble_marginal_serial(weights, states, 0);
            sink = sink + reduced.matrix[0].real();
        });
        const double parallel = time_best_of(3, [&] {
            const auto reduced = kernels::ensemble_marginal(weights, states, 0);
            sink = sink + reduced.matrix[0].real();
        });
        report("ensemble_marginal", "5->16 branches, dim 2^16", serial, parallel);
    }

    {
        volatile double sink = 0.0;
        const double serial = time_best_of(3, [&] { sink = sink + orthogonality_audit_serial(7).max_violation; });
        const double parallel = time_best_of(3, [&] { sink = sink + orthogonality_audit(7).max_violation; });
        report("orthogonality_audit", "all triples, 7 qubits", serial, parallel);
    }

    return 0;
}
