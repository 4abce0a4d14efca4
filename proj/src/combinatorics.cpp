#include "mixcast/combinatorics.hpp"

#include <bit>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace mixcast {

std::uint64_t binomial(int n, int k) {
    if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative, got " + std::to_string(n));
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;

    // Multiplicative form; the intermediate product is kept in 128 bits and
    // checked against the 64-bit range after every step.
    unsigned __int128 result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= static_cast<unsigned __int128>(n - k + i);
        result /= static_cast<unsigned __int128>(i);
        if (result > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("binomial: C(" + std::to_string(n) + "," + std::to_string(k) +
                                      ") exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(result);
}

std::vector<WeightConfig> enumerate_weight_configs(int n, int m) {
    if (n < 0 || n > 62 || m < 0 || m > n) {
        throw std::invalid_argument("enumerate_weight_configs: need 0 <= m <= n <= 62, got n=" +
                                    std::to_string(n) + " m=" + std::to_string(m));
    }
    std::vector<WeightConfig> configs;
    configs.reserve(binomial(n, m));
    if (m == 0) {
        configs.push_back({n, 0, 0});
        return configs;
    }
    // Gosper's hack walks masks of fixed popcount in increasing order.
    const std::uint64_t limit = (n == 62) ? ~std::uint64_t{0} >> 2 : (std::uint64_t{1} << n);
    std::uint64_t mask = (std::uint64_t{1} << m) - 1;
    while (mask < limit) {
        configs.push_back({n, mask, m});
        const std::uint64_t c = mask & (~mask + 1);
        const std::uint64_t r = mask + c;
        if (r >= limit) break;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return configs;
}

void SpinLabel::validate(int n) const {
    if (two_j < 0) throw std::invalid_argument("SpinLabel: two_j must be nonnegative");
    if (std::abs(two_m) > two_j || ((two_m + two_j) % 2) != 0) {
        throw std::invalid_argument("SpinLabel: two_m=" + std::to_string(two_m) +
                                    " incompatible with two_j=" + std::to_string(two_j));
    }
    if (n >= 0 && two_j > n) {
        throw std::invalid_argument("SpinLabel: two_j exceeds the qubit count");
    }
}

std::uint64_t multiplicity_d(int n, int two_j) {
    if (n < 1) throw std::invalid_argument("multiplicity_d: n must be positive");
    if (two_j < 0 || two_j > n || (two_j % 2) != (n % 2)) {
        throw std::invalid_argument("multiplicity_d: two_j=" + std::to_string(two_j) +
                                    " must satisfy 0 <= two_j <= n and two_j == n (mod 2)");
    }
    const int k = (n - two_j) / 2;
    return binomial(n, k) - binomial(n, k - 1);
}

}  // namespace mixcast
