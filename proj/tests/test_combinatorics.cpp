#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdint>
#include <set>

#include "mixcast/combinatorics.hpp"

using namespace mixcast;

namespace {

// Independent oracle: plain factorial evaluation, exact in unsigned 128-bit
// for the small arguments the examples use.
std::uint64_t binomial_by_factorials(int n, int k) {
    auto fact = [](int v) {
        unsigned __int128 f = 1;
        for (int i = 2; i <= v; ++i) f *= i;
        return f;
    };
    return static_cast<std::uint64_t>(fact(n) / (fact(k) * fact(n - k)));
}

}  // namespace

TEST_CASE("binomial matches the factorial oracle and conventions") {
    CHECK(binomial(3, 1) == 3);
    CHECK(binomial(5, 2) == binomial_by_factorials(5, 2));
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(4, -1) == 0);
    CHECK(binomial(4, 5) == 0);
    CHECK(binomial(0, 0) == 1);
    for (int n = 0; n <= 20; ++n) {
        for (int k = 0; k <= n; ++k) {
            CHECK(binomial(n, k) == binomial_by_factorials(n, k));
        }
    }
}

TEST_CASE("binomial satisfies Pascal's rule exactly up to n = 30") {
    for (int n = 1; n <= 30; ++n) {
        for (int k = 0; k <= n; ++k) {
            CHECK(binomial(n, k) == binomial(n - 1, k) + binomial(n - 1, k - 1));
        }
    }
}

TEST_CASE("binomial reports overflow instead of wrapping") {
    CHECK_THROWS_AS((void)binomial(200, 100), std::overflow_error);
    CHECK_THROWS_AS((void)binomial(-1, 0), std::invalid_argument);
    // C(68,34) is the first central value past 64 bits.
    CHECK_NOTHROW((void)binomial(67, 33));
    CHECK_THROWS_AS((void)binomial(68, 34), std::overflow_error);
}

TEST_CASE("enumerate_weight_configs fixes the documented order") {
    // The three-qubit, one-down family: up-up-down, up-down-up, down-up-up.
    const auto configs = enumerate_weight_configs(3, 1);
    REQUIRE(configs.size() == 3);
    CHECK(configs[0].mask == 0b001);
    CHECK(configs[1].mask == 0b010);
    CHECK(configs[2].mask == 0b100);

    const auto unique = enumerate_weight_configs(2, 0);
    REQUIRE(unique.size() == 1);
    CHECK(unique[0].mask == 0);

    const auto pairs = enumerate_weight_configs(4, 2);
    REQUIRE(pairs.size() == 6);
    CHECK(pairs.front().mask == 0b0011);
    CHECK(pairs.back().mask == 0b1100);
}

TEST_CASE("enumerate_weight_configs: exhaustive structural check to n = 12") {
    for (int n = 0; n <= 12; ++n) {
        for (int m = 0; m <= n; ++m) {
            const auto configs = enumerate_weight_configs(n, m);
            CHECK(configs.size() == binomial(n, m));
            std::set<std::uint64_t> seen;
            std::uint64_t previous = 0;
            bool first = true;
            for (const auto& cfg : configs) {
                CHECK(std::popcount(cfg.mask) == m);
                CHECK(cfg.weight == m);
                CHECK(cfg.n_qubits == n);
                CHECK(seen.insert(cfg.mask).second);
                if (!first) CHECK(cfg.mask > previous);
                previous = cfg.mask;
                first = false;
            }
        }
    }
    CHECK_THROWS_AS((void)enumerate_weight_configs(3, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)enumerate_weight_configs(3, -1), std::invalid_argument);
}

TEST_CASE("multiplicity_d matches direct binomial differences") {
    CHECK(multiplicity_d(2, 2) == 1);
    CHECK(multiplicity_d(2, 0) == 1);
    CHECK(multiplicity_d(4, 2) == 3);
    CHECK(multiplicity_d(3, 1) == 2);
    CHECK(multiplicity_d(3, 3) == 1);
    CHECK_THROWS_AS((void)multiplicity_d(4, 1), std::invalid_argument);  // parity mismatch
    CHECK_THROWS_AS((void)multiplicity_d(4, 6), std::invalid_argument);
}

TEST_CASE("SpinLabel enforces parity and range") {
    CHECK_NOTHROW((SpinLabel{3, -1}).validate(5));
    CHECK_NOTHROW((SpinLabel{4, 0}).validate(4));
    CHECK_THROWS_AS((SpinLabel{3, 0}).validate(), std::invalid_argument);   // parity
    CHECK_THROWS_AS((SpinLabel{3, 5}).validate(), std::invalid_argument);   // |two_m| > two_j
    CHECK_THROWS_AS((SpinLabel{5, 1}).validate(4), std::invalid_argument);  // two_j > n
    CHECK_THROWS_AS((SpinLabel{-1, 1}).validate(), std::invalid_argument);
}

TEST_CASE("sector dimensions sum to 2^n for n up to 20") {
    for (int n = 1; n <= 20; ++n) {
        unsigned __int128 total = 0;
        for (int two_j = n % 2; two_j <= n; two_j += 2) {
            total += static_cast<unsigned __int128>(multiplicity_d(n, two_j)) *
                     static_cast<unsigned __int128>(two_j + 1);
        }
        CHECK(total == (static_cast<unsigned __int128>(1) << n));
    }
}
