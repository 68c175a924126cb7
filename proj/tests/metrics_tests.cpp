#include <stdexcept>

#include "doctest.h"
#include "qcut/metrics.hpp"

using namespace qcut;

TEST_SUITE_BEGIN("metrics");

TEST_CASE("chi-squared on hand-computed cases") {
    // Disjoint point masses: (1-0)^2/1 + (0-1)^2/1 = 2, the maximum.
    CHECK(chi_squared({1, 0}, {0, 1}) == doctest::Approx(2.0));

    // Half-uniform vs uniform: 2 * (0.25^2 / 0.75) + 2 * (0.25^2 / 0.25).
    CHECK(chi_squared({0.5, 0.5, 0, 0}, {0.25, 0.25, 0.25, 0.25}) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-9));

    CHECK(chi_squared({0.3, 0.7}, {0.3, 0.7}) == doctest::Approx(0.0));
}

TEST_CASE("chi-squared skips entries that are zero on both sides") {
    CHECK(chi_squared({0, 1, 0}, {0, 1, 0}) == doctest::Approx(0.0));
    // The shared-zero slot contributes nothing; the rest behaves normally.
    CHECK(chi_squared({0, 0.5, 0.5}, {0, 1.0, 0.0}) ==
          doctest::Approx(0.25 / 1.5 + 0.25 / 0.5));
}

TEST_CASE("chi-squared is symmetric and rejects length mismatches") {
    const std::vector<double> a{0.1, 0.2, 0.3, 0.4};
    const std::vector<double> b{0.4, 0.3, 0.2, 0.1};
    CHECK(chi_squared(a, b) == doctest::Approx(chi_squared(b, a)));
    CHECK_THROWS_AS(chi_squared({1, 0}, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("total variation on hand-computed cases") {
    CHECK(total_variation({1, 0}, {0, 1}) == doctest::Approx(1.0));
    CHECK(total_variation({0.5, 0.5}, {0.5, 0.5}) == doctest::Approx(0.0));
    CHECK(total_variation({0.5, 0.5, 0, 0}, {0.25, 0.25, 0.25, 0.25}) ==
          doctest::Approx(0.5));
    CHECK(total_variation({0.7, 0.3}, {0.4, 0.6}) == doctest::Approx(0.3));
    CHECK_THROWS_AS(total_variation({1}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("total variation tolerates quasi-probabilities") {
    // Reconstruction noise can push entries slightly negative; the metric is
    // still just half the L1 distance.
    CHECK(total_variation({-0.1, 1.1}, {0.0, 1.0}) == doctest::Approx(0.1));
}

TEST_SUITE_END();
