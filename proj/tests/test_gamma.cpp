// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <compoisson/gamma.hpp>

#include "reference.hpp"

using compoisson::digamma;
using compoisson::floor_inverse_gamma;
using compoisson::gamma_minimum;
using compoisson::inverse_gamma;
using compoisson::log_gamma;

TEST_CASE("log_gamma known values", "[gamma]") {
    CHECK(log_gamma(1.0) == 0.0);
    CHECK(log_gamma(2.0) == 0.0);
    // Gamma(5) = 4! = 24
    CHECK(log_gamma(5.0) == Approx(3.1780538303479456).epsilon(1e-14));
    // Gamma(1/2) = sqrt(pi)
    CHECK(log_gamma(0.5) == Approx(0.5723649429247001).margin(1e-13));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-3.2), std::domain_error);
}

TEST_CASE("log_gamma across the contract range", "[gamma]") {
    // against extended-precision lgammal, relative to max(1, |value|)
    for (double x : {0.5, 0.75, 1.25, 1.4616321449683623, 2.5, 3.75, 6.5, 11.9,
                     12.1, 25.0, 147.3, 1234.5, 98765.4, 1e6}) {
        const long double ref = lgammal(static_cast<long double>(x));
        const double err = std::abs(static_cast<double>(
            static_cast<long double>(log_gamma(x)) - ref));
        CHECK(err <= 1e-13 * std::max(1.0, std::abs(static_cast<double>(ref))));
    }
}

TEST_CASE("digamma known values", "[gamma]") {
    CHECK(digamma(1.0) == Approx(-0.5772156649015329).margin(1e-12));
    CHECK(digamma(2.0) == Approx(0.4227843350984671).margin(1e-12));
    // recurrence consistency psi(x+1) = psi(x) + 1/x
    CHECK(digamma(2.0) == Approx(digamma(1.0) + 1.0).margin(1e-13));
    // stationary point of Gamma
    CHECK(std::abs(digamma(gamma_minimum.alpha)) < 1e-12);
    CHECK_THROWS_AS(digamma(0.0), std::domain_error);
}

TEST_CASE("digamma agrees with central differences of log_gamma", "[gamma]") {
    const double h = 1e-5;
    for (double x = 1.0; x <= 100.0; x += 3.7) {
        const double fd = (log_gamma(x + h) - log_gamma(x - h)) / (2.0 * h);
        CHECK(digamma(x) == Approx(fd).margin(1e-6));
    }
}

TEST_CASE("gamma minimum constants", "[gamma]") {
    CHECK(gamma_minimum.alpha > 1.46);
    CHECK(gamma_minimum.alpha < 1.47);
    CHECK(gamma_minimum.gamma_alpha > 0.88);
    CHECK(gamma_minimum.gamma_alpha < 0.89);
    CHECK(gamma_minimum.gamma_alpha ==
          Approx(std::exp(log_gamma(gamma_minimum.alpha))).margin(1e-12));
}

TEST_CASE("inverse_gamma at integer values", "[gamma]") {
    CHECK(inverse_gamma(1.0) == Approx(2.0).margin(1e-11));
    CHECK(inverse_gamma(2.0) == Approx(3.0).margin(1e-11));
    CHECK(inverse_gamma(24.0) == Approx(5.0).margin(1e-11));
    // consistency over the factorial table
    double factorial = 1.0;
    for (int k = 2; k <= 20; ++k) {
        CHECK(inverse_gamma(factorial) == Approx(static_cast<double>(k)).margin(1e-9));
        factorial *= k;
    }
}

TEST_CASE("inverse_gamma domain and large argument", "[gamma]") {
    CHECK_THROWS_AS(inverse_gamma(0.5), std::domain_error);
    CHECK_THROWS_AS(inverse_gamma(0.88), std::domain_error);
    CHECK(inverse_gamma(gamma_minimum.gamma_alpha) == Approx(gamma_minimum.alpha).margin(1e-6));
    // against test-side bisection
    for (double y : {1e2, 1e6, 1e10, 3.7e13}) {
        const double x = inverse_gamma(y);
        CHECK(x == Approx(reference::inverse_gamma_bisect(y)).epsilon(1e-12));
        CHECK(log_gamma(x) == Approx(std::log(y)).margin(1e-12 * std::max(1.0, std::log(y))));
    }
}

TEST_CASE("inverse_gamma round trip and monotonicity", "[gamma]") {
    double prev = 0.0;
    for (int i = 0; i <= 90; ++i) {
        const double y = std::pow(10.0, 15.0 * i / 90.0);  // log grid on [1, 1e15]
        const double x = inverse_gamma(y);
        CHECK(x > prev);
        prev = x;
        const double back = std::exp(log_gamma(x));
        CHECK(back == Approx(y).epsilon(1e-11));
    }
}

TEST_CASE("floor_inverse_gamma breakpoints", "[gamma]") {
    CHECK(floor_inverse_gamma(1.0) == 2);
    CHECK(floor_inverse_gamma(1.5) == 2);
    CHECK(floor_inverse_gamma(5.9999) == 3);
    CHECK(floor_inverse_gamma(6.0) == 4);  // Gamma(4) = 3! = 6
    CHECK(floor_inverse_gamma(1e10) == 14);
    CHECK_THROWS_AS(floor_inverse_gamma(0.99), std::domain_error);

    // exact at every factorial breakpoint in the table
    double factorial = 1.0;  // (k-1)! for k = 2
    for (int k = 2; k <= 18; ++k) {
        CHECK(floor_inverse_gamma(factorial) == k);
        factorial *= k;  // now k! = breakpoint of k+1
    }
    // the largest finite doubles sit in the last bracket
    CHECK(floor_inverse_gamma(std::numeric_limits<double>::max()) == 171);
}

TEST_CASE("floor_inverse_gamma agrees with floor of the continuous inverse", "[gamma]") {
    std::mt19937_64 rng(20260808u);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int checked = 0;
    while (checked < 200) {
        const double t = std::exp(unif(rng) * std::log(1e14));  // log-uniform on [1, 1e14]
        const std::int64_t k = floor_inverse_gamma(t);
        CHECK(k == reference::floor_inverse_gamma_scan(t));
        // skip draws too close to a breakpoint for float flooring to be fair
        const auto& table = compoisson::detail::gamma_integer_table();
        const double lo = table[static_cast<int>(k)];
        const double hi = table[static_cast<int>(k + 1)];
        if (t - lo < 1e-6 * t || hi - t < 1e-6 * t)
            continue;
        CHECK(k == static_cast<std::int64_t>(std::floor(inverse_gamma(t))));
        ++checked;
    }
}

TEST_CASE("factorial table matches the recurrence", "[gamma]") {
    const auto& table = compoisson::detail::gamma_integer_table();
    for (int k = 2; k <= 170; ++k) {
        const double lo = table[k];
        const double hi = table[k + 1];
        CHECK(lo < hi);
        // hi = k * lo to within one ulp
        CHECK(std::abs(hi - static_cast<double>(k) * lo) <=
              std::ldexp(1.0, std::ilogb(hi) - 52));
    }
}
