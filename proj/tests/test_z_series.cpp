// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <compoisson/z_series.hpp>

#include "reference.hpp"

using compoisson::ComPoissonParams;
using compoisson::z_series;
using compoisson::z_series_tail_bound;
using compoisson::ZResult;

TEST_CASE("z_series known values", "[z_series]") {
    CHECK(z_series({1.0, 1.0}).value == Approx(2.718281828459045).epsilon(1e-14));
    CHECK(z_series({0.0, 2.0}).value == 1.0);
    // frozen from the extended-precision oracle
    CHECK(z_series({0.5, 2.0}).value == Approx(1.5660829297563505).epsilon(1e-13));
    CHECK(z_series({2.0, 0.5}).value == Approx(22.858619788663695).epsilon(1e-13));
}

TEST_CASE("z_series matches the brute-force oracle on a grid", "[z_series]") {
    for (double lambda : {0.1, 0.5, 0.9, 1.0, 1.1, 2.0, 5.0}) {
        for (double nu : {0.3, 0.5, 1.0, 1.7, 2.0, 3.0}) {
            const long double ref = reference::z_brute_force(lambda, nu, 600);
            const ZResult z = z_series({lambda, nu});
            CHECK(z.value == Approx(static_cast<double>(ref)).epsilon(1e-12));
        }
    }
}

TEST_CASE("z_series term sequence peaks near lambda^(1/nu)", "[z_series]") {
    // lambda = 2, nu = 0.5: mode of lambda^n/(n!)^nu at n ~ lambda^(1/nu) = 4
    // (t_3 and t_4 tie exactly since t_4/t_3 = 2/sqrt(4) = 1)
    double t = 1.0;
    double best = t;
    int best_n = 0;
    for (int n = 1; n <= 30; ++n) {
        t *= 2.0 / std::pow(static_cast<double>(n), 0.5);
        if (t >= best) {
            best = t;
            best_n = n;
        }
    }
    CHECK(best_n == 4);
    CHECK(z_series({2.0, 0.5}).value > best);  // the sum dominates its peak term
}

TEST_CASE("z_series result metadata", "[z_series]") {
    const ZResult z = z_series({0.5, 2.0});
    CHECK(z.method == compoisson::Method::series);
    CHECK(z.value >= 1.0);
    CHECK(z.terms_or_nodes > 0);
    REQUIRE(z.error_bound.has_value());
    CHECK(*z.error_bound >= 0.0);
    CHECK(std::isfinite(*z.error_bound));
    CHECK(*z.error_bound <= 1e-13 * z.value);
}

TEST_CASE("z_series domain errors", "[z_series]") {
    CHECK_THROWS_AS(z_series({-1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(z_series({1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(z_series({1.0, 1.0}, 0.0), std::domain_error);
}

TEST_CASE("z_series log-space path agrees with the direct path", "[z_series]") {
    for (double lambda : {0.5, 1.0, 3.0, 10.0, 20.0}) {
        for (double nu : {0.5, 1.0, 2.0}) {
            bool overflowed = false;
            const ZResult direct =
                compoisson::detail::z_series_direct({lambda, nu}, 1e-14, &overflowed);
            REQUIRE_FALSE(overflowed);
            const ZResult logspace = compoisson::detail::z_series_logspace({lambda, nu}, 1e-14);
            CHECK(logspace.value == Approx(direct.value).epsilon(1e-12));
            CHECK(logspace.log_value == Approx(std::log(direct.value)).margin(1e-12));
        }
    }
}

TEST_CASE("z_series survives values beyond the double range", "[z_series]") {
    // peak term alone overflows; the log representation must stay finite
    const ZResult z = z_series({10.0, 0.2});
    CHECK(std::isinf(z.value));
    CHECK(std::isfinite(z.log_value));
    CHECK(z.log_value > 19000.0);
    CHECK(z.log_value < 21000.0);
}

TEST_CASE("z_series monotone in lambda and nu", "[z_series]") {
    double prev = 0.0;
    for (double lambda : {0.2, 0.6, 1.3, 2.9, 6.1}) {
        const double v = z_series({lambda, 1.4}).value;
        CHECK(v > prev);
        prev = v;
    }
    double prev_nu = std::numeric_limits<double>::infinity();
    for (double nu : {0.4, 0.9, 1.5, 2.6}) {
        const double v = z_series({1.8, nu}).value;
        CHECK(v < prev_nu);
        prev_nu = v;
    }
}

TEST_CASE("z_series elementary bounds", "[z_series]") {
    for (double lambda : {0.3, 1.0, 2.4, 7.7}) {
        for (double nu : {1.0, 1.5, 2.8}) {
            const double v = z_series({lambda, nu}).value;
            CHECK(v >= 1.0 + lambda - 1e-12 * v);
            CHECK(v <= std::exp(lambda) * (1.0 + 1e-12));
        }
        for (double nu : {0.2, 0.6, 1.0}) {
            const double v = z_series({lambda, nu}).value;
            CHECK(v >= std::exp(lambda) * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("z_series_tail_bound examples", "[z_series]") {
    // (1, 1, N=10): frozen oracle tail of e
    const double bound = z_series_tail_bound({1.0, 1.0}, 10);
    const double true_tail = 2.7312660755458851e-08;
    CHECK(bound >= true_tail);
    CHECK(bound <= 10.0 * true_tail);
    CHECK(bound == Approx(2.7329572784118239e-08).epsilon(1e-12));

    // (0.5, 2, N=0): q = 0.125, B = 0.5/0.875
    const double b2 = z_series_tail_bound({0.5, 2.0}, 0);
    CHECK(b2 == Approx(0.5714285714285714).epsilon(1e-13));
    CHECK(b2 >= 0.5660829297563505);  // true tail, frozen

    // ratio test failure: q = 100 / 4^0.1 > 1
    CHECK_THROWS_AS(z_series_tail_bound({100.0, 0.1}, 3), std::domain_error);
}

TEST_CASE("z_series_tail_bound is sound and not vacuous", "[z_series]") {
    std::mt19937_64 rng(777u);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int done = 0;
    while (done < 200) {
        const double lambda = std::exp(unif(rng) * std::log(100.0)) * 0.1;  // [0.1, 10]
        const double nu = 0.2 + 2.8 * unif(rng);
        // draw N at or beyond the point where q <= 0.9
        const std::int64_t n_min =
            static_cast<std::int64_t>(std::ceil(std::pow(lambda / 0.9, 1.0 / nu))) + 1;
        const std::int64_t N = n_min + static_cast<std::int64_t>(unif(rng) * 40.0);
        const double q = lambda / std::pow(static_cast<double>(N + 2), nu);
        REQUIRE(q < 1.0);
        const double bound = z_series_tail_bound({lambda, nu}, N);
        const double true_tail =
            static_cast<double>(reference::z_tail_brute_force(lambda, nu, N, 200));
        CHECK(true_tail <= bound);
        CHECK(bound <= 100.0 * true_tail);
        ++done;
    }
}

TEST_CASE("z_series hits the iteration cap on extreme parameters", "[z_series]") {
    // peak index lambda^(1/nu) ~ 1e150: no certification within the cap
    CHECK_THROWS_AS(z_series({1e30, 0.2}), compoisson::convergence_failure);
}

TEST_CASE("evaluators are safe to call concurrently", "[z_series][concurrency]") {
    const std::vector<double> lambdas{0.3, 0.9, 1.7, 4.2};
    const std::vector<double> nus{0.4, 1.0, 2.3};
    std::vector<double> reference_values;
    for (const double lambda : lambdas)
        for (const double nu : nus)
            reference_values.push_back(z_series({lambda, nu}).value);

    std::vector<std::thread> workers;
    std::vector<std::vector<double>> results(8);
    for (int t = 0; t < 8; ++t) {
        workers.emplace_back([&, t] {
            for (const double lambda : lambdas)
                for (const double nu : nus)
                    results[static_cast<std::size_t>(t)].push_back(
                        z_series({lambda, nu}).value);
        });
    }
    for (auto& w : workers)
        w.join();
    for (const auto& r : results)
        CHECK(r == reference_values);  // bitwise: pure functions, no shared state
}
