// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// Generic Dirichlet series D(r) = sum_n a_n exp(-r b_n) with increasing
// exponents b_n, and its Laplace-integral (Cahen) evaluation
//
//   D(r) = r * integral_0^inf exp(-r x) A(x) dx,
//   A(x) = sum_{n : b_n <= x} a_n.
//
// A is a step function with jumps at x = b_n, so the integral up to a
// horizon is an exact sum of closed-form pieces
//   A(b_n) * (exp(-r b_n) - exp(-r b_{n+1})) / r
// which telescopes back to the partial series (Abel summation). No blind
// quadrature is involved here; this module is the correctness skeleton for
// the specific integrand handled in z_cahen.hpp.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include <compoisson/detail/summation.hpp>
#include <compoisson/gamma.hpp>
#include <compoisson/types.hpp>

namespace compoisson {

// Coefficients a_n and exponents b_n are indexed from n = 1. The exponents
// must be strictly increasing and divergent; exponent_inverse(x) returns the
// largest n with b_n <= x (0 if none), i.e. the counting bound of A(x).
// The callables must be side-effect-free: evaluations may be repeated,
// reordered, or run concurrently.
struct DirichletSeries {
    std::function<double(std::int64_t)> coefficient;
    std::function<double(std::int64_t)> exponent;
    std::function<std::int64_t(double)> exponent_inverse;
};

// Partial-sum (counting) function A(x) = sum_{n=1}^{exponent_inverse(x)} a_n.
// Empty sums are 0.
inline double partial_sum(const DirichletSeries& d, double x) {
    const std::int64_t count = d.exponent_inverse(x);
    detail::KahanSum s;
    for (std::int64_t n = 1; n <= count; ++n)
        s.add(d.coefficient(n));
    return s.value();
}

struct CahenEvaluation {
    double value = 0.0;          // integral part + tail estimate
    double integral = 0.0;       // r * integral_0^T exp(-rx) A(x) dx, exact
    double tail_estimate = 0.0;  // ratio-extrapolated remainder beyond T
    std::int64_t steps = 0;      // step pieces below the horizon
};

// Evaluate D(r) as the exact piecewise integral over the steps of A below
// the horizon T plus a tail estimate for the remainder.
//
// Steps with b_n < T contribute their closed-form piece; the first term at
// or beyond T starts the tail. The tail policy assumes the terms
// t_n = a_n exp(-r b_n) are eventually ratio-bounded by q < 1, estimates q
// from the last two terms, and extrapolates t_first / (1 - q). The quad
// configuration is accepted for interface symmetry with the z evaluators;
// the step pieces are closed-form and need no nodes.
inline CahenEvaluation cahen_evaluate_full(const DirichletSeries& d, double r,
                                           double T, const QuadConfig& = {}) {
    if (!(r > 0.0))
        throw std::domain_error("cahen_evaluate: requires r > 0");

    constexpr std::int64_t max_steps = 10000000;
    CahenEvaluation out;

    detail::KahanSum pieces;
    detail::KahanSum partial;  // A(b_n) as the walk advances
    double b_prev = -std::numeric_limits<double>::infinity();
    std::int64_t n = 1;
    double b = d.exponent(1);
    while (b < T) {
        if (!(b > b_prev))
            throw std::invalid_argument("cahen_evaluate: exponents must be strictly increasing");
        partial.add(d.coefficient(n));
        const double b_next = d.exponent(n + 1);
        if (!(b_next > b))
            throw std::invalid_argument("cahen_evaluate: exponents must be strictly increasing");
        // A is constant A(b_n) on [b_n, b_{n+1}); r * integral of exp(-rx)
        // over the step is the difference of the exponentials.
        pieces.add(partial.value() * (std::exp(-r * b) - std::exp(-r * b_next)));
        b_prev = b;
        b = b_next;
        ++n;
        if (n > max_steps)
            throw convergence_failure("cahen_evaluate: step cap exceeded before horizon");
        if (std::abs(pieces.value()) > 1e300 || std::abs(partial.value()) > 1e300)
            throw convergence_failure(
                "cahen_evaluate: partial results increasing without bound");
    }
    out.steps = n - 1;

    // Close the last processed step out to infinity: A stays >= A(b_{M}) so
    // r * integral_{b_M+1}^inf exp(-rx) A(b_M) dx = A(b_M) exp(-r b_{M+1}).
    // Together with the pieces this telescopes to sum_{n<=M} t_n.
    if (out.steps > 0)
        pieces.add(partial.value() * std::exp(-r * b));
    out.integral = pieces.value();

    // Ratio-policy tail for the terms from index M+1 on.
    const double t_first = d.coefficient(n) * std::exp(-r * b);
    if (t_first != 0.0) {
        const double b_second = d.exponent(n + 1);
        const double t_second = d.coefficient(n + 1) * std::exp(-r * b_second);
        const double q = std::abs(t_second / t_first);
        if (!(q < 1.0))
            throw convergence_failure(
                "cahen_evaluate: tail terms not decaying at the horizon");
        out.tail_estimate = t_first / (1.0 - q);
    }
    out.value = out.integral + out.tail_estimate;
    return out;
}

inline double cahen_evaluate(const DirichletSeries& d, double r, double T,
                             const QuadConfig& quad = {}) {
    return cahen_evaluate_full(d, r, T, quad).value;
}

// The Dirichlet series behind Z(lambda, nu): a_n = lambda^(n-1),
// b_n = ln Gamma(n+2), with the counting inverse supplied through the exact
// factorial breakpoints. Satisfies
//   Z(lambda, nu) = 1 + lambda + lambda^2 * D(nu).
inline DirichletSeries compoisson_dirichlet_series(double lambda) {
    if (!(lambda > 0.0))
        throw std::domain_error("compoisson_dirichlet_series: requires lambda > 0");
    DirichletSeries d;
    d.coefficient = [lambda](std::int64_t n) {
        return std::pow(lambda, static_cast<double>(n - 1));
    };
    d.exponent = [](std::int64_t n) {
        const std::int64_t m = n + 2;
        if (m <= 171)
            return detail::log_gamma_integer_table()[static_cast<int>(m)];
        return log_gamma(static_cast<double>(m));
    };
    d.exponent_inverse = [](double x) -> std::int64_t {
        if (!(x >= detail::log_gamma_integer_table()[3]))
            return 0;  // below b_1 = ln Gamma(3)
        // largest n with ln Gamma(n+2) <= x
        if (x < detail::log_gamma_integer_table()[171]) {
            const auto& t = detail::log_gamma_integer_table();
            const auto it = std::upper_bound(t.begin() + 3, t.end(), x);
            return static_cast<std::int64_t>(it - t.begin()) - 1 - 2;
        }
        std::int64_t m = 171;
        while (log_gamma(static_cast<double>(m + 1)) <= x)
            ++m;
        return m - 2;
    };
    return d;
}

}  // namespace compoisson
