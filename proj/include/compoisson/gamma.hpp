// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// Real-axis Gamma-family primitives: log-Gamma, digamma, and the increasing
// branch of the inverse Gamma function on [alpha, inf), where alpha is the
// abscissa of the Gamma minimum on the positive axis. The integer-argument
// values Gamma(k) = (k-1)! are kept in an exact table so that breakpoint
// classification (floor of the inverse) never depends on a float root.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace compoisson {

// Location and value of the minimum of Gamma on the positive axis.
struct GammaMinimum {
    double alpha;        // digamma(alpha) = 0
    double gamma_alpha;  // Gamma(alpha), the smallest attainable value
};

inline constexpr GammaMinimum gamma_minimum{1.4616321449683623413,
                                            0.8856031944108887003};

namespace detail {

// Gamma(k) for k = 1..171, built once in extended precision and rounded to
// double. Gamma(171) = 170! is the largest factorial below DBL_MAX, so the
// table brackets every finite double from above.
inline const std::array<double, 172>& gamma_integer_table() {
    static const std::array<double, 172> table = [] {
        std::array<double, 172> t{};
        long double f = 1.0L;
        t[1] = 1.0;
        for (int k = 2; k <= 171; ++k) {
            f *= static_cast<long double>(k - 1);
            t[k] = static_cast<double>(f);
        }
        return t;
    }();
    return table;
}

// ln Gamma(k) for k = 1..171, from the same extended-precision factorials.
inline const std::array<double, 172>& log_gamma_integer_table() {
    static const std::array<double, 172> table = [] {
        std::array<double, 172> t{};
        long double f = 1.0L;
        t[1] = 0.0;
        for (int k = 2; k <= 171; ++k) {
            f *= static_cast<long double>(k - 1);
            t[k] = static_cast<double>(logl(f));
        }
        return t;
    }();
    return table;
}

// Stirling series for ln Gamma, valid to ~1e-17 relative for x >= 12.
inline double log_gamma_stirling(double x) {
    constexpr double half_log_two_pi = 0.91893853320467274178;
    const double r = 1.0 / x;
    const double r2 = r * r;
    // Bernoulli coefficients B_{2k} / (2k (2k-1))
    const double series =
        r * (8.3333333333333333333e-02 +
             r2 * (-2.7777777777777777778e-03 +
                   r2 * (7.9365079365079365079e-04 +
                         r2 * (-5.9523809523809523810e-04 +
                               r2 * (8.4175084175084175084e-04 +
                                     r2 * (-1.9175269175269175269e-03 +
                                           r2 * 6.4102564102564102564e-03))))));
    return (x - 0.5) * std::log(x) - x + half_log_two_pi + series;
}

}  // namespace detail

// Natural log of Gamma(x) for x > 0. Integer arguments up to 171 come from
// the exact factorial table; otherwise the argument is shifted above 12 and
// the Stirling series is applied.
inline double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: requires x > 0");
    if (x == std::floor(x) && x <= 171.0)
        return detail::log_gamma_integer_table()[static_cast<int>(x)];
    double shift = 0.0;
    double c = 0.0;  // compensation for the shift sum
    while (x < 12.0) {
        const double term = -std::log(x);
        const double y = term - c;
        const double t = shift + y;
        c = (t - shift) - y;
        shift = t;
        x += 1.0;
    }
    return detail::log_gamma_stirling(x) + shift;
}

// Digamma psi(x) = d/dx ln Gamma(x) for x > 0: recurrence up to x >= 10,
// then the asymptotic Bernoulli expansion.
inline double digamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("digamma: requires x > 0");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / x;
    const double r2 = r * r;
    // B_{2k} / (2k) coefficients
    const double series =
        r2 * (8.3333333333333333333e-02 +
              r2 * (-8.3333333333333333333e-03 +
                    r2 * (3.9682539682539682540e-03 +
                          r2 * (-4.1666666666666666667e-03 +
                                r2 * (7.5757575757575757576e-03 +
                                      r2 * (-2.1092796092796092796e-02 +
                                            r2 * 8.3333333333333333333e-02))))));
    return acc + std::log(x) - 0.5 * r - series;
}

// Inverse of Gamma on its increasing branch: the unique x >= alpha with
// Gamma(x) = y, for y >= Gamma(alpha). Bracketed Newton on
// f(x) = log_gamma(x) - ln y with bisection fallback; stops when
// |f| <= 1e-13 * max(1, |ln y|) or the bracket width reaches 1e-13 * x.
inline double inverse_gamma(double y) {
    if (!(y >= gamma_minimum.gamma_alpha))
        throw std::domain_error("inverse_gamma: requires y >= Gamma(alpha) ~ 0.8856");
    const double target = std::log(y);
    const double f_tol = 1e-13 * std::max(1.0, std::abs(target));

    double lo = gamma_minimum.alpha;
    if (log_gamma(lo) >= target)
        return lo;  // y == Gamma(alpha) up to rounding
    double hi = 4.0;
    while (log_gamma(hi) < target) {
        lo = hi;
        hi *= 2.0;  // ln Gamma grows superlinearly; a handful of doublings
    }

    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = log_gamma(x) - target;
        if (std::abs(f) <= f_tol)
            return x;
        if (f < 0.0)
            lo = x;
        else
            hi = x;
        if (hi - lo <= 1e-13 * x)
            return x;
        const double d = digamma(x);
        double next = x - f / d;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);  // Newton left the bracket; bisect
        x = next;
    }
    return x;
}

// Integer part of the increasing-branch inverse: the unique k >= 2 with
// Gamma(k) <= t < Gamma(k+1), located by bracketing in the exact factorial
// table. Every finite t >= Gamma(171) = 170! maps to k = 171 since DBL_MAX
// < 171!.
inline std::int64_t floor_inverse_gamma(double t) {
    if (!(t >= 1.0))
        throw std::domain_error("floor_inverse_gamma: requires t >= 1");
    const auto& table = detail::gamma_integer_table();
    // first k in [2, 171] with Gamma(k) > t
    const auto it = std::upper_bound(table.begin() + 2, table.end(), t);
    return static_cast<std::int64_t>(it - table.begin()) - 1;
}

}  // namespace compoisson
