// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// Prior representations of Z(lambda, nu) for integer nu, used as independent
// cross-checks of the series and integral evaluators:
//
//   - the generalized hypergeometric closed form with unit lower parameters,
//     generated through its Pochhammer term recurrence
//       term(n+1) = term(n) * lambda / (n+1)^nu ;
//   - the Bessel identity Z(lambda, 2) = I0(2 sqrt(lambda));
//   - the (nu-1)-fold trigonometric integral over [-pi, pi]^(nu-1)
//       Z = (2pi)^-(nu-1) * integral exp{ sum_j e^{i x_j}
//                                         + lambda e^{-i sum_j x_j} } dx,
//     evaluated on a periodic trapezoid tensor grid (spectrally accurate for
//     this entire periodic integrand). nu = 1 degenerates to exp(lambda).

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <compoisson/detail/summation.hpp>
#include <compoisson/types.hpp>
#include <compoisson/z_series.hpp>

namespace compoisson {

// Hypergeometric-form evaluation for integer nu >= 1. Structurally the same
// sum as z_series, but each term is produced by dividing out the nu unit
// Pochhammer factors one at a time; its value is as an independent wiring of
// the same function, not as a faster path.
inline ZResult z_hypergeometric(double lambda, int nu, double tol = z_series_default_tol) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::domain_error("z_hypergeometric: lambda must be >= 0 and finite");
    if (nu < 1)
        throw std::domain_error("z_hypergeometric: nu must be a positive integer");
    if (!(tol > 0.0))
        throw std::domain_error("z_hypergeometric: tol must be > 0");

    ZResult out;
    out.method = Method::hypergeometric;
    detail::KahanSum sum;
    double term = 1.0;
    sum.add(term);
    std::int64_t n = 0;
    while (true) {
        double next = term * lambda;
        for (int j = 0; j < nu; ++j)
            next /= static_cast<double>(n + 1);  // the unit lower parameters at index n
        const double q_next = lambda / std::pow(static_cast<double>(n + 2), static_cast<double>(nu));
        if (q_next < 1.0) {
            const double bound = next / (1.0 - q_next);
            if (bound <= tol * sum.value()) {
                out.value = sum.value();
                out.log_value = std::log(out.value);
                out.terms_or_nodes = n + 1;
                out.error_bound = bound;
                return out;
            }
        }
        term = next;
        ++n;
        if (term > 1e290 || sum.value() > 1e290)
            throw convergence_failure(
                "z_hypergeometric: value exceeds the double range; use z_series");
        sum.add(term);
        if (n >= z_series_max_terms)
            throw convergence_failure("z_hypergeometric: iteration cap exceeded");
    }
}

// Modified Bessel I0(2 sqrt(lambda)) by its own ascending series with its own
// termination; equals Z(lambda, 2) and serves as an external oracle for it.
inline double z_bessel_nu2(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::domain_error("z_bessel_nu2: lambda must be >= 0 and finite");
    // I0(x) = sum_m (x^2/4)^m / (m!)^2 with x = 2 sqrt(lambda)
    double sum = 0.0;
    double t = 1.0;
    for (int m = 1; m <= 1000; ++m) {
        sum += t;
        t *= lambda / (static_cast<double>(m) * static_cast<double>(m));
        if (t < 0x1p-54 * sum) {
            sum += t;
            break;
        }
    }
    return sum;
}

// Trigonometric multiple-integral evaluation for nu in {1, 2, 3}. The
// integrand is complex; the real part of the grid average is the value and
// the imaginary part (an exact cancellation under x -> -x) is returned as a
// diagnostic through imag_residual and required below 1e-8 of the value.
inline ZResult z_shmueli(double lambda, int nu, const QuadConfig& quad = {},
                         double* imag_residual = nullptr) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::domain_error("z_shmueli: lambda must be >= 0 and finite");
    if (nu < 1 || nu > 3)
        throw std::domain_error("z_shmueli: nu must be 1, 2, or 3");
    validate(quad);

    ZResult out;
    out.method = Method::shmueli;
    if (imag_residual)
        *imag_residual = 0.0;

    if (nu == 1) {
        // zero-dimensional case: the exponent degenerates to lambda
        out.value = std::exp(lambda);
        out.log_value = lambda;
        out.terms_or_nodes = 1;
        return out;
    }

    const int N = quad.nodes_per_dim;
    const double step = 2.0 * std::numbers::pi / N;
    std::complex<double> mean(0.0, 0.0);
    if (nu == 2) {
        for (int j = 0; j < N; ++j) {
            const double x = -std::numbers::pi + step * j;
            const std::complex<double> ix(0.0, x);
            mean += std::exp(std::exp(ix) + lambda * std::exp(-ix));
        }
        mean /= static_cast<double>(N);
        out.terms_or_nodes = N;
    } else {
        for (int j1 = 0; j1 < N; ++j1) {
            const double x1 = -std::numbers::pi + step * j1;
            const std::complex<double> e1 = std::exp(std::complex<double>(0.0, x1));
            for (int j2 = 0; j2 < N; ++j2) {
                const double x2 = -std::numbers::pi + step * j2;
                const std::complex<double> e2 = std::exp(std::complex<double>(0.0, x2));
                const std::complex<double> back =
                    lambda * std::exp(std::complex<double>(0.0, -(x1 + x2)));
                mean += std::exp(e1 + e2 + back);
            }
        }
        mean /= static_cast<double>(N) * static_cast<double>(N);
        out.terms_or_nodes = static_cast<std::int64_t>(N) * N;
    }

    out.value = mean.real();
    out.log_value = std::log(out.value);
    const double imag = std::abs(mean.imag());
    if (imag_residual)
        *imag_residual = imag;
    if (imag > 1e-8 * out.value)
        throw convergence_failure("z_shmueli: imaginary residual exceeds diagnostic threshold");
    return out;
}

}  // namespace compoisson
