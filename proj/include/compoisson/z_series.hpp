// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// Direct summation of Z(lambda, nu) = sum_n lambda^n / (n!)^nu with a
// certified geometric tail bound. This is the reference path every other
// evaluator is validated against.
//
// The term ratio t(n+1)/t(n) = lambda / (n+1)^nu decreases in n, so once it
// drops below 1 the tail is dominated by a geometric series and the
// truncation error is rigorously bounded. Terms are accumulated directly
// while the peak term is representable and in log space otherwise.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <compoisson/detail/summation.hpp>
#include <compoisson/types.hpp>

namespace compoisson {

inline constexpr double z_series_default_tol = 1e-14;
inline constexpr std::int64_t z_series_max_terms = 1000000;

// Certified bound on the tail sum_{n > N} lambda^n/(n!)^nu:
//   B = t(N+1) / (1 - q),  q = lambda / (N+2)^nu,
// valid because the term ratio lambda/(n+1)^nu is decreasing, so every tail
// term is dominated by the geometric sequence t(N+1) q^m. Requires q < 1.
inline double z_series_tail_bound(const ComPoissonParams& params, std::int64_t N) {
    validate(params);
    if (N < 0)
        throw std::domain_error("z_series_tail_bound: requires N >= 0");
    if (params.lambda == 0.0)
        return 0.0;
    const double q =
        params.lambda / std::pow(static_cast<double>(N + 2), params.nu);
    if (!(q < 1.0))
        throw std::domain_error(
            "z_series_tail_bound: ratio q = lambda/(N+2)^nu >= 1; N too small to certify");
    detail::TermExponentLadder ladder(params.lambda, params.nu);
    for (std::int64_t n = 0; n <= N; ++n)
        ladder.advance();
    return std::exp(ladder.l) / (1.0 - q);  // ladder.l is the exponent of t(N+1)
}

namespace detail {

// Direct-space accumulation. Sets *overflowed if a term leaves the safe
// double range, in which case the caller switches to the log-space path.
inline ZResult z_series_direct(const ComPoissonParams& params, double tol,
                               bool* overflowed) {
    *overflowed = false;
    ZResult out;
    out.method = Method::series;

    KahanSum sum;
    double term = 1.0;
    sum.add(term);
    std::int64_t n = 0;
    while (true) {
        const double q_next =
            params.lambda / std::pow(static_cast<double>(n + 2), params.nu);
        if (q_next < 1.0) {
            const double next_term =
                term * params.lambda / std::pow(static_cast<double>(n + 1), params.nu);
            const double bound = next_term / (1.0 - q_next);
            if (bound <= tol * sum.value()) {
                out.value = sum.value();
                out.log_value = std::log(out.value);
                out.terms_or_nodes = n + 1;
                out.error_bound = bound;
                return out;
            }
        }
        ++n;
        term *= params.lambda / std::pow(static_cast<double>(n), params.nu);
        if (term > 1e290 || sum.value() > 1e290) {
            *overflowed = true;
            return out;
        }
        sum.add(term);
        if (n >= z_series_max_terms)
            throw convergence_failure("z_series: iteration cap exceeded");
    }
}

// Log-space accumulation: walk the exponent ladder, collect exponents until
// the certified bound is negligible against the running peak (the peak is a
// lower bound for Z, so peak-relative implies value-relative), then shift by
// the peak and sum.
inline ZResult z_series_logspace(const ComPoissonParams& params, double tol) {
    ZResult out;
    out.method = Method::series;

    TermExponentLadder ladder(params.lambda, params.nu);
    std::vector<double> exponents;
    exponents.reserve(1024);
    exponents.push_back(0.0);
    double peak = 0.0;
    double log_bound = -std::numeric_limits<double>::infinity();
    const double log_tol = std::log(tol);
    while (true) {
        const std::int64_t n = ladder.n;
        const double q_next = ladder.ratio_at(static_cast<double>(n + 2));
        if (q_next < 1.0) {
            const double l_next =
                ladder.l + ladder.log_lambda - params.nu * std::log(static_cast<double>(n + 1));
            log_bound = l_next - std::log1p(-q_next);
            if (log_bound <= peak + log_tol)
                break;
        }
        ladder.advance();
        exponents.push_back(ladder.l);
        if (ladder.l > peak)
            peak = ladder.l;
        if (ladder.n >= z_series_max_terms)
            throw convergence_failure("z_series: iteration cap exceeded");
    }
    out.log_value = log_sum_exp(exponents);
    out.value = std::exp(out.log_value);  // +inf when out of range
    out.terms_or_nodes = static_cast<std::int64_t>(exponents.size());
    const double bound = std::exp(log_bound);
    if (std::isfinite(bound))
        out.error_bound = bound;
    return out;
}

}  // namespace detail

// Z(lambda, nu) by direct summation, truncated when the certified tail bound
// drops below tol * value. error_bound carries the bound actually achieved.
inline ZResult z_series(const ComPoissonParams& params, double tol = z_series_default_tol) {
    validate(params);
    if (!(tol > 0.0))
        throw std::domain_error("z_series: tol must be > 0");
    if (params.lambda == 0.0) {
        ZResult out;
        out.value = 1.0;
        out.log_value = 0.0;
        out.method = Method::series;
        out.terms_or_nodes = 1;
        out.error_bound = 0.0;
        return out;
    }
    bool overflowed = false;
    ZResult out = detail::z_series_direct(params, tol, &overflowed);
    if (overflowed)
        out = detail::z_series_logspace(params, tol);
    return out;
}

}  // namespace compoisson
