// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// The single-integral representation
//
//   Z(lambda, nu) = 1/(1-lambda)
//                 + nu/(lambda-1) * integral_1^inf x^-(nu+1) lambda^floor(invGamma(x)) dx
//
// where invGamma is the increasing branch of the inverse Gamma function.
// The integrand is constant on each breakpoint interval
// [Gamma(k), Gamma(k+1)) = [(k-1)!, k!), so the integral is
//
//   integral = sum_{k>=2} lambda^k ((k-1)!^-nu - k!^-nu) / nu .
//
// Two evaluators are provided:
//   z_cahen_exact - sums the closed-form segment values directly
//                   (telescopes to the defining series, used as the identity
//                   check of the representation);
//   z_cahen_quad  - integrates the first tail_segments breakpoint intervals
//                   by Gauss quadrature with the integrand evaluated
//                   pointwise through floor_inverse_gamma, so the inverse
//                   Gamma implementation is exercised rather than trusted,
//                   then continues with closed-form segments until the
//                   remainder is certified.
//
// The affine combination is 0/0-indeterminate at lambda = 1; inside a guard
// band the dispatcher falls back to the series (z_cahen_near_one).

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <compoisson/detail/gauss_legendre.hpp>
#include <compoisson/detail/summation.hpp>
#include <compoisson/gamma.hpp>
#include <compoisson/types.hpp>
#include <compoisson/z_series.hpp>

namespace compoisson {

// One interval [Gamma(k), Gamma(k+1)) on which floor(invGamma(x)) equals k
// and the integrand weight is lambda^k. Representable in doubles for
// k <= 170 only; beyond that the evaluators work in the log domain.
struct PiecewiseSegment {
    std::int64_t k;
    double lo;      // Gamma(k) = (k-1)!
    double hi;      // Gamma(k+1) = k!
    double weight;  // lambda^k
};

// Segments for k = 2..k_max (k_max <= 170), from the exact factorial table.
inline std::vector<PiecewiseSegment> cahen_segments(double lambda, std::int64_t k_max) {
    if (k_max < 2 || k_max > 170)
        throw std::domain_error("cahen_segments: k_max must be in [2, 170]");
    const auto& table = detail::gamma_integer_table();
    std::vector<PiecewiseSegment> segs;
    segs.reserve(static_cast<std::size_t>(k_max - 1));
    for (std::int64_t k = 2; k <= k_max; ++k) {
        segs.push_back({k, table[static_cast<int>(k)], table[static_cast<int>(k + 1)],
                        std::pow(lambda, static_cast<double>(k))});
    }
    return segs;
}

namespace detail {

// Accumulates S = sum_{k>=2} lambda^k ((k-1)!^-nu - k!^-nu) in log space
// (S = nu * integral; Z = (S - 1)/(lambda - 1)). Terms are positive with
// eventual term ratio lambda/k^nu, so the remainder is certified by the same
// geometric argument as the series tail bound. Exponents come from the shared
// term ladder: exponent of lambda^k (k-1)!^-nu is l(k-1) + ln lambda.
struct CahenSegmentSum {
    std::vector<double> exponents;
    double peak = -std::numeric_limits<double>::infinity();
    std::int64_t next_k = 2;  // first segment not yet accumulated
    TermExponentLadder ladder;

    CahenSegmentSum(double lambda, double nu) : ladder(lambda, nu) {
        ladder.advance();  // ladder at n = 1: exponent of lambda/1!^nu
        exponents.reserve(256);
    }

    double segment_exponent() const {
        // ln [ lambda^k ((k-1)!^-nu - k!^-nu) ] at k = next_k
        const double u = ladder.l + ladder.log_lambda;  // lambda^k (k-1)!^-nu
        return u + std::log1p(-std::exp(-ladder.nu * std::log(static_cast<double>(next_k))));
    }

    void push(double exponent) {
        exponents.push_back(exponent);
        if (exponent > peak) peak = exponent;
        ++next_k;
        ladder.advance();  // keep l at index next_k - 1
    }

    void push_closed_form() { push(segment_exponent()); }

    // ln of the certified bound on the omitted segments (k > next_k - 1):
    // each is below lambda^k (k-1)!^-nu whose ratio is lambda/k^nu.
    // Returns +inf while the ratio is still >= 1.
    double log_tail_bound() const {
        const double q = ladder.ratio_at(static_cast<double>(next_k));
        if (!(q < 1.0))
            return std::numeric_limits<double>::infinity();
        return ladder.l + ladder.log_lambda - std::log1p(-q);
    }
};

// Assemble Z from log(S): Z = (S - 1)/(lambda - 1) for lambda on either side
// of 1. log_tail is the certified bound on what the segment sum omitted.
inline ZResult assemble_cahen(double lambda, double log_S, double log_tail,
                              Method method, std::int64_t work) {
    ZResult out;
    out.method = method;
    out.terms_or_nodes = work;
    if (lambda < 1.0) {
        const double S = std::exp(log_S);
        out.value = (1.0 - S) / (1.0 - lambda);
        out.log_value = std::log(out.value);
    } else if (log_S < 700.0) {
        const double S = std::exp(log_S);
        out.value = (S - 1.0) / (lambda - 1.0);
        out.log_value = std::log(out.value);
    } else {
        out.log_value = log_S + std::log1p(-std::exp(-log_S)) - std::log(lambda - 1.0);
        out.value = std::exp(out.log_value);
    }
    const double bound = std::exp(log_tail) / std::abs(lambda - 1.0);
    if (std::isfinite(bound))
        out.error_bound = bound;
    return out;
}

}  // namespace detail

// Closed-form segment summation of the integral representation. Agrees with
// z_series to the telescoping identity; tol controls the certified segment
// tail relative to Z. Rejects lambda inside the guard band around 1.
inline ZResult z_cahen_exact(const ComPoissonParams& params, double tol = z_series_default_tol) {
    validate(params);
    if (!(tol > 0.0))
        throw std::domain_error("z_cahen_exact: tol must be > 0");
    if (near_lambda_one(params.lambda))
        throw guard_violation("z_cahen_exact: |lambda - 1| <= guard band; use the series fallback");
    if (params.lambda == 0.0) {
        ZResult out;
        out.method = Method::cahen_exact;
        out.terms_or_nodes = 0;
        out.error_bound = 0.0;
        return out;
    }

    detail::CahenSegmentSum acc(params.lambda, params.nu);
    // Z >= max(1, t_peak) and |S - 1| = |lambda - 1| Z, so stopping when the
    // segment-tail bound reaches tol * |lambda - 1| * max(1, e^peak / lambda)
    // certifies a tol-relative truncation of Z.
    const double log_guard = std::log(tol * std::abs(params.lambda - 1.0));
    while (true) {
        const double log_tail = acc.log_tail_bound();
        const double floor_exponent =
            std::max(0.0, acc.peak - acc.ladder.log_lambda);
        if (log_tail <= log_guard + floor_exponent)
            break;
        if (acc.next_k > z_series_max_terms)
            throw convergence_failure("z_cahen_exact: segment cap exceeded");
        acc.push_closed_form();
    }
    const double log_S = detail::log_sum_exp(acc.exponents);
    return detail::assemble_cahen(params.lambda, log_S, acc.log_tail_bound(),
                                  Method::cahen_exact, acc.next_k - 2);
}

// Quadrature evaluation of the integral representation. The first
// quad.tail_segments breakpoint intervals are integrated by Gauss-Legendre
// with the integrand queried pointwise via floor_inverse_gamma; per segment
// the substitution y = x^-nu makes the exact integrand constant in y, so the
// rule is an exactness region and any disagreement isolates breakpoint
// misclassification. Beyond the horizon the closed-form segments continue
// until the remainder is certified below tol.
inline ZResult z_cahen_quad(const ComPoissonParams& params, const QuadConfig& quad = {},
                            double tol = z_series_default_tol) {
    validate(params);
    validate(quad);
    if (!(tol > 0.0))
        throw std::domain_error("z_cahen_quad: tol must be > 0");
    if (near_lambda_one(params.lambda))
        throw guard_violation("z_cahen_quad: |lambda - 1| <= guard band; use the series fallback");
    if (params.lambda == 0.0) {
        ZResult out;
        out.method = Method::cahen_quad;
        out.terms_or_nodes = 0;
        out.error_bound = 0.0;
        return out;
    }

    // Pointwise region: k <= 170 keeps x in double range, and nu * ln k
    // bounded keeps the substitution y = x^-nu away from underflow. Segments
    // dropped here are picked up by the closed-form continuation.
    std::int64_t k_quad = std::min<std::int64_t>(quad.tail_segments, 170);
    while (k_quad >= 2 && params.nu * std::log(static_cast<double>(k_quad)) > 690.0)
        --k_quad;

    const detail::GaussRule rule = detail::gauss_legendre(quad.nodes_per_dim);
    const auto& table = detail::gamma_integer_table();
    const double log_lambda = std::log(params.lambda);

    detail::CahenSegmentSum acc(params.lambda, params.nu);
    std::int64_t nodes_used = 0;
    for (std::int64_t k = 2; k <= k_quad; ++k) {
        // On [Gamma(k), Gamma(k+1)] substitute y = x^-nu, then s = y / lo^-nu:
        // the segment integral becomes
        //   lo^-nu / nu * integral_{k^-nu}^{1} lambda^floor(invGamma(lo s^(-1/nu))) ds
        // and the accumulated S-term is nu times that. The base factor
        // lambda^k lo^-nu comes from the ladder; the node average carries
        // lambda^(floor - k), which is 1 wherever classification is correct.
        const double s_min = std::exp(-params.nu * std::log(static_cast<double>(k)));
        const double mid = 0.5 * (s_min + 1.0);
        const double halfwidth = 0.5 * (1.0 - s_min);
        const double lo = table[static_cast<int>(k)];
        detail::KahanSum node_sum;
        for (int i = 0; i < quad.nodes_per_dim; ++i) {
            const double s = mid + halfwidth * rule.nodes[i];
            const double x = lo * std::pow(s, -1.0 / params.nu);
            const std::int64_t fig = floor_inverse_gamma(x);
            node_sum.add(rule.weights[i] * halfwidth *
                         std::exp(static_cast<double>(fig - k) * log_lambda));
        }
        nodes_used += quad.nodes_per_dim;
        const double base = acc.ladder.l + acc.ladder.log_lambda;  // ln(lambda^k lo^-nu)
        acc.push(base + std::log(node_sum.value()));
    }

    // Closed-form continuation until the remainder is certified.
    const double log_guard = std::log(tol * std::abs(params.lambda - 1.0));
    while (true) {
        const double log_tail = acc.log_tail_bound();
        const double floor_exponent =
            std::max(0.0, acc.peak - acc.ladder.log_lambda);
        if (log_tail <= log_guard + floor_exponent)
            break;
        if (acc.next_k > z_series_max_terms)
            throw convergence_failure(
                "z_cahen_quad: segment tail not in decaying regime within the cap");
        acc.push_closed_form();
    }
    const double log_S = detail::log_sum_exp(acc.exponents);
    ZResult out = detail::assemble_cahen(params.lambda, log_S, acc.log_tail_bound(),
                                         Method::cahen_quad,
                                         nodes_used + (acc.next_k - 2 - (k_quad - 1)));
    return out;
}

// Fallback for the guard band around lambda = 1: the value is defined by
// continuity and computed by the series, tagged as such.
inline ZResult z_cahen_near_one(const ComPoissonParams& params,
                                double tol = z_series_default_tol) {
    return z_series(params, tol);
}

// Dispatcher: closed-form segments away from lambda = 1, series fallback
// inside the guard band.
inline ZResult z_cahen(const ComPoissonParams& params, double tol = z_series_default_tol) {
    validate(params);
    if (near_lambda_one(params.lambda))
        return z_cahen_near_one(params, tol);
    return z_cahen_exact(params, tol);
}

}  // namespace compoisson
