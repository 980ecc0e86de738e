// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared value types and error types for the COM-Poisson evaluators.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace compoisson {

// Parameters of the COM-Poisson family: weight lambda > 0 and dispersion
// nu > 0. lambda == 0 is accepted as a degenerate boundary (all mass at 0).
struct ComPoissonParams {
    double lambda;
    double nu;
};

inline void validate(const ComPoissonParams& p) {
    if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda))
        throw std::domain_error("compoisson: lambda must be >= 0 and finite");
    if (!(p.nu > 0.0) || !std::isfinite(p.nu))
        throw std::domain_error("compoisson: nu must be > 0 and finite");
}

enum class Method {
    series,
    cahen_exact,
    cahen_quad,
    hypergeometric,
    shmueli,
};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::cahen_exact: return "cahen-exact";
        case Method::cahen_quad: return "cahen-quad";
        case Method::hypergeometric: return "hyper";
        case Method::shmueli: return "shmueli";
    }
    return "?";
}

// A computed value of the normalizing constant Z(lambda, nu).
//
// Every term of Z is positive and the n = 0 term is 1, so value >= 1 always.
// log_value is the primary representation: for large lambda / small nu the
// constant exceeds the double range and value saturates to +inf while
// log_value stays finite and accurate.
struct ZResult {
    double value = 1.0;
    double log_value = 0.0;
    Method method = Method::series;
    std::int64_t terms_or_nodes = 0;
    // Rigorous bound on the absolute truncation error, when available and
    // representable.
    std::optional<double> error_bound;
};

// Quadrature configuration shared by the integral-based evaluators.
//   nodes_per_dim  - Gauss nodes per segment (cahen) or grid points per
//                    dimension (shmueli); must be >= 4
//   dims           - tensor-grid dimensionality (nu - 1 for shmueli)
//   rule           - trapezoid_periodic for periodic integrands,
//                    gauss_legendre for the segment integrals
//   tail_segments  - highest breakpoint index integrated pointwise before
//                    switching to the closed-form tail (cahen use)
struct QuadConfig {
    enum class Rule { trapezoid_periodic, gauss_legendre };

    int nodes_per_dim = 8;
    int dims = 0;
    Rule rule = Rule::gauss_legendre;
    int tail_segments = 60;
};

inline void validate(const QuadConfig& q) {
    if (q.nodes_per_dim < 4)
        throw std::domain_error("compoisson: nodes_per_dim must be >= 4");
    if (q.dims < 0)
        throw std::domain_error("compoisson: dims must be >= 0");
    if (q.tail_segments < 2)
        throw std::domain_error("compoisson: tail_segments must be >= 2");
}

// Thrown when lambda is inside the guard band around 1 where the integral
// representation is 0/0-indeterminate; callers should use the series or the
// near-one fallback.
class guard_violation : public std::domain_error {
  public:
    explicit guard_violation(const std::string& what) : std::domain_error(what) {}
};

// Thrown when an iteration cap is hit or a tail has not entered its decaying
// regime within the configured horizon.
class convergence_failure : public std::runtime_error {
  public:
    explicit convergence_failure(const std::string& what) : std::runtime_error(what) {}
};

// Relative half-width of the guard band around lambda = 1. Inside the band
// the (1 - lambda)^-1 cancellation costs more than ~6 digits, so evaluation
// is routed to the series fallback.
inline constexpr double lambda_one_guard = 1e-6;

inline bool near_lambda_one(double lambda) {
    return std::abs(lambda - 1.0) <= lambda_one_guard;
}

}  // namespace compoisson
