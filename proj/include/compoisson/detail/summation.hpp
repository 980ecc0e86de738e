// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// Compensated accumulation helpers. The cross-method agreement contracts sit
// at 1e-12 relative over sums of up to ~1e6 positive terms, which plain
// left-to-right addition cannot honor; everything here is Kahan-compensated.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace compoisson::detail {

// Kahan-compensated running sum.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Exponent of the term lambda^n / (n!)^nu, maintained incrementally:
//   l(n+1) = l(n) + ln lambda - nu * ln(n+1)
// with compensation so the drift stays at a few ulps of the exponent even
// after 1e6 steps. Both the series evaluator and the breakpoint evaluators
// walk this ladder, so shared rounding cancels when methods are compared.
struct TermExponentLadder {
    double log_lambda;
    double nu;
    std::int64_t n = 0;
    double l = 0.0;

  private:
    double comp_ = 0.0;

  public:
    TermExponentLadder(double lambda, double nu_)
        : log_lambda(std::log(lambda)), nu(nu_) {}

    // advance from term n to term n+1
    void advance() {
        ++n;
        const double inc = log_lambda - nu * std::log(static_cast<double>(n));
        const double y = inc - comp_;
        const double t = l + y;
        comp_ = (t - l) - y;
        l = t;
    }

    // ratio of consecutive terms t(n+1)/t(n) evaluated at index m:
    // lambda / m^nu
    double ratio_at(double m) const {
        return std::exp(log_lambda - nu * std::log(m));
    }
};

// Sum of exp(l_i) given the exponents, as (log of sum). The exponents are
// shifted by their maximum before exponentiation so the sum is computable
// whenever the individual terms are, representable or not.
inline double log_sum_exp(const std::vector<double>& exponents) {
    if (exponents.empty())
        return -std::numeric_limits<double>::infinity();
    double peak = exponents[0];
    for (const double l : exponents)
        if (l > peak) peak = l;
    KahanSum s;
    for (const double l : exponents)
        s.add(std::exp(l - peak));
    return peak + std::log(s.value());
}

}  // namespace compoisson::detail
