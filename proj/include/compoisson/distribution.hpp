// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// Distribution layer over the normalizing constant: pmf, cdf, quantile,
// exact-inversion sampling, and series moments. All probabilities are
// normalized by a ZResult from a configurable evaluator (the certified
// series by default) and computed in log space.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <compoisson/detail/summation.hpp>
#include <compoisson/types.hpp>
#include <compoisson/z_series.hpp>

namespace compoisson {

// Normalized probability table over 0..support_max. support_max is the
// smallest N whose certified relative tail bound is below the build target
// (1e-15 by default); the mass beyond it is tracked in tail_mass_bound, so
// sum(probs) + tail_mass_bound stays within 1e-12 of one.
struct PmfTable {
    ComPoissonParams params{1.0, 1.0};
    std::int64_t support_max = 0;
    std::vector<double> probs;
    double tail_mass_bound = 0.0;
    double log_z = 0.0;
};

inline PmfTable build_pmf_table(const ComPoissonParams& params, const ZResult& z,
                                double tail_target = 1e-15) {
    validate(params);
    constexpr std::int64_t cap = 4000000;

    PmfTable table;
    table.params = params;
    table.log_z = z.log_value;
    if (params.lambda == 0.0) {
        table.probs = {1.0};
        return table;
    }

    // Collect term exponents until the certified tail is below target
    // relative to Z.
    std::vector<double> exponents{0.0};
    detail::TermExponentLadder ladder(params.lambda, params.nu);
    double log_tail = std::numeric_limits<double>::infinity();
    while (true) {
        const std::int64_t n = ladder.n;
        const double q_next = ladder.ratio_at(static_cast<double>(n + 2));
        if (q_next < 1.0) {
            const double l_next = ladder.l + ladder.log_lambda -
                                  params.nu * std::log(static_cast<double>(n + 1));
            log_tail = l_next - std::log1p(-q_next);
            if (log_tail - z.log_value <= std::log(tail_target))
                break;
        }
        ladder.advance();
        exponents.push_back(ladder.l);
        if (ladder.n >= cap)
            throw convergence_failure("build_pmf_table: support cap exceeded");
    }
    table.support_max = static_cast<std::int64_t>(exponents.size()) - 1;
    table.probs.resize(exponents.size());
    for (std::size_t i = 0; i < exponents.size(); ++i)
        table.probs[i] = std::exp(exponents[i] - z.log_value);
    table.tail_mass_bound = std::exp(log_tail - z.log_value);
    return table;
}

inline PmfTable build_pmf_table(const ComPoissonParams& params,
                                double tail_target = 1e-15) {
    return build_pmf_table(params, z_series(params), tail_target);
}

// COM-Poisson distribution with precomputed pmf/cdf tables. Immutable after
// construction and shareable across threads; sampling takes the caller's
// generator by reference so stream state is never shared implicitly.
class ComPoissonDistribution {
  public:
    explicit ComPoissonDistribution(const ComPoissonParams& params)
        : ComPoissonDistribution(params, z_series(params)) {}

    ComPoissonDistribution(const ComPoissonParams& params, const ZResult& z)
        : table_(build_pmf_table(params, z)) {
        cdf_.resize(table_.probs.size());
        detail::KahanSum running;
        for (std::size_t i = 0; i < table_.probs.size(); ++i) {
            running.add(table_.probs[i]);
            cdf_[i] = std::min(running.value(), 1.0);
        }
    }

    const ComPoissonParams& params() const { return table_.params; }
    const PmfTable& table() const { return table_; }

    double log_pmf(std::int64_t n) const {
        if (n < 0)
            return -std::numeric_limits<double>::infinity();
        if (table_.params.lambda == 0.0)
            return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
        detail::TermExponentLadder ladder(table_.params.lambda, table_.params.nu);
        for (std::int64_t i = 0; i < n; ++i)
            ladder.advance();
        return ladder.l - table_.log_z;
    }

    // Probabilities beyond the table come from the log-space formula rather
    // than being flushed to zero.
    double pmf(std::int64_t n) const {
        if (n < 0)
            return 0.0;
        if (n <= table_.support_max && static_cast<std::size_t>(n) < table_.probs.size())
            return table_.probs[static_cast<std::size_t>(n)];
        return std::exp(log_pmf(n));
    }

    double cdf(std::int64_t n) const {
        if (n < 0)
            return 0.0;
        if (static_cast<std::size_t>(n) < cdf_.size())
            return cdf_[static_cast<std::size_t>(n)];
        double c = cdf_.back();
        for (std::int64_t m = table_.support_max + 1; m <= n; ++m)
            c = std::min(c + pmf(m), 1.0);
        return c;
    }

    // min{ n : cdf(n) >= u } by table search, extending beyond the table if
    // u lands inside the certified tail mass.
    std::int64_t quantile(double u) const {
        if (!(u >= 0.0 && u < 1.0))
            throw std::domain_error("quantile: requires u in [0, 1)");
        const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        if (it != cdf_.end())
            return static_cast<std::int64_t>(it - cdf_.begin());
        constexpr std::int64_t extension_cap = 1000000;
        double c = cdf_.back();
        for (std::int64_t n = table_.support_max + 1;
             n <= table_.support_max + extension_cap; ++n) {
            c += pmf(n);
            if (c >= u)
                return n;
        }
        throw convergence_failure("quantile: extension cap hit; u too deep in the tail");
    }

    // Exact-inversion sampling: each draw applies quantile to one uniform
    // variate, so output is reproducible given the generator seed.
    template <class Urbg>
    std::int64_t sample_one(Urbg& rng) const {
        static_assert(Urbg::max() == std::numeric_limits<std::uint64_t>::max(),
                      "sample requires a 64-bit generator, e.g. std::mt19937_64");
        const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
        return quantile(u);
    }

    template <class Urbg>
    std::vector<std::int64_t> sample(Urbg& rng, std::int64_t count) const {
        std::vector<std::int64_t> out;
        out.reserve(static_cast<std::size_t>(count));
        for (std::int64_t i = 0; i < count; ++i)
            out.push_back(sample_one(rng));
        return out;
    }

  private:
    PmfTable table_;
    std::vector<double> cdf_;
};

// Single-probability convenience; builds the normalization on each call.
inline double pmf(const ComPoissonParams& params, std::int64_t n) {
    return ComPoissonDistribution(params).pmf(n);
}

inline double cdf(const ComPoissonParams& params, std::int64_t n) {
    return ComPoissonDistribution(params).cdf(n);
}

inline std::int64_t quantile(const ComPoissonParams& params, double u) {
    return ComPoissonDistribution(params).quantile(u);
}

struct Moments {
    double mean;
    double variance;
};

// Mean and variance by direct summation of n t_n and n^2 t_n with the same
// ratio-certified tail machinery as the series itself; all three sums are
// truncated together and normalized consistently.
inline Moments moments(const ComPoissonParams& params, double tol = z_series_default_tol) {
    validate(params);
    if (!(tol > 0.0))
        throw std::domain_error("moments: tol must be > 0");
    if (params.lambda == 0.0)
        return {0.0, 0.0};

    detail::KahanSum m0, m1, m2;
    double term = 1.0;
    m0.add(term);
    std::int64_t n = 0;
    while (true) {
        const double nn = static_cast<double>(n);
        const double q = params.lambda / std::pow(nn + 2.0, params.nu);
        if (n >= 1 && q * (nn + 2.0) * (nn + 2.0) / ((nn + 1.0) * (nn + 1.0)) < 1.0) {
            const double t_next = term * params.lambda / std::pow(nn + 1.0, params.nu);
            const double q1 = q * (nn + 2.0) / (nn + 1.0);
            const double q2 = q * (nn + 2.0) * (nn + 2.0) / ((nn + 1.0) * (nn + 1.0));
            const double b0 = t_next / (1.0 - q);
            const double b1 = (nn + 1.0) * t_next / (1.0 - q1);
            const double b2 = (nn + 1.0) * (nn + 1.0) * t_next / (1.0 - q2);
            if (b0 <= tol * m0.value() && b1 <= tol * std::max(m1.value(), tol) &&
                b2 <= tol * std::max(m2.value(), tol))
                break;
        }
        ++n;
        term *= params.lambda / std::pow(nn + 1.0, params.nu);
        if (term > 1e280 || m2.value() > 1e280)
            throw convergence_failure("moments: sums exceed the double range");
        m0.add(term);
        m1.add(static_cast<double>(n) * term);
        m2.add(static_cast<double>(n) * static_cast<double>(n) * term);
        if (n >= z_series_max_terms)
            throw convergence_failure("moments: iteration cap exceeded");
    }
    const double mean = m1.value() / m0.value();
    const double variance = std::max(0.0, m2.value() / m0.value() - mean * mean);
    return {mean, variance};
}

}  // namespace compoisson
