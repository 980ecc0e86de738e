// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// Gauss-Legendre nodes and weights on [-1, 1] for arbitrary order, by Newton
// iteration on the Legendre polynomial from Chebyshev initial guesses.

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace compoisson::detail {

struct GaussRule {
    std::vector<double> nodes;    // strictly inside (-1, 1)
    std::vector<double> weights;  // sum to 2
};

inline GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev guess for the i-th root (descending order)
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_n(x) and P'_n(x)
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace compoisson::detail
