// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header and method dispatch.

#pragma once

#include <compoisson/dirichlet.hpp>
#include <compoisson/distribution.hpp>
#include <compoisson/gamma.hpp>
#include <compoisson/types.hpp>
#include <compoisson/z_cahen.hpp>
#include <compoisson/z_series.hpp>
#include <compoisson/z_special.hpp>

namespace compoisson {

inline bool is_integer_nu(double nu) { return nu == std::floor(nu); }

// Evaluate Z(lambda, nu) by the requested method. Integral methods route
// through the near-one fallback inside the guard band (the returned method
// tag then reads series). Methods defined only for integer nu reject other
// values with a domain error.
inline ZResult evaluate(const ComPoissonParams& params, Method method,
                        double tol = z_series_default_tol, const QuadConfig& quad = {}) {
    validate(params);
    switch (method) {
        case Method::series:
            return z_series(params, tol);
        case Method::cahen_exact:
            if (near_lambda_one(params.lambda))
                return z_cahen_near_one(params, tol);
            return z_cahen_exact(params, tol);
        case Method::cahen_quad:
            if (near_lambda_one(params.lambda))
                return z_cahen_near_one(params, tol);
            return z_cahen_quad(params, quad, tol);
        case Method::hypergeometric:
            if (!is_integer_nu(params.nu))
                throw std::domain_error("evaluate: hyper requires integer nu");
            return z_hypergeometric(params.lambda, static_cast<int>(params.nu), tol);
        case Method::shmueli: {
            if (!is_integer_nu(params.nu))
                throw std::domain_error("evaluate: shmueli requires integer nu");
            QuadConfig q = quad;
            q.rule = QuadConfig::Rule::trapezoid_periodic;
            q.dims = static_cast<int>(params.nu) - 1;
            return z_shmueli(params.lambda, static_cast<int>(params.nu), q);
        }
    }
    throw std::domain_error("evaluate: unknown method");
}

}  // namespace compoisson
