#pragma once

#include <functional>

#include "xent/errors.hpp"
#include "xent/families.hpp"

namespace xent {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;

    void check() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1)
            throw InvalidParameters("QuadratureSpec: tolerances must be > 0 and "
                                    "max_subdivisions >= 1");
    }
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Integrand evaluated at x together with its exact distances to the support
/// endpoints (infinite when the endpoint is infinite). The distances stay
/// meaningful far below 1 ulp of x, which is what lets endpoint-singular
/// densities (x^(c-1) with small c) integrate to full accuracy.
using Integrand = std::function<double(double x, double dist_lo, double dist_hi)>;

/// Adaptive Gauss-Kronrod 7/15 integration of a plain function over a finite
/// interval, routed through a tanh-sinh endpoint transform. Throws
/// NonConvergent when the subdivision budget runs out and DivergentIntegral
/// when the integrand is detected as non-integrable.
QuadResult integrate_finite(const std::function<double(double)>& f, double lo,
                            double hi, const QuadratureSpec& spec);

/// Integrates a distance-aware integrand over the support of a univariate
/// family. Finite intervals use the tanh-sinh map; (lo, inf) uses the
/// exp-sinh map x = lo + e^{pi sinh u}; the real line uses the sinh-sinh map
/// x = sinh(pi/2 sinh u). All node positions are interior.
QuadResult integrate_over_support(const Integrand& f, const Support& support,
                                  const QuadratureSpec& spec);

}  // namespace xent
