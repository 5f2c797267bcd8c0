#pragma once

#include <functional>

namespace rnmw {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    double l1_norm = 0.0;
};

/// Adaptive Gauss-Kronrod integral of f over the finite interval [a, b].
/// Throws NumericError when the error estimate exceeds rel_tol * L1 norm.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10);

/// Integral over [0, inf) of g(x) = weight(x) * exp(-H(x)) for an increasing
/// cumulative hazard H. The variable change x = y^2 removes the square-root
/// behaviour at the origin; the range is truncated where exp(-H) underflows.
QuadratureResult integrate_against_survival(const std::function<double(double)>& weight,
                                            const std::function<double(double)>& cum_hazard,
                                            double rel_tol = 1e-10);

/// Same as integrate_against_survival but over [0, upper].
QuadratureResult integrate_against_survival(const std::function<double(double)>& weight,
                                            const std::function<double(double)>& cum_hazard,
                                            double upper, double rel_tol);

}  // namespace rnmw
