#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <vector>

namespace rnmw::detail {

// Above this lambda*x the exponential term is formed in log space.
inline constexpr double kLogSpaceThreshold = 700.0;

// coef * xpow * exp(lx) without spurious overflow when coef is tiny.
inline double scaled_exp(double coef, double xpow, double lx) {
    if (coef == 0.0 || xpow == 0.0) return 0.0;
    if (lx > kLogSpaceThreshold) return std::exp(std::log(coef) + std::log(xpow) + lx);
    return coef * xpow * std::exp(lx);
}

// x^e with the square root taken exactly for e = 1/2.
inline double shape_pow(double x, double e) {
    return e == 0.5 ? std::sqrt(x) : std::pow(x, e);
}

inline double log_add_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

// Runs body(i) for i in [0, n) across OpenMP threads. An exception from any
// iteration is rethrown after the loop; if several iterations throw, the one
// with the lowest index wins so the outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::ptrdiff_t n, Body&& body) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n > 0 ? n : 0));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace rnmw::detail
