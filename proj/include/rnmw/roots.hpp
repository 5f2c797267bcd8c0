#pragma once

#include <functional>

namespace rnmw {

struct RootOptions {
    double rel_tol = 1e-12;
    int max_iter = 200;
    int max_expansions = 1100;
};

/// Root of a continuous increasing function with f(lo) < 0.
///
/// If f(hi) < 0 the upper end is doubled until the sign changes. The bracket
/// is then refined by Illinois-modified regula falsi, falling back to a
/// bisection step whenever the bracket fails to halve over two iterations.
/// Throws NumericError when the expansion or iteration cap is exhausted.
double find_increasing_root(const std::function<double(double)>& f, double lo, double hi,
                            const RootOptions& opts = {});

}  // namespace rnmw
