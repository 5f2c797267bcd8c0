#include "rnmw/roots.hpp"

#include "rnmw/error.hpp"

#include <cmath>
#include <string>

namespace rnmw {

double find_increasing_root(const std::function<double(double)>& f, double lo, double hi,
                            const RootOptions& opts) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    if (!(flo < 0.0)) throw NumericError("root bracket: f(lo) must be negative");

    double fhi = f(hi);
    for (int k = 0; !(fhi >= 0.0); ++k) {
        if (std::isnan(fhi)) throw NumericError("root bracket: f evaluated to NaN");
        if (k >= opts.max_expansions || !std::isfinite(hi))
            throw NumericError("root bracket: no sign change found while expanding upper end");
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = f(hi);
    }
    if (fhi == 0.0) return hi;

    int last_side = 0;
    bool bisect_next = false;
    double width_two_ago = hi - lo;
    for (int it = 0; it < opts.max_iter; ++it) {
        if (hi - lo <= opts.rel_tol * std::abs(hi)) return 0.5 * (lo + hi);

        double x = 0.5 * (lo + hi);
        if (!bisect_next && std::isfinite(fhi) && std::isfinite(flo)) {
            const double secant = lo - flo * (hi - lo) / (fhi - flo);
            if (secant > lo && secant < hi) x = secant;
        }
        bisect_next = false;

        const double fx = f(x);
        if (std::isnan(fx)) throw NumericError("root refinement: f evaluated to NaN");
        if (fx == 0.0) return x;
        if (fx < 0.0) {
            lo = x;
            flo = fx;
            if (last_side == -1) fhi *= 0.5;
            last_side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (last_side == 1) flo *= 0.5;
            last_side = 1;
        }

        if (it % 2 == 1) {
            if (hi - lo > 0.5 * width_two_ago) bisect_next = true;
            width_two_ago = hi - lo;
        }
    }
    throw NumericError("root refinement: iteration cap of " + std::to_string(opts.max_iter) +
                       " exhausted");
}

}  // namespace rnmw
