#include "rnmw/quadrature.hpp"

#include "rnmw/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace rnmw {

namespace {

constexpr unsigned kMaxDepth = 20;
// exp(-746) underflows to zero in double precision.
constexpr double kUnderflowHazard = 746.0;

void check(const QuadratureResult& r, double rel_tol, const char* what) {
    const double allowed = 10.0 * rel_tol * r.l1_norm;
    if (!std::isfinite(r.value) || (r.error_estimate > allowed && r.error_estimate > 1e-300)) {
        std::ostringstream msg;
        msg.precision(3);
        msg << what << ": quadrature did not converge (value " << r.value << ", error estimate "
            << r.error_estimate << ", L1 " << r.l1_norm << ", rel_tol " << rel_tol << ")";
        throw NumericError(msg.str());
    }
}

// Breakpoints 0 = y_0 < y_1 < ... in the y = sqrt(x) variable, doubling from the
// point where H(y^2) first exceeds 1 until exp(-H) underflows or `upper` is hit.
std::vector<double> survival_panels(const std::function<double(double)>& cum_hazard,
                                    double y_upper) {
    auto hy = [&](double y) { return cum_hazard(y * y); };
    double y = 1.0;
    for (int k = 0; k < 1100 && hy(y) < 1.0; ++k) y *= 2.0;
    for (int k = 0; k < 1100 && y > 1e-150 && hy(0.5 * y) >= 1.0; ++k) y *= 0.5;

    std::vector<double> cuts{0.0};
    for (int k = 0; k < 2100; ++k) {
        if (y >= y_upper) break;
        cuts.push_back(y);
        if (hy(y) >= kUnderflowHazard) return cuts;
        y *= 2.0;
    }
    if (std::isfinite(y_upper)) {
        cuts.push_back(y_upper);
        return cuts;
    }
    throw NumericError("survival integral: cumulative hazard never reaches underflow");
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    QuadratureResult r;
    if (a == b) return r;
    r.value = gauss_kronrod<double, 31>::integrate(f, a, b, kMaxDepth, rel_tol, &r.error_estimate,
                                                   &r.l1_norm);
    check(r, rel_tol, "integrate");
    return r;
}

QuadratureResult integrate_against_survival(const std::function<double(double)>& weight,
                                            const std::function<double(double)>& cum_hazard,
                                            double upper, double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    if (!(upper >= 0.0)) throw NumericError("survival integral: negative upper limit");
    const auto cuts = survival_panels(cum_hazard, std::sqrt(upper));

    auto integrand = [&](double y) {
        const double x = y * y;
        const double h = cum_hazard(x);
        if (h >= kUnderflowHazard) return 0.0;
        return 2.0 * y * weight(x) * std::exp(-h);
    };

    QuadratureResult total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double err = 0.0;
        double l1 = 0.0;
        total.value += gauss_kronrod<double, 31>::integrate(integrand, cuts[i], cuts[i + 1],
                                                            kMaxDepth, rel_tol, &err, &l1);
        total.error_estimate += err;
        total.l1_norm += l1;
    }
    check(total, rel_tol, "survival integral");
    return total;
}

QuadratureResult integrate_against_survival(const std::function<double(double)>& weight,
                                            const std::function<double(double)>& cum_hazard,
                                            double rel_tol) {
    return integrate_against_survival(weight, cum_hazard,
                                      std::numeric_limits<double>::infinity(), rel_tol);
}

}  // namespace rnmw
