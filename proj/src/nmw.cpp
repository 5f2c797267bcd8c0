#include "rnmw/nmw.hpp"

#include "detail.hpp"
#include "rnmw/error.hpp"
#include "rnmw/roots.hpp"

#include <cmath>
#include <limits>

namespace rnmw {

void validate(const NmwParams& q) {
    for (double v : {q.alpha, q.beta, q.gamma, q.theta, q.lambda})
        if (!std::isfinite(v)) throw DomainError("NMW parameters must be finite");
    if (q.alpha < 0.0 || q.beta < 0.0 || q.lambda < 0.0)
        throw DomainError("NMW parameters: alpha, beta, lambda must be nonnegative");
    if (q.gamma <= 0.0 || q.theta <= 0.0)
        throw DomainError("NMW parameters: shapes gamma and theta must be positive");
    if (q.alpha == 0.0 && q.beta == 0.0)
        throw DomainError("NMW parameters: alpha and beta cannot both be zero");
}

NmwParams to_nmw(const RnmwParams& p) {
    return NmwParams{p.alpha, p.beta, 0.5, 0.5, p.lambda};
}

double nmw_cumulative_hazard(const NmwParams& q, double x) {
    validate(q);
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError("nmw_cumulative_hazard: x must be finite and nonnegative");
    return q.alpha * detail::shape_pow(x, q.theta) +
           detail::scaled_exp(q.beta, detail::shape_pow(x, q.gamma), q.lambda * x);
}

double nmw_survival(const NmwParams& q, double x) { return std::exp(-nmw_cumulative_hazard(q, x)); }

double nmw_cdf(const NmwParams& q, double x) { return -std::expm1(-nmw_cumulative_hazard(q, x)); }

double nmw_hazard(const NmwParams& q, double x) {
    validate(q);
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("nmw_hazard: x must be finite and strictly positive");
    const double lx = q.lambda * x;
    const double early = q.alpha * q.theta * std::pow(x, q.theta - 1.0);
    const double wear = detail::scaled_exp(q.beta * (q.gamma + lx), std::pow(x, q.gamma - 1.0), lx);
    return early + wear;
}

double nmw_log_hazard(const NmwParams& q, double x) {
    validate(q);
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("nmw_log_hazard: x must be finite and strictly positive");
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const double lx = q.lambda * x;
    const double lnx = std::log(x);
    const double early =
        q.alpha > 0.0 ? std::log(q.alpha * q.theta) + (q.theta - 1.0) * lnx : kNegInf;
    const double wear =
        q.beta > 0.0 ? std::log(q.beta) + std::log(q.gamma + lx) + (q.gamma - 1.0) * lnx + lx
                     : kNegInf;
    return detail::log_add_exp(early, wear);
}

double nmw_pdf(const NmwParams& q, double x) {
    validate(q);
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError("nmw_pdf: x must be finite and nonnegative");
    if (x == 0.0) {
        if (q.theta < 1.0 || q.gamma < 1.0)
            throw DomainError("nmw_pdf: density is unbounded at x = 0 for shapes below 1");
        // pow(0, 0) = 1 picks out the shape-1 terms.
        return q.alpha * q.theta * std::pow(0.0, q.theta - 1.0) +
               q.beta * q.gamma * std::pow(0.0, q.gamma - 1.0);
    }
    return std::exp(nmw_log_hazard(q, x) - nmw_cumulative_hazard(q, x));
}

double nmw_quantile(const NmwParams& q, double u) {
    validate(q);
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("nmw_quantile: u must lie in [0, 1)");
    if (u == 0.0) return 0.0;
    const double target = -std::log1p(-u);
    if (q.beta == 0.0) return std::pow(target / q.alpha, 1.0 / q.theta);
    auto g = [&](double x) { return nmw_cumulative_hazard(q, x) - target; };
    return find_increasing_root(g, 0.0, 1.0);
}

}  // namespace rnmw
