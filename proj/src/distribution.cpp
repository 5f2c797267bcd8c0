#include "rnmw/distribution.hpp"

#include "detail.hpp"
#include "rnmw/error.hpp"
#include "rnmw/roots.hpp"

#include <cmath>
#include <string>

namespace rnmw {

namespace {

void check_time(double x, const char* op) {
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError(std::string(op) + ": x must be finite and nonnegative");
}

void check_positive_time(double x, const char* op) {
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError(std::string(op) + ": x must be finite and strictly positive");
}

}  // namespace

void validate(const RnmwParams& p) {
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.lambda))
        throw DomainError("RNMW parameters must be finite");
    if (p.alpha < 0.0 || p.beta < 0.0 || p.lambda < 0.0)
        throw DomainError("RNMW parameters must be nonnegative");
    if (p.alpha == 0.0 && p.beta == 0.0)
        throw DomainError("RNMW parameters: alpha and beta cannot both be zero");
}

double cumulative_hazard(const RnmwParams& p, double x) {
    validate(p);
    check_time(x, "cumulative_hazard");
    const double s = std::sqrt(x);
    return p.alpha * s + detail::scaled_exp(p.beta, s, p.lambda * x);
}

double survival(const RnmwParams& p, double x) { return std::exp(-cumulative_hazard(p, x)); }

double cdf(const RnmwParams& p, double x) { return -std::expm1(-cumulative_hazard(p, x)); }

double log_hazard(const RnmwParams& p, double x) {
    validate(p);
    check_positive_time(x, "log_hazard");
    const double lx = p.lambda * x;
    double log_bracket;
    if (p.beta == 0.0) {
        log_bracket = std::log(p.alpha);
    } else {
        const double wear = std::log(p.beta) + std::log1p(2.0 * lx) + lx;
        log_bracket = p.alpha == 0.0 ? wear : detail::log_add_exp(std::log(p.alpha), wear);
    }
    return log_bracket - std::log(2.0) - 0.5 * std::log(x);
}

double hazard(const RnmwParams& p, double x) {
    validate(p);
    check_positive_time(x, "hazard");
    const double lx = p.lambda * x;
    if (lx > detail::kLogSpaceThreshold) return std::exp(log_hazard(p, x));
    return (p.alpha + p.beta * (1.0 + 2.0 * lx) * std::exp(lx)) / (2.0 * std::sqrt(x));
}

double log_pdf(const RnmwParams& p, double x) {
    check_positive_time(x, "pdf");
    return log_hazard(p, x) - cumulative_hazard(p, x);
}

double pdf(const RnmwParams& p, double x) { return std::exp(log_pdf(p, x)); }

double hazard_log_derivative(const RnmwParams& p, double x) {
    validate(p);
    check_positive_time(x, "hazard_log_derivative");
    const double lx = p.lambda * x;
    const double wear = p.beta * p.lambda * (2.0 * lx + 3.0);
    const double denom = p.alpha * std::exp(-lx) + p.beta * (2.0 * lx + 1.0);
    return -0.5 / x + wear / denom;
}

double hazard_minimum_equation_lhs(const RnmwParams& p, double x) {
    const double t = p.lambda * x;
    return p.beta * (4.0 * t * t + 4.0 * t - 1.0) * std::exp(t);
}

HazardShape hazard_shape(const RnmwParams& p) {
    validate(p);
    HazardShape shape;
    if (p.beta == 0.0 || p.lambda == 0.0) return shape;

    // In t = lambda x the stationarity condition is beta(4t^2 + 4t - 1)e^t = alpha;
    // dividing by e^t gives a form that is increasing from -(alpha + beta) at t = 0.
    auto g = [&](double t) { return p.beta * (4.0 * t * t + 4.0 * t - 1.0) - p.alpha * std::exp(-t); };
    const double x0 = find_increasing_root(g, 0.0, 1.0) / p.lambda;
    shape.kind = HazardKind::Bathtub;
    shape.minimum_location = x0;
    shape.minimum_value = hazard(p, x0);
    return shape;
}

double quantile(const RnmwParams& p, double u) {
    validate(p);
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in [0, 1)");
    if (u == 0.0) return 0.0;
    const double target = -std::log1p(-u);
    if (p.beta == 0.0 || p.lambda == 0.0) {
        const double y = target / (p.alpha + p.beta);
        return y * y;
    }
    // Solve in y = sqrt(x); H >= (alpha + beta) y bounds the root from above.
    auto g = [&](double y) {
        return p.alpha * y + detail::scaled_exp(p.beta, y, p.lambda * y * y) - target;
    };
    const double y = find_increasing_root(g, 0.0, target / (p.alpha + p.beta));
    return y * y;
}

}  // namespace rnmw
