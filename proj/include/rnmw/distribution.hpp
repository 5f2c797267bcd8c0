#pragma once

#include <optional>
#include <span>
#include <vector>

namespace rnmw {

/// Parameters of the reduced new modified Weibull law, with cumulative hazard
/// H(x) = alpha*sqrt(x) + beta*sqrt(x)*exp(lambda*x).
///
/// alpha and beta are scales (1/sqrt(time)), lambda is an acceleration
/// (1/time). Zero beta or lambda is admitted so that the Weibull(1/2)
/// sub-models are representable; alpha = beta = 0 is not a distribution.
struct RnmwParams {
    double alpha = 1.0;
    double beta = 0.0;
    double lambda = 0.0;

    friend bool operator==(const RnmwParams&, const RnmwParams&) = default;
};

/// Throws DomainError unless all fields are finite, nonnegative and
/// alpha + beta > 0.
void validate(const RnmwParams& p);

enum class HazardKind { Bathtub, Decreasing };

struct HazardShape {
    HazardKind kind = HazardKind::Decreasing;
    std::optional<double> minimum_location;
    std::optional<double> minimum_value;
};

double cumulative_hazard(const RnmwParams& p, double x);
double cdf(const RnmwParams& p, double x);
double survival(const RnmwParams& p, double x);

/// Density; x must be strictly positive since f is unbounded at the origin.
double pdf(const RnmwParams& p, double x);
double log_pdf(const RnmwParams& p, double x);

double hazard(const RnmwParams& p, double x);
double log_hazard(const RnmwParams& p, double x);

/// d/dx log h(x).
double hazard_log_derivative(const RnmwParams& p, double x);

/// Left side of beta (4 lambda^2 x^2 + 4 lambda x - 1) exp(lambda x) = alpha,
/// the zero condition of hazard_log_derivative; its positive root is the
/// hazard minimum.
double hazard_minimum_equation_lhs(const RnmwParams& p, double x);

/// Bathtub with the hazard minimum when beta > 0 and lambda > 0, otherwise
/// the hazard is monotone decreasing.
HazardShape hazard_shape(const RnmwParams& p);

/// Inverse CDF on [0, 1).
double quantile(const RnmwParams& p, double u);

/// Inverse-transform draws: element i is quantile(p, uniforms[i]).
/// Evaluated in parallel; the output does not depend on the thread count.
std::vector<double> sample(const RnmwParams& p, std::span<const double> uniforms);

/// Single-threaded reference for sample().
std::vector<double> sample_serial(const RnmwParams& p, std::span<const double> uniforms);

}  // namespace rnmw
