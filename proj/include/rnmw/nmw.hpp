#pragma once

#include "rnmw/distribution.hpp"

namespace rnmw {

/// Five-parameter parent law with H(x) = alpha*x^theta + beta*x^gamma*exp(lambda*x).
/// gamma = theta = 1/2 gives RnmwParams.
struct NmwParams {
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 1.0;
    double theta = 1.0;
    double lambda = 0.0;

    friend bool operator==(const NmwParams&, const NmwParams&) = default;
};

void validate(const NmwParams& q);

/// Embeds an RNMW parameter point at gamma = theta = 1/2.
NmwParams to_nmw(const RnmwParams& p);

double nmw_cumulative_hazard(const NmwParams& q, double x);
double nmw_cdf(const NmwParams& q, double x);
double nmw_survival(const NmwParams& q, double x);
double nmw_hazard(const NmwParams& q, double x);
double nmw_log_hazard(const NmwParams& q, double x);

/// hazard * survival. x = 0 is allowed only when both shapes are >= 1.
double nmw_pdf(const NmwParams& q, double x);

double nmw_quantile(const NmwParams& q, double u);

}  // namespace rnmw
