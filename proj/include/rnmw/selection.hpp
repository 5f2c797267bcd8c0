#pragma once

#include "rnmw/likelihood.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace rnmw {

/// Penalized-likelihood criteria. Both small-sample corrections that go by
/// "CAIC" in the literature are kept: aicc = AIC + 2k(k+1)/(n-k-1) and
/// Bozdogan's caic = BIC + k.
struct CriteriaReport {
    double loglik = 0.0;
    int k = 0;
    int n = 0;
    double aic = 0.0;
    double bic = 0.0;
    std::optional<double> aicc;  // undefined for n <= k + 1
    double caic_bozdogan = 0.0;
};

CriteriaReport information_criteria(double loglik, int k, int n);

struct KmPoint {
    double time;
    double survival;
};

/// Product-limit estimate: right-continuous steps at the distinct failure times.
struct KmCurve {
    std::vector<KmPoint> steps;
    std::size_t n = 0;

    /// S(t), equal to 1 before the first failure.
    double at(double t) const;
};

KmCurve kaplan_meier(const Dataset& ds);

/// sup over failure times of max(|Fn(t) - F(t)|, |Fn(t-) - F(t)|) with
/// Fn = 1 - Kaplan-Meier; the classical two-sided statistic for complete data.
double ks_statistic(const Dataset& ds, const std::function<double(double)>& cdf);

struct LrtResult {
    double omega = 0.0;
    double p_value = 1.0;
    int df = 2;
};

/// omega = 2 (ll_nmw - ll_rnmw) against chi-square(2). Differences down to
/// -1e-6 are treated as optimizer noise and clamped to zero.
LrtResult likelihood_ratio_test(double loglik_nmw, double loglik_rnmw);

struct TttPoint {
    double u;
    double value;
};

struct TttCurve {
    std::vector<TttPoint> points;
};

/// Scaled total time on test at u = i/n, anchored at (0, 0). Complete data only.
TttCurve empirical_ttt(const Dataset& ds);

/// phi(u) = integral_0^{F^-1(u)} S(t) dt / mean, for each u in the grid.
TttCurve fitted_ttt(const RnmwParams& p, std::span<const double> u_grid);
TttCurve fitted_ttt(const NmwParams& q, std::span<const double> u_grid);

}  // namespace rnmw
