#include "rnmw/selection.hpp"

#include "rnmw/error.hpp"
#include "rnmw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rnmw {

CriteriaReport information_criteria(double loglik, int k, int n) {
    if (k < 0 || n < 1) throw DomainError("information_criteria: need k >= 0 and n >= 1");
    CriteriaReport c;
    c.loglik = loglik;
    c.k = k;
    c.n = n;
    c.aic = -2.0 * loglik + 2.0 * k;
    c.bic = -2.0 * loglik + k * std::log(static_cast<double>(n));
    if (n > k + 1) c.aicc = c.aic + 2.0 * k * (k + 1.0) / (n - k - 1.0);
    c.caic_bozdogan = c.bic + k;
    return c;
}

double KmCurve::at(double t) const {
    double s = 1.0;
    for (const auto& p : steps) {
        if (p.time > t) break;
        s = p.survival;
    }
    return s;
}

namespace {

// Observations sorted by time with failures ahead of censorings at ties.
std::vector<Observation> sorted_failures_first(const Dataset& ds) {
    auto obs = ds.observations();
    std::stable_sort(obs.begin(), obs.end(), [](const Observation& a, const Observation& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.event == Event::Failure && b.event == Event::Censored;
    });
    return obs;
}

}  // namespace

KmCurve kaplan_meier(const Dataset& ds) {
    KmCurve km;
    km.n = ds.size();
    const auto obs = sorted_failures_first(ds);
    double s = 1.0;
    std::size_t at_risk = obs.size();
    for (std::size_t i = 0; i < obs.size();) {
        const double t = obs[i].time;
        std::size_t deaths = 0, leaving = 0;
        for (; i < obs.size() && obs[i].time == t; ++i, ++leaving)
            if (obs[i].event == Event::Failure) ++deaths;
        if (deaths > 0) {
            s *= 1.0 - static_cast<double>(deaths) / static_cast<double>(at_risk);
            km.steps.push_back({t, s});
        }
        at_risk -= leaving;
    }
    return km;
}

double ks_statistic(const Dataset& ds, const std::function<double(double)>& cdf) {
    const auto km = kaplan_meier(ds);
    double d = 0.0, prev = 0.0;
    for (const auto& step : km.steps) {
        const double fn = 1.0 - step.survival;
        const double f = cdf(step.time);
        d = std::max({d, std::abs(fn - f), std::abs(prev - f)});
        prev = fn;
    }
    return d;
}

LrtResult likelihood_ratio_test(double loglik_nmw, double loglik_rnmw) {
    const double diff = loglik_nmw - loglik_rnmw;
    if (!std::isfinite(diff)) throw DomainError("likelihood_ratio_test: non-finite log-likelihood");
    if (diff < -1e-6) {
        std::ostringstream msg;
        msg << "likelihood_ratio_test: the NMW log-likelihood is below the nested RNMW one by "
            << -diff << "; the NMW optimizer most likely stopped at a local optimum";
        throw NumericError(msg.str());
    }
    LrtResult r;
    r.omega = std::max(0.0, 2.0 * diff);
    r.p_value = std::exp(-0.5 * r.omega);
    return r;
}

TttCurve empirical_ttt(const Dataset& ds) {
    if (ds.has_censoring())
        throw InputError("empirical_ttt: censored observations are not supported");
    std::vector<double> x;
    x.reserve(ds.size());
    for (const auto& o : ds.observations()) x.push_back(o.time);
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    double total = 0.0;
    for (double v : x) total += v;

    TttCurve c;
    c.points.push_back({0.0, 0.0});
    double partial = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        partial += x[i - 1];
        const double ttt = partial + static_cast<double>(n - i) * x[i - 1];
        c.points.push_back({static_cast<double>(i) / static_cast<double>(n), ttt / total});
    }
    c.points.back().value = 1.0;
    return c;
}

namespace {

template <class CumHazard, class Quantile>
TttCurve fitted_ttt_impl(CumHazard&& cum_hazard, Quantile&& quantile_fn,
                         std::span<const double> u_grid) {
    for (double u : u_grid)
        if (!(u > 0.0 && u < 1.0)) throw DomainError("fitted_ttt: grid must lie strictly in (0, 1)");
    const std::function<double(double)> H = cum_hazard;
    const auto one = [](double) { return 1.0; };
    const double mean = integrate_against_survival(one, H, 1e-10).value;
    TttCurve c;
    for (double u : u_grid) {
        const double q = quantile_fn(u);
        const double part = integrate_against_survival(one, H, q, 1e-10).value;
        c.points.push_back({u, std::min(1.0, part / mean)});
    }
    return c;
}

}  // namespace

TttCurve fitted_ttt(const RnmwParams& p, std::span<const double> u_grid) {
    validate(p);
    return fitted_ttt_impl([&](double x) { return cumulative_hazard(p, x); },
                           [&](double u) { return quantile(p, u); }, u_grid);
}

TttCurve fitted_ttt(const NmwParams& q, std::span<const double> u_grid) {
    validate(q);
    return fitted_ttt_impl([&](double x) { return nmw_cumulative_hazard(q, x); },
                           [&](double u) { return nmw_quantile(q, u); }, u_grid);
}

}  // namespace rnmw
