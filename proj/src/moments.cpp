#include "rnmw/moments.hpp"

#include "rnmw/error.hpp"
#include "rnmw/quadrature.hpp"

#include <cmath>
#include <limits>

namespace rnmw {

namespace {

void check_series_inputs(const RnmwParams& p, const SeriesConfig& cfg) {
    validate(p);
    if (p.alpha == 0.0) throw DomainError("moment series: requires alpha > 0");
    if (cfg.max_terms_per_index < 2 || !(cfg.abs_tolerance > 0.0) || !(cfg.divergence_ratio > 1.0))
        throw DomainError("moment series: invalid SeriesConfig");
}

// Accumulates diagonal blocks and decides convergence or divergence.
class BlockSummer {
public:
    BlockSummer(double first, const SeriesConfig& cfg) : cfg_(cfg), sum_(first) {}

    // Returns false once summation should stop.
    bool add(double block, int terms) {
        const double mag = std::abs(block);
        if (!std::isfinite(block) || (mag > cfg_.divergence_ratio * min_mag_)) {
            diverged_ = true;
            return false;
        }
        sum_ += block;
        terms_ += terms;
        last_ = mag;
        if (mag <= min_mag_) {
            min_mag_ = mag;
            best_sum_ = sum_;
            best_terms_ = terms_;
        }
        small_run_ = mag <= cfg_.abs_tolerance ? small_run_ + 1 : 0;
        return small_run_ < 2;
    }

    SeriesResult result() const {
        SeriesResult r;
        if (!diverged_ && small_run_ >= 2) {
            r.value = sum_;
            r.terms_used = terms_;
            r.converged = true;
            r.last_term_magnitude = last_;
        } else {
            r.value = best_sum_;
            r.terms_used = best_terms_;
            r.converged = false;
            r.last_term_magnitude = min_mag_;
        }
        return r;
    }

private:
    const SeriesConfig& cfg_;
    double sum_;
    double best_sum_ = sum_;
    int terms_ = 1;
    int best_terms_ = 1;
    double last_ = std::numeric_limits<double>::infinity();
    double min_mag_ = std::numeric_limits<double>::infinity();
    int small_run_ = 0;
    bool diverged_ = false;
};

// log |(-beta)^n (n lambda)^m / (n! m!)|, or -inf when the factor vanishes
// (0^0 = 1 for the n = m = 0 corner).
double log_expansion_factor(const RnmwParams& p, int n, int m) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (n > 0 && p.beta == 0.0) return kNegInf;
    if (m > 0 && (n == 0 || p.lambda == 0.0)) return kNegInf;
    double v = -std::lgamma(n + 1.0) - std::lgamma(m + 1.0);
    if (n > 0) v += n * std::log(p.beta);
    if (m > 0) v += m * std::log(n * p.lambda);
    return v;
}

}  // namespace

SeriesResult raw_moment_series(const RnmwParams& p, int r, const SeriesConfig& cfg) {
    check_series_inputs(p, cfg);
    if (r < 1) throw DomainError("raw_moment_series: r must be >= 1");
    const double log_alpha = std::log(p.alpha);

    auto term = [&](int n, int m) {
        const double lf = log_expansion_factor(p, n, m);
        if (lf == -std::numeric_limits<double>::infinity()) return 0.0;
        const double shape = n + 2.0 * (m + r);
        const double mag = std::exp(std::log(2.0 * r) + lf + std::lgamma(shape) - shape * log_alpha);
        return n % 2 == 0 ? mag : -mag;
    };

    BlockSummer summer(term(0, 0), cfg);
    for (int N = 1; N < cfg.max_terms_per_index; ++N) {
        double block = 0.0;
        for (int n = 0; n <= N; ++n) block += term(n, N - n);
        if (!summer.add(block, N + 1)) break;
    }
    return summer.result();
}

SeriesResult mgf_series(const RnmwParams& p, double t, const SeriesConfig& cfg) {
    check_series_inputs(p, cfg);
    if (!std::isfinite(t)) throw DomainError("mgf_series: t must be finite");
    if (t == 0.0) return SeriesResult{1.0, 1, true, 0.0};
    const double log_alpha = std::log(p.alpha);
    const double log_t = std::log(std::abs(t));

    auto term = [&](int n, int m, int k) {
        const double lf = log_expansion_factor(p, n, m);
        if (lf == -std::numeric_limits<double>::infinity()) return 0.0;
        const double shape = n + 2.0 * (m + k) + 2.0;
        const double mag = std::exp(std::log(2.0) + lf + (k + 1) * log_t - std::lgamma(k + 1.0) +
                                    std::lgamma(shape) - shape * log_alpha);
        const bool negative = (n % 2 == 1) != (t < 0.0 && k % 2 == 0);
        return negative ? -mag : mag;
    };

    BlockSummer summer(1.0 + term(0, 0, 0), cfg);
    for (int N = 1; N < cfg.max_terms_per_index; ++N) {
        double block = 0.0;
        int count = 0;
        for (int n = 0; n <= N; ++n)
            for (int m = 0; m <= N - n; ++m, ++count) block += term(n, m, N - n - m);
        if (!summer.add(block, count)) break;
    }
    return summer.result();
}

double raw_moment_quadrature(const RnmwParams& p, int r) {
    validate(p);
    if (r < 1) throw DomainError("raw_moment_quadrature: r must be >= 1");
    const double rr = r;
    auto weight = [rr](double x) { return rr * std::pow(x, rr - 1.0); };
    auto cum_hazard = [&p](double x) { return cumulative_hazard(p, x); };
    return integrate_against_survival(weight, cum_hazard, 1e-10).value;
}

CentralStats central_stats(const RnmwParams& p) {
    const double m1 = raw_moment_quadrature(p, 1);
    const double m2 = raw_moment_quadrature(p, 2);
    const double m3 = raw_moment_quadrature(p, 3);
    const double m4 = raw_moment_quadrature(p, 4);
    CentralStats s;
    s.mean = m1;
    s.variance = m2 - m1 * m1;
    if (!(s.variance > 0.0)) throw NumericError("central_stats: nonpositive variance");
    const double mu3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
    const double mu4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
    s.skewness = mu3 / std::pow(s.variance, 1.5);
    s.kurtosis = mu4 / (s.variance * s.variance);
    return s;
}

RnmwParams order_statistic_component(const RnmwParams& p, int r, int n, int l) {
    const double c = n + l + 1 - r;
    return RnmwParams{c * p.alpha, c * p.beta, p.lambda};
}

namespace {

void check_order(int r, int n) {
    if (n < 1 || r < 1 || r > n) throw DomainError("order statistic: need 1 <= r <= n");
}

}  // namespace

double order_statistic_pdf(const RnmwParams& p, int r, int n, double x) {
    validate(p);
    check_order(r, n);
    const auto w = order_statistic_weights<double>(r, n);
    double f = 0.0;
    for (int l = 0; l < r; ++l) f += w[l] * pdf(order_statistic_component(p, r, n, l), x);
    return f;
}

double order_statistic_moment(const RnmwParams& p, int r, int n, int k) {
    validate(p);
    check_order(r, n);
    if (k < 1) throw DomainError("order_statistic_moment: k must be >= 1");
    const auto w = order_statistic_weights<double>(r, n);
    double m = 0.0;
    for (int l = 0; l < r; ++l)
        m += w[l] * raw_moment_quadrature(order_statistic_component(p, r, n, l), k);
    return m;
}

}  // namespace rnmw
