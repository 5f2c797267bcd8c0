#pragma once

#include "rnmw/distribution.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace rnmw {

struct SeriesConfig {
    int max_terms_per_index = 200;
    double abs_tolerance = 1e-12;
    /// Stop and report divergence once a diagonal block exceeds the smallest
    /// block seen so far by this factor.
    double divergence_ratio = 1e6;
};

struct SeriesResult {
    double value = 0.0;
    int terms_used = 0;
    bool converged = false;
    double last_term_magnitude = 0.0;
};

/// r-th raw moment from the double gamma-function series, summed in diagonal
/// blocks n + m = N. The expansion behind it diverges whenever beta > 0 and
/// lambda > 0; in that case the sum is cut at its smallest block and
/// converged is false.
SeriesResult raw_moment_series(const RnmwParams& p, int r, const SeriesConfig& cfg = {});

/// r-th raw moment as r * integral of x^(r-1) S(x), to 1e-10 relative.
double raw_moment_quadrature(const RnmwParams& p, int r);

/// Moment generating function from the triple series, diagonal blocks
/// n + m + k = N. Same convergence reporting as raw_moment_series.
SeriesResult mgf_series(const RnmwParams& p, double t, const SeriesConfig& cfg = {});

struct CentralStats {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;  // not excess: 3 for a normal law
};

CentralStats central_stats(const RnmwParams& p);

/// Inclusive arithmetic range start, start + step, ..., <= stop.
struct GridAxis {
    double start = 0.1;
    double stop = 2.0;
    double step = 0.1;

    std::vector<double> values() const;
};

struct GridSpec {
    GridAxis alpha;
    GridAxis beta;
    GridAxis lambda;

    /// 0.1, 0.2, ..., 2 on every axis (8000 points).
    static GridSpec standard();
    std::size_t cardinality() const;
};

struct SweepRow {
    RnmwParams params;
    double skewness = 0.0;
    double kurtosis = 0.0;
    bool ok = false;
    std::string error;
};

/// One row per grid point, ordered alpha-major then beta then lambda.
/// Points run in parallel; rows are written by grid index.
std::vector<SweepRow> skew_kurt_grid(const GridSpec& grid);
std::vector<SweepRow> skew_kurt_grid_serial(const GridSpec& grid);

/// Signed mixture weights n C(n-1, r-1) C(r-1, l) (-1)^l / (n + l + 1 - r),
/// l = 0..r-1, of the r-th order statistic out of n. T may be an exact
/// rational type.
template <class T>
std::vector<T> order_statistic_weights(int r, int n) {
    auto binom = [](int a, int b) {
        T c(1);
        for (int i = 1; i <= b; ++i) c = c * T(a - b + i) / T(i);
        return c;
    };
    const T lead = T(n) * binom(n - 1, r - 1);
    std::vector<T> w;
    w.reserve(static_cast<std::size_t>(r));
    for (int l = 0; l < r; ++l) {
        T term = lead * binom(r - 1, l) / T(n + l + 1 - r);
        w.push_back(l % 2 == 0 ? term : T(0) - term);
    }
    return w;
}

/// Component l of the mixture has alpha, beta scaled by n + l + 1 - r.
RnmwParams order_statistic_component(const RnmwParams& p, int r, int n, int l);

double order_statistic_pdf(const RnmwParams& p, int r, int n, double x);
double order_statistic_moment(const RnmwParams& p, int r, int n, int k);

}  // namespace rnmw
