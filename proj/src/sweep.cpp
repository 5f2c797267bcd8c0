#include "rnmw/moments.hpp"

#include "detail.hpp"
#include "rnmw/error.hpp"

#include <cmath>
#include <exception>

namespace rnmw {

std::vector<double> GridAxis::values() const {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || !(step > 0.0))
        throw DomainError("grid axis: start/stop must be finite and step positive");
    std::vector<double> v;
    if (stop < start) return v;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    v.reserve(count);
    for (std::size_t i = 0; i < count; ++i) v.push_back(start + static_cast<double>(i) * step);
    return v;
}

GridSpec GridSpec::standard() {
    const GridAxis axis{0.1, 2.0, 0.1};
    return GridSpec{axis, axis, axis};
}

std::size_t GridSpec::cardinality() const {
    return alpha.values().size() * beta.values().size() * lambda.values().size();
}

namespace {

struct FlatGrid {
    std::vector<double> a, b, l;

    explicit FlatGrid(const GridSpec& g) : a(g.alpha.values()), b(g.beta.values()), l(g.lambda.values()) {
        if (a.empty() || b.empty() || l.empty()) throw DomainError("skew_kurt_grid: empty grid");
    }
    std::size_t size() const { return a.size() * b.size() * l.size(); }
    RnmwParams at(std::size_t i) const {
        const std::size_t nl = l.size(), nb = b.size();
        return RnmwParams{a[i / (nb * nl)], b[(i / nl) % nb], l[i % nl]};
    }
};

SweepRow evaluate(const RnmwParams& p) {
    SweepRow row;
    row.params = p;
    try {
        const auto s = central_stats(p);
        row.skewness = s.skewness;
        row.kurtosis = s.kurtosis;
        row.ok = std::isfinite(s.skewness) && std::isfinite(s.kurtosis);
        if (!row.ok) row.error = "non-finite moment ratio";
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> skew_kurt_grid(const GridSpec& grid) {
    const FlatGrid flat(grid);
    std::vector<SweepRow> rows(flat.size());
    detail::parallel_for(static_cast<std::ptrdiff_t>(rows.size()),
                         [&](std::ptrdiff_t i) { rows[i] = evaluate(flat.at(i)); });
    return rows;
}

std::vector<SweepRow> skew_kurt_grid_serial(const GridSpec& grid) {
    const FlatGrid flat(grid);
    std::vector<SweepRow> rows;
    rows.reserve(flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i) rows.push_back(evaluate(flat.at(i)));
    return rows;
}

}  // namespace rnmw
