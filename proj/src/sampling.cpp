#include "rnmw/distribution.hpp"

#include "detail.hpp"

namespace rnmw {

std::vector<double> sample(const RnmwParams& p, std::span<const double> uniforms) {
    validate(p);
    std::vector<double> out(uniforms.size());
    detail::parallel_for(static_cast<std::ptrdiff_t>(uniforms.size()),
                         [&](std::ptrdiff_t i) { out[i] = quantile(p, uniforms[i]); });
    return out;
}

std::vector<double> sample_serial(const RnmwParams& p, std::span<const double> uniforms) {
    validate(p);
    std::vector<double> out;
    out.reserve(uniforms.size());
    for (double u : uniforms) out.push_back(quantile(p, u));
    return out;
}

}  // namespace rnmw
