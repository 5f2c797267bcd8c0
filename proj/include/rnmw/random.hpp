#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rnmw {

/// Seedable stream of uniforms on the open interval (0, 1).
///
/// Uses mt19937_64 and maps the top 53 bits to (k + 0.5) / 2^53, so the
/// sequence is identical on every platform (unlike std::uniform_real_distribution).
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        const std::uint64_t bits = engine_() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    std::vector<double> take(std::size_t n) {
        std::vector<double> out(n);
        for (auto& u : out) u = next();
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace rnmw
