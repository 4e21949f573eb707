#include "nspline/rng.hpp"

#include <cmath>
#include <numbers>

namespace nspline {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> coords) noexcept {
    std::uint64_t h = mix64(seed + kGolden);
    for (const auto c : coords) {
        h = mix64(h ^ mix64(c + kGolden));
    }
    return h;
}

DrawEngine::result_type DrawEngine::operator()() noexcept {
    state_ += kGolden;
    return mix64(state_);
}

double DrawEngine::uniform() noexcept {
    // (k + 0.5) / 2^53 never hits 0 or 1
    const std::uint64_t k = (*this)() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double DrawEngine::uniform(double lo, double hi) noexcept {
    const std::uint64_t k = (*this)() >> 11;
    return lo + (hi - lo) * (static_cast<double>(k) * 0x1.0p-53);
}

double DrawEngine::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

DrawEngine RngStream::engine_at(std::uint64_t index) const noexcept {
    return DrawEngine(mix64(mix64(seed_ ^ 0x5851F42D4C957F2DULL) + mix64(index + kGolden)));
}

}  // namespace nspline
