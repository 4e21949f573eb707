#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace nspline {

/// SplitMix64 finalizer; a bijection on 64-bit words.
[[nodiscard]] std::uint64_t mix64(std::uint64_t z) noexcept;

/// Deterministic sub-seed from a parent seed and a list of coordinates,
/// e.g. derive_seed(seed, {m, rep}) for one cell of an experiment grid.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed,
                                        std::initializer_list<std::uint64_t> coords) noexcept;

/// Generator for one draw. The whole output sequence is a pure function of
/// (seed, draw_index), so draws can be produced in any order.
class DrawEngine {
public:
    using result_type = std::uint64_t;

    explicit DrawEngine(std::uint64_t key) noexcept : state_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on the open interval (0, 1), 53 random bits.
    double uniform() noexcept;
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) noexcept;
    /// Standard normal via Box-Muller; the spare value is cached.
    double normal() noexcept;

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Counter-based random stream: `seed` selects the stream, `draw_index`
/// counts the draws already consumed. Samplers take one draw per sample.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t draw_index = 0) noexcept
        : seed_(seed), draw_index_(draw_index) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t draw_index() const noexcept { return draw_index_; }

    /// Engine for an arbitrary draw, without touching the counter.
    [[nodiscard]] DrawEngine engine_at(std::uint64_t index) const noexcept;
    /// Engine for the current draw; advances the counter by one.
    DrawEngine next_draw() noexcept { return engine_at(draw_index_++); }
    /// Reserves `count` consecutive draws and returns the first index.
    std::uint64_t reserve(std::uint64_t count) noexcept {
        const auto first = draw_index_;
        draw_index_ += count;
        return first;
    }

private:
    std::uint64_t seed_;
    std::uint64_t draw_index_;
};

}  // namespace nspline
