#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace gkl {

/// Generator used for every random draw in the library. Draws go through the
/// helpers below rather than <random> distributions, whose output differs
/// between standard library implementations.
using Rng = std::mt19937_64;

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent stream for item `index` under `seed`. Used to pre-draw
/// per-graph randomness so parallel schedules cannot change results.
[[nodiscard]] Rng derive_rng(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform integer in [0, bound); bound must be positive.
[[nodiscard]] std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform real in [0, 1).
[[nodiscard]] double uniform_unit(Rng& rng);

template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace gkl
