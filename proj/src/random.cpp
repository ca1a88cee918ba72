#include "gkl/random.hpp"

#include "gkl/error.hpp"

namespace gkl {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng derive_rng(std::uint64_t seed, std::uint64_t index) noexcept {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) raise(ErrorKind::InvalidSpec, "uniform_below requires a positive bound");
    // Rejection sampling on the largest multiple of bound.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace gkl
