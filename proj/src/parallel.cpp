#include "gkl/parallel.hpp"

namespace gkl {

namespace {
std::atomic<std::size_t> g_max_threads{0};
}

void set_max_threads(std::size_t threads) noexcept { g_max_threads = threads; }

std::size_t max_threads() noexcept {
    const std::size_t configured = g_max_threads;
    if (configured != 0) return configured;
    const std::size_t hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace gkl
