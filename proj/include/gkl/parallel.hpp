#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gkl {

/// Upper bound on worker threads used by the library; 0 selects the hardware
/// concurrency. Set once by the CLI's --threads flag.
void set_max_threads(std::size_t threads) noexcept;
[[nodiscard]] std::size_t max_threads() noexcept;

/// Calls `body(i)` for every i in [0, count). Iterations are claimed
/// dynamically, so `body` must write only to slots owned by `i`; results are
/// then independent of the schedule. The first exception thrown is rethrown
/// after all workers stop.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    const std::size_t workers = std::min(max_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace gkl
