#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace slabio {

// SLABIO_WORKERS if set, otherwise the hardware concurrency.
int worker_count();

// Calls f(i) for i in [0, n) on up to `workers` threads. Results must be written
// to per-index slots so the outcome does not depend on scheduling. The first
// exception thrown by any call is rethrown here.
template <class F>
void parallel_for(std::size_t n, F&& f, int workers = worker_count()) {
    const std::size_t w = std::min<std::size_t>(n, static_cast<std::size_t>(workers < 1 ? 1 : workers));
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex m;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(m);
                if (!err) err = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < w; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// Pairwise sum; fixed association order for a given length.
double pairwise_sum(const double* x, std::size_t n);

}  // namespace slabio
