#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pairsim {

/// Runs body(k) for k in [0, count) on up to `workers` threads. The first
/// exception thrown by any body is rethrown after all threads join.
template <class Body>
void parallel_for(int count, int workers, Body&& body)
{
    workers = std::clamp(workers, 1, std::max(1, count));
    if (workers == 1) {
        for (int k = 0; k < count; ++k) {
            body(k);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (int k = next++; k < count; k = next++) {
            try {
                body(k);
            }
            catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace pairsim
