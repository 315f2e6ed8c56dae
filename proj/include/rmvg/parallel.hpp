#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rmvg {

/// Worker count for a sweep: `requested` if positive, else the RMVG_THREADS
/// environment variable, else hardware concurrency. Always at least 1.
inline int thread_budget(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RMVG_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers. Work items
/// are claimed from a shared counter, so callers must write results into
/// slots indexed by i — aggregation order then never depends on scheduling.
/// The first exception thrown by any body is rethrown on the calling thread.
inline void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    if (count <= 0) return;
    const int workers = std::min(std::max(threads, 1), count);
    if (workers == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]() {
        for (;;) {
            const int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace rmvg
