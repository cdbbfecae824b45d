#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace wasep {

// Runs body(i) for i in [0, count) on `workers` threads. Work items share
// nothing; results are written into caller-owned slots indexed by i, so the
// merged outcome is independent of scheduling.
inline void parallel_for(std::int64_t count, int workers,
                         const std::function<void(std::int64_t)>& body) {
    if (workers <= 1 || count <= 1) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr err = nullptr;
    std::mutex err_mutex;
    auto worker = [&]() {
        while (true) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace wasep
