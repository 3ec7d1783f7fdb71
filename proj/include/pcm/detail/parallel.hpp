#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pcm::detail {

/// Runs task(worker, chunk) for every chunk in [0, chunks) on `workers`
/// threads. Chunks are handed out dynamically, so callers must make the
/// combined result independent of which worker ran which chunk. The first
/// exception thrown by any task is rethrown after all threads join.
template <class Task>
void run_chunks(std::size_t chunks, unsigned workers, Task&& task) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<bool> stop{false};

    auto body = [&](unsigned worker) {
        for (;;) {
            if (stop.load(std::memory_order_relaxed)) return;
            const std::size_t chunk = next.fetch_add(1);
            if (chunk >= chunks) return;
            try {
                task(worker, chunk);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                stop = true;
                return;
            }
        }
    };

    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(body, w);
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace pcm::detail
