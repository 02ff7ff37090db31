#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace biswarm {

/// Worker count for parallel sections: `requested` if positive, otherwise
/// the BISWARM_THREADS environment variable, otherwise hardware concurrency.
inline std::size_t resolve_thread_count(std::size_t requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("BISWARM_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) {
            return static_cast<std::size_t>(parsed);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Run fn(begin, end) over [0, count) split into contiguous blocks, one per
/// worker. Blocks, so fn must not touch shared mutable state across blocks.
template <typename Fn>
void parallel_for_blocks(std::size_t count, std::size_t n_threads, Fn&& fn) {
    if (count == 0) {
        return;
    }
    n_threads = resolve_thread_count(n_threads);
    if (n_threads > count) {
        n_threads = count;
    }
    if (n_threads <= 1) {
        fn(std::size_t{0}, count);
        return;
    }
    const std::size_t chunk = (count + n_threads - 1) / n_threads;
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        const std::size_t begin = t * chunk;
        if (begin >= count) {
            break;
        }
        const std::size_t end = std::min(begin + chunk, count);
        workers.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& w : workers) {
        w.join();
    }
}

} // namespace biswarm
