#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace twistcube {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static contiguous split of [0, count) over `threads` workers.
// f(worker_index, begin, end) must only touch worker-owned state or
// disjoint output slots; results are then independent of the split.
template <class F>
void parallel_chunks(std::uint64_t count, unsigned threads, F&& f) {
    threads = resolve_threads(threads);
    if (count == 0) return;
    const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
    if (workers <= 1) {
        f(0u, std::uint64_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    const std::uint64_t base = count / workers;
    const std::uint64_t rem = count % workers;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t len = base + (w < rem ? 1 : 0);
        const std::uint64_t end = begin + len;
        if (w + 1 == workers) {
            f(w, begin, end);
        } else {
            pool.emplace_back([&f, w, begin, end] { f(w, begin, end); });
        }
        begin = end;
    }
    for (auto& t : pool) t.join();
}

template <class F>
void parallel_for(std::uint64_t count, unsigned threads, F&& f) {
    parallel_chunks(count, threads, [&f](unsigned, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) f(i);
    });
}

}  // namespace twistcube
