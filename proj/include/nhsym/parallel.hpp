#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace nhsym {

// Runs body(i) for i in [0, n) across hardware threads. Each index is an
// independent unit of work writing only to its own output slot, so the result
// is identical for any schedule or thread count.
inline void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (hw == 1 || n < 256) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::int64_t>(hw, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            const std::int64_t begin = n * w / workers;
            const std::int64_t end = n * (w + 1) / workers;
            for (std::int64_t i = begin; i < end; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

// Order-independent deterministic reduction: pairwise tree summation.
inline double pairwise_sum(const std::vector<double>& values, std::size_t begin,
                           std::size_t end) {
    const std::size_t n = end - begin;
    if (n == 0) return 0.0;
    if (n <= 8) {
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) acc += values[i];
        return acc;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_sum(values, begin, mid) + pairwise_sum(values, mid, end);
}

inline double pairwise_sum(const std::vector<double>& values) {
    return pairwise_sum(values, 0, values.size());
}

}  // namespace nhsym
