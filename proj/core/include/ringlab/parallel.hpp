#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ringlab {

/// 0 means "all hardware threads".
inline unsigned resolve_threads(unsigned requested) noexcept
{
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `body(i, acc)` for every i in [0, count), splitting the range into
/// contiguous blocks across worker threads, then folds the per-worker
/// accumulators with `+=` in worker order. Deterministic whenever `body`
/// depends only on i and `+=` is exact (integer counts).
template <class Acc, class Body>
Acc parallel_accumulate(std::uint64_t count, unsigned threads, Body body)
{
    const auto workers = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(count, 1)));
    std::vector<Acc> partial(workers);
    if (workers == 1) {
        for (std::uint64_t i = 0; i < count; ++i) body(i, partial[0]);
        return partial[0];
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = count * w / workers;
        const std::uint64_t end = count * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                for (std::uint64_t i = begin; i < end; ++i) body(i, partial[w]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    Acc total{};
    for (auto& p : partial) total += p;
    return total;
}

} // namespace ringlab
