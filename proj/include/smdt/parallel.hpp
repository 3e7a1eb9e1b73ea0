#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace smdt {

inline int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Splits [0, total) into contiguous ranges, runs fn(begin, end) on each from
/// a worker thread, and returns the per-range results in range order, so any
/// merge done by the caller is deterministic regardless of scheduling.
template <typename Acc, typename Fn>
std::vector<Acc> map_ranges(std::uint64_t total, int jobs, Fn fn) {
    if (jobs < 1) jobs = 1;
    const std::uint64_t min_chunk = 1024;
    std::uint64_t chunks = static_cast<std::uint64_t>(jobs);
    if (total < min_chunk * chunks) chunks = total / min_chunk + 1;
    std::vector<Acc> results(static_cast<std::size_t>(chunks));
    if (chunks == 1) {
        results[0] = fn(std::uint64_t(0), total);
        return results;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(chunks));
    const std::uint64_t step = total / chunks;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        const std::uint64_t begin = c * step;
        const std::uint64_t end = (c + 1 == chunks) ? total : begin + step;
        workers.emplace_back(
            [&results, c, begin, end, &fn] { results[static_cast<std::size_t>(c)] = fn(begin, end); });
    }
    for (std::thread& w : workers) w.join();
    return results;
}

/// Dynamic scheduling for a small number of heavy, independent items.
/// fn(index) runs once per index; exceptions are collected and the first one
/// rethrown after all workers finish.
template <typename Fn>
void parallel_for_index(std::uint64_t count, int jobs, Fn fn) {
    if (jobs < 1) jobs = 1;
    if (jobs == 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> workers;
    const int n_workers = static_cast<int>(
        std::min<std::uint64_t>(count, static_cast<std::uint64_t>(jobs)));
    workers.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) workers.emplace_back(worker);
    for (std::thread& w : workers) w.join();
    if (error) std::rethrow_exception(error);
}

} // namespace smdt
