// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file thread_pool.hpp
 * @brief Work-stealing over an indexed job list.
 *
 * Each index runs exactly once; workers pull from an atomic counter. Callers
 * write results into per-index slots, so output is deterministic regardless
 * of the thread budget.
 */

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace cgentropy {

template <class Fn>
void parallel_for_index(std::size_t count, int threads, Fn&& fn) {
    if (count == 0) return;
    threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace cgentropy
