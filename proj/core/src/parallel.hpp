// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace pentaspec::detail {

/// Index-space parallel loop with a fixed chunk partition: results written by
/// index stay deterministic regardless of scheduling.  Runs inline when
/// threads <= 1 or the range is small.
template <typename Fn>
void parallel_for(std::int64_t count, std::int64_t threads, Fn&& fn) {
    if (threads <= 1 || count < 2 * threads) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::int64_t workers = std::min<std::int64_t>(threads, count);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (std::int64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::int64_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

} // namespace pentaspec::detail
