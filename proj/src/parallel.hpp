/*
 * Copyright 2026 The latcount Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace latcount {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates f(0..count-1) on a bounded pool. Results come back in index
/// order; if any call throws, the exception of the lowest index is rethrown.
template <class F>
auto parallel_map(std::size_t count, unsigned workers, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
    using Result = decltype(f(std::size_t{}));
    std::vector<std::optional<Result>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    const unsigned pool = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1));

    auto run = [&](std::size_t i) {
        try {
            slots[i].emplace(f(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    if (pool <= 1) {
        for (std::size_t i = 0; i < count; ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> threads;
        threads.reserve(pool);
        for (unsigned t = 0; t < pool; ++t) {
            threads.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) run(i);
            });
        }
    }

    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<Result> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace latcount
