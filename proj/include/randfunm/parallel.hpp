/*
   Copyright 2026 The randfunm Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace randfunm {

inline unsigned resolve_thread_count(unsigned requested)
{
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(worker, i) for i in [0, count), handing indices to workers on
/// demand. fn must only write state owned by index i or by the worker.
template <class Fn>
void parallel_for_dynamic(std::int64_t count, unsigned threads, Fn&& fn)
{
    threads = static_cast<unsigned>(std::min<std::int64_t>(resolve_thread_count(threads), std::max<std::int64_t>(count, 1)));
    if (threads <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(0u, i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (auto i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(w, i);
            } catch (...) {
                std::lock_guard lock(failure_lock);
                if (!failure) failure = std::current_exception();
                next.store(count);
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

} // namespace randfunm
