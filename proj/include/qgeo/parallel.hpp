// Copyright 2026 The qgeo Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qgeo {

/// Runs fn(i) for i in [0, n) on up to @p threads workers. Work items are
/// claimed dynamically, so callers must write results by index. The first
/// exception thrown by any item is rethrown after all workers finish.
template <class Fn> void parallel_for(int n, int threads, Fn &&fn) {
    threads = std::clamp(threads, 1, std::max(n, 1));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (int i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mu);
                        if (!error) {
                            error = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace qgeo
