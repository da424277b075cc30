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

#include <cstdint>
#include <random>

namespace qgeo {

/**
 * @brief Portable seeded generator.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Distributions are implemented here rather than with <random>'s
 * distribution classes, whose algorithms are implementation-defined, so a
 * given seed yields the same numbers with every standard library.
 *
 * Independent streams are keyed by derive_seed(), a SplitMix64 hash of
 * (master seed, stream tag, index).
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);

    /// Uniform integer in [0, n), unbiased by rejection. n > 0.
    std::uint64_t below(std::uint64_t n);

  private:
    std::mt19937_64 engine_;
};

/// One step of the SplitMix64 output function.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for stream `tag`, item `index` under `master`.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master,
                                        std::uint64_t tag,
                                        std::uint64_t index) noexcept;

/// Stream tags used by the experiment runner.
namespace stream {
inline constexpr std::uint64_t kStructure = 1;
inline constexpr std::uint64_t kParameters = 2;
inline constexpr std::uint64_t kDimensionSamples = 3;
inline constexpr std::uint64_t kPruneCheck = 4;
} // namespace stream

} // namespace qgeo
