// Copyright 2026 The colloq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace colloq {

namespace detail {

// SplitMix64 finalizer (Steele, Lea & Flood; public-domain reference
// constants). Fully specified integer arithmetic, so streams are
// bit-identical on every platform.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace detail

// Deterministic random stream: SplitMix64 over a state advanced by the
// golden-ratio increment. One call to next_u64() is one "draw"; the
// draw-count contracts in augment.hpp are phrased in these units.
class RandomStream {
public:
    explicit constexpr RandomStream(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next_u64() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    // Uniform double in [0, 1) with 53 random bits; 1.0 is unreachable.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform index in [0, n) via the multiply-high reduction. Consumes
    // exactly one draw for any n (no rejection loop); the residual bias
    // is below n / 2^64.
    std::uint64_t next_index(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

// Splittable per-record stream: the seed is mix64 applied to the master
// seed, offset by the record index scaled by the golden-ratio constant
// and mixed once more. Streams are a pure function of (master_seed,
// index), so records can be processed in any order or in parallel with
// identical results.
inline constexpr RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t index) {
    const std::uint64_t seed = detail::mix64(detail::mix64(master_seed) + detail::kGolden * (index + 1));
    return RandomStream(seed);
}

}  // namespace colloq
