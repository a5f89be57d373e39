// Copyright 2026 The CTVP Project Authors
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

#ifndef CTVP_RNG_HPP
#define CTVP_RNG_HPP

#include <cstdint>
#include <vector>

namespace ctvp {

// splitmix64 step; used for seed derivation and as the PRNG core.
// We avoid std::uniform_int_distribution and friends: their output is
// implementation-defined, and experiment reports must be byte-identical
// across toolchains for a fixed seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derive a child seed from a parent seed and a stream tag.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) {
    std::uint64_t s = parent ^ (0xA0761D6478BD642FULL + tag * 0xE7037ED1A0B428DBULL);
    return splitmix64(s);
}

// Small deterministic PRNG with explicitly specified draw semantics.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Unbiased draw in [0, bound) via rejection sampling. bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    // Draw in [lo, hi] inclusive.
    std::int64_t next_range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bool(double p) { return next_double() < p; }

    // Weighted index draw; weights must be positive.
    std::size_t next_weighted(const std::vector<double>& weights);

    // Fisher-Yates shuffle of indices 0..n-1.
    std::vector<std::size_t> shuffled_indices(std::size_t n);

  private:
    std::uint64_t state_;
};

}  // namespace ctvp

#endif  // CTVP_RNG_HPP
