// Copyright 2026 The Stylo Authors
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

#ifndef STYLO_RNG_HPP
#define STYLO_RNG_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace stylo {

// Deterministic PRNG with a fixed cross-platform sequence. Splits, shuffles
// and corpus generation all route through this so that a given seed produces
// identical artifacts on every build. Standard <random> distributions are
// implementation-defined and would break byte-identical reruns.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // splitmix64 step.
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        // Rejection sampling keeps the distribution exactly uniform.
        std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_in(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    bool next_bool(double p_true) { return next_double() < p_true; }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_;
};

/// FNV-1a over bytes; used for config hashes and seed derivation.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Derives an independent stream seed, e.g. one per author.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    Rng r(seed ^ (salt * 0x9e3779b97f4a7c15ULL));
    return r.next_u64();
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
    return mix_seed(seed, fnv1a64(tag));
}

}  // namespace stylo

#endif  // STYLO_RNG_HPP
