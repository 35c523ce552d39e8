// Copyright 2026 The mixstab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIXSTAB_RNG_H
#define MIXSTAB_RNG_H

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace mixstab {

/// SplitMix64 finalizer.
constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr uint64_t hash_combine(uint64_t a, uint64_t b) {
    return mix64(a ^ mix64(b + 0x9E3779B97F4A7C15ULL));
}

/// Counter-based generator: output n is a pure function of (key, n), so streams are platform independent
/// and can be split into labeled substreams without coordination.
///
/// All derived quantities (uniform doubles, bounded integers, normals) are computed here rather than via
/// <random> distributions, whose outputs differ between standard library implementations.
class Rng {
   public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed) : key_(mix64(seed ^ 0x6A09E667F3BCC909ULL)) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<uint64_t>::max();
    }
    result_type operator()() {
        return next();
    }

    uint64_t next() {
        return mix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

    bool coin() {
        return next() >> 63;
    }

    /// Uniform integer in [0, n). Unbiased (rejection on the top of the range).
    uint64_t below(uint64_t n) {
        uint64_t limit = max() - max() % n;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Independent substream identified by `label`.
    Rng fork(uint64_t label) const {
        Rng r(0);
        r.key_ = hash_combine(key_, label);
        return r;
    }

    uint64_t key() const {
        return key_;
    }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace mixstab

#endif
