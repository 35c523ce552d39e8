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


#ifndef MIXSTAB_PERMUTATION_H
#define MIXSTAB_PERMUTATION_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixstab {

/// A permutation of {0, ..., r-1} in one-line notation: element i maps to image[i].
class Permutation {
   public:
    Permutation() = default;
    /// Throws std::invalid_argument unless `image` is a bijection.
    explicit Permutation(std::vector<uint8_t> image);

    static Permutation identity(size_t r);
    /// (0 1 ... n-1) on the first n of r elements, i -> i+1.
    static Permutation cycle(size_t n, size_t r);

    size_t size() const {
        return image_.size();
    }
    uint8_t operator()(size_t i) const {
        return image_[i];
    }
    const std::vector<uint8_t> &image() const {
        return image_;
    }

    Permutation inverse() const;
    /// (this * other)(i) = this(other(i)).
    Permutation operator*(const Permutation &other) const;
    size_t num_cycles() const;
    /// Cycle notation with 1-based labels, fixed points omitted, e.g. "(1 2 3)(5 6)"; "()" for the identity.
    std::string str() const;

    bool operator==(const Permutation &other) const = default;
    auto operator<=>(const Permutation &other) const = default;

   private:
    std::vector<uint8_t> image_;
};

/// Minimal number of transpositions turning a into b: r - #cycles(a^-1 b).
size_t cayley_distance(const Permutation &a, const Permutation &b);
/// cayley_distance(identity, a).
size_t cayley_norm(const Permutation &a);

/// The boundary permutations of the replicated negativity on r = nk + 1 elements: C^(x)k (x) 1, its inverse
/// (the anticyclic version) and the identity.
struct ReplicaPermutations {
    Permutation c;
    Permutation c_bar;
    Permutation id;
};
ReplicaPermutations replica_permutations(size_t n, size_t k);

/// Lexicographically first D in S_r with
///   |C^-1 D| + |D| = |Cbar^-1 D| + |D| = |C|  and  |C^-1 D| + |D^-1 Cbar| = |C^-1 Cbar|,
/// or nullopt if none exists. Requires r = nk + 1 <= 9.
std::optional<Permutation> find_intermediate_d(size_t n, size_t k);

}  // namespace mixstab

#endif
