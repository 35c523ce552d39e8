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


#include "mixstab/permutation.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mixstab {

Permutation::Permutation(std::vector<uint8_t> image) : image_(std::move(image)) {
    std::vector<bool> hit(image_.size(), false);
    for (auto v : image_) {
        if (v >= image_.size() || hit[v]) {
            throw std::invalid_argument("not a permutation");
        }
        hit[v] = true;
    }
}

Permutation Permutation::identity(size_t r) {
    if (r > 255) {
        throw std::invalid_argument("permutations are limited to 255 elements");
    }
    std::vector<uint8_t> image(r);
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image));
}

Permutation Permutation::cycle(size_t n, size_t r) {
    if (n > r) {
        throw std::invalid_argument("cycle longer than the permutation");
    }
    auto p = identity(r);
    for (size_t i = 0; i < n; i++) {
        p.image_[i] = static_cast<uint8_t>((i + 1) % n);
    }
    return p;
}

Permutation Permutation::inverse() const {
    std::vector<uint8_t> inv(image_.size());
    for (size_t i = 0; i < image_.size(); i++) {
        inv[image_[i]] = static_cast<uint8_t>(i);
    }
    return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation &other) const {
    if (other.size() != size()) {
        throw std::invalid_argument("permutation size mismatch");
    }
    std::vector<uint8_t> out(size());
    for (size_t i = 0; i < size(); i++) {
        out[i] = image_[other.image_[i]];
    }
    Permutation p;
    p.image_ = std::move(out);
    return p;
}

size_t Permutation::num_cycles() const {
    std::vector<bool> seen(size(), false);
    size_t cycles = 0;
    for (size_t i = 0; i < size(); i++) {
        if (!seen[i]) {
            cycles++;
            for (size_t j = i; !seen[j]; j = image_[j]) {
                seen[j] = true;
            }
        }
    }
    return cycles;
}

std::string Permutation::str() const {
    std::string out;
    std::vector<bool> seen(size(), false);
    for (size_t i = 0; i < size(); i++) {
        if (seen[i] || image_[i] == i) {
            continue;
        }
        out += "(";
        for (size_t j = i; !seen[j]; j = image_[j]) {
            seen[j] = true;
            out += (j == i ? "" : " ") + std::to_string(j + 1);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

size_t cayley_distance(const Permutation &a, const Permutation &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("permutation size mismatch");
    }
    return a.size() - (a.inverse() * b).num_cycles();
}

size_t cayley_norm(const Permutation &a) {
    return a.size() - a.num_cycles();
}

ReplicaPermutations replica_permutations(size_t n, size_t k) {
    if (n < 1 || k < 1) {
        throw std::invalid_argument("replica permutations need n, k >= 1");
    }
    size_t r = n * k + 1;
    auto id = Permutation::identity(r);
    std::vector<uint8_t> image = id.image();
    for (size_t block = 0; block < k; block++) {
        for (size_t i = 0; i < n; i++) {
            image[block * n + i] = static_cast<uint8_t>(block * n + (i + 1) % n);
        }
    }
    Permutation c(image);
    return {c, c.inverse(), id};
}

std::optional<Permutation> find_intermediate_d(size_t n, size_t k) {
    size_t r = n * k + 1;
    if (r > 9) {
        throw std::invalid_argument("brute-force search is limited to r = nk + 1 <= 9");
    }
    auto [c, c_bar, id] = replica_permutations(n, k);
    size_t c_norm = cayley_norm(c);
    size_t c_to_cbar = cayley_distance(c, c_bar);
    auto c_inv = c.inverse(), cbar_inv = c_bar.inverse();
    std::vector<uint8_t> image = id.image();
    do {
        Permutation d(image);
        size_t dn = cayley_norm(d);
        size_t from_c = r - (c_inv * d).num_cycles();
        if (from_c + dn != c_norm) {
            continue;
        }
        size_t from_cbar = r - (cbar_inv * d).num_cycles();
        if (from_cbar + dn == c_norm && from_c + from_cbar == c_to_cbar) {
            return d;
        }
    } while (std::next_permutation(image.begin(), image.end()));
    return std::nullopt;
}

}  // namespace mixstab
