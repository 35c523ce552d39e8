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

#ifndef MIXSTAB_GF2_MATRIX_H
#define MIXSTAB_GF2_MATRIX_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mixstab {

/// Dense bit matrix over GF(2), rows packed into 64-bit words.
class Gf2Matrix {
   public:
    Gf2Matrix() = default;
    Gf2Matrix(size_t rows, size_t cols);

    static Gf2Matrix identity(size_t n);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    size_t words_per_row() const {
        return stride_;
    }

    bool get(size_t r, size_t c) const {
        return (bits_[r * stride_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(size_t r, size_t c, bool value);

    std::span<uint64_t> row(size_t r) {
        return {bits_.data() + r * stride_, stride_};
    }
    std::span<const uint64_t> row(size_t r) const {
        return {bits_.data() + r * stride_, stride_};
    }

    bool operator==(const Gf2Matrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> bits_;
};

/// Rank over GF(2). Takes the matrix by value because elimination runs in place.
size_t gf2_rank(Gf2Matrix m);

}  // namespace mixstab

#endif
