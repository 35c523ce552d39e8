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

#include "mixstab/gf2_matrix.h"

#include <bit>
#include <stdexcept>
#include <utility>

namespace mixstab {

Gf2Matrix::Gf2Matrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) >> 6), bits_(rows * ((cols + 63) >> 6), 0) {
}

Gf2Matrix Gf2Matrix::identity(size_t n) {
    Gf2Matrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m.set(k, k, true);
    }
    return m;
}

void Gf2Matrix::set(size_t r, size_t c, bool value) {
    if (r >= rows_ || c >= cols_) {
        throw std::out_of_range("Gf2Matrix index out of range");
    }
    uint64_t &w = bits_[r * stride_ + (c >> 6)];
    uint64_t bit = uint64_t{1} << (c & 63);
    w = value ? (w | bit) : (w & ~bit);
}

size_t gf2_rank(Gf2Matrix m) {
    size_t rank = 0;
    size_t stride = m.words_per_row();
    for (size_t w = 0; w < stride && rank < m.rows(); w++) {
        // Pivot within this word until no remaining row has a bit set in it.
        while (rank < m.rows()) {
            size_t pivot_row = m.rows();
            int pivot_bit = 64;
            for (size_t r = rank; r < m.rows(); r++) {
                uint64_t v = m.row(r)[w];
                if (v) {
                    int b = std::countr_zero(v);
                    if (b < pivot_bit) {
                        pivot_bit = b;
                        pivot_row = r;
                        if (b == 0) {
                            break;
                        }
                    }
                }
            }
            if (pivot_row == m.rows()) {
                break;
            }
            if (pivot_row != rank) {
                auto a = m.row(pivot_row);
                auto b = m.row(rank);
                for (size_t k = w; k < stride; k++) {
                    std::swap(a[k], b[k]);
                }
            }
            auto p = m.row(rank);
            uint64_t bit = uint64_t{1} << pivot_bit;
            for (size_t r = rank + 1; r < m.rows(); r++) {
                auto q = m.row(r);
                if (q[w] & bit) {
                    for (size_t k = w; k < stride; k++) {
                        q[k] ^= p[k];
                    }
                }
            }
            rank++;
        }
    }
    return rank;
}

}  // namespace mixstab
