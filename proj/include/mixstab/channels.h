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

#ifndef MIXSTAB_CHANNELS_H
#define MIXSTAB_CHANNELS_H

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "mixstab/pauli_string.h"
#include "mixstab/rng.h"
#include "mixstab/stabilizer_state.h"

namespace mixstab {

/// Number of elements of Sp(2n, F2).
uint64_t symplectic_group_order(size_t n);

/// The `index`-th element of Sp(2n, F2), built from symplectic transvections.
///
/// Row r is the image of basis vector r, with vectors laid out as (x_1, z_1, x_2, z_2, ...) in bits
/// 0, 1, 2, 3, .... The map index -> matrix is a bijection on [0, symplectic_group_order(n)), so a uniform
/// index gives a uniform group element. Requires 2n <= 64.
std::vector<uint64_t> symplectic_from_index(uint64_t index, size_t n);

/// Symplectic inner product of two interleaved (x_1, z_1, x_2, z_2, ...) bit vectors.
inline bool symplectic_inner(uint64_t a, uint64_t b) {
    uint64_t swapped = ((b & 0x5555555555555555ULL) << 1) | ((b >> 1) & 0x5555555555555555ULL);
    return std::popcount(a & swapped) & 1;
}

/// A two-qubit Clifford gate modulo global phase, stored as the conjugation images of X1, Z1, X2, Z2.
///
/// Internally a 16-entry lookup table maps the local (x1, z1, x2, z2) content of any Pauli string to its
/// image and a sign flip, so conjugating a generator costs O(1).
class CliffordGate {
   public:
    /// Images of X1, Z1, X2, Z2. Throws std::invalid_argument unless they are Hermitian two-qubit strings
    /// with the commutation relations of the originals.
    static CliffordGate from_images(const std::array<PauliString, 4> &images);
    /// From the symplectic rows (see symplectic_from_index) and four sign bits (bit r negates image r).
    static CliffordGate from_symplectic(const std::array<uint8_t, 4> &rows, uint8_t signs);

    static CliffordGate identity();
    /// Control is qubit 1.
    static CliffordGate cnot();
    static CliffordGate hadamard_first();
    static CliffordGate phase_first();
    static CliffordGate swap();

    /// Images of X1, Z1, X2, Z2.
    std::array<PauliString, 4> images() const;
    /// Symplectic part: image bit vectors in (x1, z1, x2, z2) order.
    std::array<uint8_t, 4> symplectic_rows() const;
    uint8_t sign_bits() const;

    /// Conjugation image of the local content `code` = x1 | z1 << 1 | x2 << 2 | z2 << 3.
    /// Bits 0-3 of the result are the image content, bit 4 is set when the sign flips.
    uint8_t conjugate_code(uint8_t code) const {
        return table_[code];
    }

    bool operator==(const CliffordGate &other) const = default;

   private:
    std::array<uint8_t, 16> table_{};
};

/// Uniformly random element of the two-qubit Clifford group modulo phase (11520 elements).
CliffordGate sample_two_qubit_clifford(Rng &rng);

/// Conjugates every generator by `gate` acting on (first, second) = (qubit 1, qubit 2).
void apply_clifford(StabilizerState &state, const CliffordGate &gate, size_t first, size_t second);

struct MeasurementResult {
    /// +1 or -1.
    int outcome;
    bool deterministic;
};

/// Projective measurement of the Hermitian Pauli string `observable`, sampling the outcome by the Born rule.
///
/// Deterministic when +-observable is in the group. Otherwise the outcome is a fair coin; if some generators
/// anticommute, the lowest-index one is multiplied into the others and then replaced by outcome*observable,
/// else outcome*observable is appended (purity doubles).
MeasurementResult measure_pauli(StabilizerState &state, const PauliString &observable, Rng &rng);

/// Same as measure_pauli(state, Z_site, rng), without materializing Z_site unless it is appended.
MeasurementResult measure_z(StabilizerState &state, size_t site, Rng &rng);

/// Computational-basis dephasing of one site. Returns true if a generator was removed (purity halves).
bool dephase(StabilizerState &state, size_t site);

}  // namespace mixstab

#endif
