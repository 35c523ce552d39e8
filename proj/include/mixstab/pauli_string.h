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

#ifndef MIXSTAB_PAULI_STRING_H
#define MIXSTAB_PAULI_STRING_H

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mixstab {

/// Number of 64-bit words needed to hold `num_qubits` bits.
constexpr size_t words_for(size_t num_qubits) {
    return (num_qubits + 63) >> 6;
}

/// A set of sites, stored as a bit mask with the same word layout as a PauliString.
class SiteSet {
   public:
    SiteSet() = default;
    explicit SiteSet(size_t num_qubits);
    SiteSet(size_t num_qubits, std::initializer_list<size_t> sites);

    /// Sites [begin, end).
    static SiteSet interval(size_t num_qubits, size_t begin, size_t end);

    void insert(size_t site);
    bool contains(size_t site) const;
    size_t size() const;
    size_t num_qubits() const {
        return num_qubits_;
    }
    SiteSet complement() const;
    SiteSet operator|(const SiteSet &other) const;
    bool intersects(const SiteSet &other) const;
    std::vector<size_t> sites() const;
    std::span<const uint64_t> words() const {
        return words_;
    }
    bool operator==(const SiteSet &other) const = default;

   private:
    size_t num_qubits_ = 0;
    std::vector<uint64_t> words_;
};

/// A Hermitian Pauli string with sign +1 or -1.
///
/// Site i carries X if only bit i of `xs` is set, Z if only bit i of `zs` is set, and Y if both are set.
/// Bits beyond `num_qubits - 1` are always zero.
class PauliString {
   public:
    PauliString() = default;
    /// The identity on `num_qubits` qubits.
    explicit PauliString(size_t num_qubits);

    /// Parses text like "+XIZY" or "-ZZ" (sign optional, defaults to +). Site 0 is the first character.
    static PauliString from_str(std::string_view text);
    /// A single-site Pauli ('X', 'Y' or 'Z') on a string of `num_qubits` identities.
    static PauliString single(size_t num_qubits, size_t site, char pauli);

    size_t num_qubits() const {
        return num_qubits_;
    }
    bool negative() const {
        return negative_;
    }
    int sign() const {
        return negative_ ? -1 : +1;
    }
    void set_negative(bool negative) {
        negative_ = negative;
    }

    bool x(size_t site) const;
    bool z(size_t site) const;
    void set_x(size_t site, bool value);
    void set_z(size_t site, bool value);
    /// 'I', 'X', 'Y' or 'Z'.
    char pauli_at(size_t site) const;
    void set_pauli(size_t site, char pauli);

    std::span<const uint64_t> xs() const {
        return xs_;
    }
    std::span<const uint64_t> zs() const {
        return zs_;
    }
    std::span<uint64_t> xs_mut() {
        return xs_;
    }
    std::span<uint64_t> zs_mut() {
        return zs_;
    }

    bool is_identity() const;
    /// Number of sites with non-identity content.
    size_t weight() const;

    /// Leftmost and rightmost sites with nontrivial content, or nullopt for the identity.
    std::optional<std::pair<size_t, size_t>> support_interval() const;

    /// Multiplies `other` into this string from the right, returning the power of i (mod 4) that the
    /// product picks up beyond the stored sign. The stored sign absorbs the real part (-1) of the phase
    /// when the phase is 2; callers that need Hermitian results check that the return value is even.
    uint8_t inplace_right_mul_returning_phase(const PauliString &other);

    std::string str() const;
    bool operator==(const PauliString &other) const = default;

   private:
    size_t num_qubits_ = 0;
    bool negative_ = false;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

/// Result of multiplying two Pauli strings whose product need not be Hermitian.
struct PhasedPauli {
    PauliString pauli;
    /// Power of i multiplying `pauli`, in {0, 1, 2, 3}. Always 0 or 1 because the sign is stored in `pauli`.
    uint8_t i_power;
};

/// Full product a*b including a possible factor of i.
PhasedPauli multiply_phased(const PauliString &a, const PauliString &b);
/// Product a*b. Requires the product to be Hermitian (true whenever a and b commute).
PauliString multiply(const PauliString &a, const PauliString &b);
/// True iff the symplectic form of a and b vanishes.
bool commutes(const PauliString &a, const PauliString &b);
/// Clears all content outside `region` and sets the sign to +1.
PauliString restrict_to(const PauliString &a, const SiteSet &region);

std::ostream &operator<<(std::ostream &out, const PauliString &p);

}  // namespace mixstab

#endif
