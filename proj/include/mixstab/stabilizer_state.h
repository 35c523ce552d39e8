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

#ifndef MIXSTAB_STABILIZER_STATE_H
#define MIXSTAB_STABILIZER_STATE_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixstab/gf2_matrix.h"
#include "mixstab/pauli_string.h"

namespace mixstab {

/// A mixed stabilizer state rho = 2^-L * sum of the elements of the group generated by `generators`.
///
/// Generators must pairwise commute, be independent over GF(2), and must not generate -I. The
/// constructor does not check this; call validate().
class StabilizerState {
   public:
    StabilizerState() = default;
    /// Maximally mixed state (no generators).
    explicit StabilizerState(size_t num_qubits);
    StabilizerState(size_t num_qubits, std::vector<PauliString> generators);

    /// |0...0>, generated by +Z_i on every site.
    static StabilizerState product_state(size_t num_qubits);
    /// Convenience: generators given as text, e.g. {"+XX", "+ZZ"}.
    static StabilizerState from_strs(const std::vector<std::string> &generators);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t num_generators() const {
        return generators_.size();
    }
    const std::vector<PauliString> &generators() const {
        return generators_;
    }
    std::vector<PauliString> &generators_mut() {
        return generators_;
    }

    /// tr(rho^2) = 2^(k - L).
    double purity() const;
    /// log2 of the purity, k - L.
    int purity_log2() const {
        return static_cast<int>(generators_.size()) - static_cast<int>(num_qubits_);
    }

    /// Generator masks as a k x 2L matrix, columns [x_0..x_{L-1} | z_0..z_{L-1}] (each half word aligned).
    Gf2Matrix generator_matrix() const;

    std::string str() const;
    bool operator==(const StabilizerState &other) const = default;

   private:
    size_t num_qubits_ = 0;
    std::vector<PauliString> generators_;
};

struct Violation {
    enum class Kind {
        kSizeMismatch,
        kTooManyGenerators,
        kNonCommuting,
        kDependent,
        kMinusIdentity,
    };
    Kind kind;
    std::string message;
};

/// Returns nullopt if every invariant holds, otherwise the first violated one.
std::optional<Violation> validate(const StabilizerState &state);

/// Returns the group element (with its sign) whose X/Z masks equal those of `target`, or nullopt if no
/// element of the group has that Pauli content. The sign of `target` is ignored.
std::optional<PauliString> find_group_element(const StabilizerState &state, const PauliString &target);

/// Rewrites the generators into the clipped gauge without changing the generated group.
///
/// Every site hosts at most two left endpoints and at most two right endpoints. Output rows are ordered by
/// left endpoint. The transformation is idempotent.
StabilizerState canonicalize(const StabilizerState &state);

/// JSON of the form {"L": 3, "generators": ["+ZII", ...]}.
std::string state_to_json(const StabilizerState &state);
StabilizerState state_from_json(std::string_view text);

std::ostream &operator<<(std::ostream &out, const StabilizerState &state);

}  // namespace mixstab

#endif
