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

#ifndef MIXSTAB_ENTANGLEMENT_H
#define MIXSTAB_ENTANGLEMENT_H

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mixstab/stabilizer_state.h"

namespace mixstab {

struct Bipartition {
    SiteSet a;
    SiteSet b;

    /// A = [0, L/2), B = [L/2, L).
    static Bipartition half_chain(size_t num_qubits);
    bool covers_all() const;
};

/// Entropy of region R in bits: |R| - |G_R| where G_R generates the subgroup supported inside R.
/// All Renyi entropies coincide with this value for stabilizer states.
int entropy(const StabilizerState &state, const SiteSet &region);

/// Logarithmic negativity in bits: half the GF(2) rank of the anticommutation matrix of the generators
/// restricted to `bp.a`. Requires `bp` to cover every site.
double negativity(const StabilizerState &state, const Bipartition &bp);

/// S_A + S_B - S_AB in bits.
int mutual_information(const StabilizerState &state, const Bipartition &bp);

/// counts[len] = number of clipped-gauge generators whose support spans `len` sites; counts[0] is unused.
std::vector<size_t> length_distribution(const StabilizerState &state);

/// One row of the observable time series.
struct ObservableRecord {
    uint64_t trajectory_id = 0;
    size_t time = 0;
    int s_a = 0;
    int s_b = 0;
    int s_ab = 0;
    double negativity = 0;
    int mutual_information = 0;
    int purity_log2 = 0;
};

ObservableRecord measure_observables(const StabilizerState &state, const Bipartition &bp, uint64_t trajectory_id,
                                     size_t time);

/// "trajectory_id,time,S_A,S_B,S_AB,E,I,purity_log2"
void write_observable_csv_header(std::ostream &out);
void write_observable_csv_row(std::ostream &out, const ObservableRecord &record);

}  // namespace mixstab

#endif
