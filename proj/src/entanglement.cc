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

#include "mixstab/entanglement.h"

#include <bit>
#include <ostream>
#include <stdexcept>

namespace mixstab {

namespace {

void check_region(const StabilizerState &state, const SiteSet &region) {
    if (region.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("region size does not match the state");
    }
}

void check_cover(const StabilizerState &state, const Bipartition &bp) {
    check_region(state, bp.a);
    check_region(state, bp.b);
    if (!bp.covers_all()) {
        throw std::invalid_argument("bipartition must split every site between A and B");
    }
}

}  // namespace

Bipartition Bipartition::half_chain(size_t num_qubits) {
    return {SiteSet::interval(num_qubits, 0, num_qubits / 2), SiteSet::interval(num_qubits, num_qubits / 2, num_qubits)};
}

bool Bipartition::covers_all() const {
    if (a.num_qubits() != b.num_qubits() || a.intersects(b)) {
        return false;
    }
    return (a | b).size() == a.num_qubits();
}

int entropy(const StabilizerState &state, const SiteSet &region) {
    check_region(state, region);
    size_t k = state.num_generators();
    if (k == 0) {
        return static_cast<int>(region.size());
    }
    size_t w = words_for(state.num_qubits());
    SiteSet complement = region.complement();
    auto outside = complement.words();
    Gf2Matrix m(k, 128 * w);
    for (size_t r = 0; r < k; r++) {
        const auto &g = state.generators()[r];
        auto row = m.row(r);
        for (size_t i = 0; i < w; i++) {
            row[i] = g.xs()[i] & outside[i];
            row[w + i] = g.zs()[i] & outside[i];
        }
    }
    size_t inside = k - gf2_rank(std::move(m));
    return static_cast<int>(region.size()) - static_cast<int>(inside);
}

double negativity(const StabilizerState &state, const Bipartition &bp) {
    check_cover(state, bp);
    size_t k = state.num_generators();
    size_t w = words_for(state.num_qubits());
    auto mask = bp.a.words();
    std::vector<uint64_t> xa(k * w), za(k * w);
    for (size_t r = 0; r < k; r++) {
        const auto &g = state.generators()[r];
        for (size_t i = 0; i < w; i++) {
            xa[r * w + i] = g.xs()[i] & mask[i];
            za[r * w + i] = g.zs()[i] & mask[i];
        }
    }
    Gf2Matrix j(k, k);
    for (size_t r = 0; r < k; r++) {
        for (size_t c = r + 1; c < k; c++) {
            int parity = 0;
            for (size_t i = 0; i < w; i++) {
                parity ^= std::popcount((xa[r * w + i] & za[c * w + i]) ^ (za[r * w + i] & xa[c * w + i])) & 1;
            }
            if (parity) {
                j.set(r, c, true);
                j.set(c, r, true);
            }
        }
    }
    return 0.5 * static_cast<double>(gf2_rank(std::move(j)));
}

int mutual_information(const StabilizerState &state, const Bipartition &bp) {
    check_cover(state, bp);
    return entropy(state, bp.a) + entropy(state, bp.b) - entropy(state, bp.a | bp.b);
}

std::vector<size_t> length_distribution(const StabilizerState &state) {
    std::vector<size_t> counts(state.num_qubits() + 1, 0);
    StabilizerState canonical = canonicalize(state);
    for (const auto &g : canonical.generators()) {
        auto span = g.support_interval();
        counts[span->second - span->first + 1]++;
    }
    return counts;
}

ObservableRecord measure_observables(const StabilizerState &state, const Bipartition &bp, uint64_t trajectory_id,
                                     size_t time) {
    check_cover(state, bp);
    ObservableRecord rec;
    rec.trajectory_id = trajectory_id;
    rec.time = time;
    rec.s_a = entropy(state, bp.a);
    rec.s_b = entropy(state, bp.b);
    rec.s_ab = static_cast<int>(state.num_qubits()) - static_cast<int>(state.num_generators());
    rec.negativity = negativity(state, bp);
    rec.mutual_information = rec.s_a + rec.s_b - rec.s_ab;
    rec.purity_log2 = state.purity_log2();
    return rec;
}

void write_observable_csv_header(std::ostream &out) {
    out << "trajectory_id,time,S_A,S_B,S_AB,E,I,purity_log2\n";
}

void write_observable_csv_row(std::ostream &out, const ObservableRecord &r) {
    out << r.trajectory_id << ',' << r.time << ',' << r.s_a << ',' << r.s_b << ',' << r.s_ab << ',' << r.negativity
        << ',' << r.mutual_information << ',' << r.purity_log2 << '\n';
}

}  // namespace mixstab
