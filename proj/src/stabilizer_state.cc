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

#include "mixstab/stabilizer_state.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace mixstab {

namespace {

/// Generator masks augmented with the set of original generators that were combined into each row.
/// Used to find products of generators with prescribed Pauli content.
class TrackedRows {
   public:
    explicit TrackedRows(const StabilizerState &state)
        : num_rows_(state.num_generators()),
          mask_words_(2 * words_for(state.num_qubits())),
          combo_words_(words_for(state.num_generators())),
          stride_(mask_words_ + combo_words_),
          data_(num_rows_ * stride_, 0) {
        size_t w = words_for(state.num_qubits());
        for (size_t r = 0; r < num_rows_; r++) {
            const PauliString &g = state.generators()[r];
            uint64_t *row = data_.data() + r * stride_;
            std::copy(g.xs().begin(), g.xs().end(), row);
            std::copy(g.zs().begin(), g.zs().end(), row + w);
            row[mask_words_ + (r >> 6)] |= uint64_t{1} << (r & 63);
        }
    }

    /// Row-reduces to echelon form. Returns the combinations that produced all-zero rows.
    std::vector<std::vector<size_t>> eliminate() {
        std::vector<std::vector<size_t>> dependencies;
        rank_ = 0;
        for (size_t w = 0; w < mask_words_ && rank_ < num_rows_; w++) {
            while (rank_ < num_rows_) {
                size_t pivot_row = num_rows_;
                int pivot_bit = 64;
                for (size_t r = rank_; r < num_rows_; r++) {
                    uint64_t v = row(r)[w];
                    if (v) {
                        int b = std::countr_zero(v);
                        if (b < pivot_bit) {
                            pivot_bit = b;
                            pivot_row = r;
                        }
                    }
                }
                if (pivot_row == num_rows_) {
                    break;
                }
                swap_rows(pivot_row, rank_);
                uint64_t bit = uint64_t{1} << pivot_bit;
                const uint64_t *p = row(rank_);
                for (size_t r = rank_ + 1; r < num_rows_; r++) {
                    uint64_t *q = row(r);
                    if (q[w] & bit) {
                        for (size_t k = w; k < stride_; k++) {
                            q[k] ^= p[k];
                        }
                    }
                }
                pivots_.push_back({w, pivot_bit});
                rank_++;
            }
        }
        for (size_t r = rank_; r < num_rows_; r++) {
            dependencies.push_back(combo(row(r)));
        }
        return dependencies;
    }

    size_t rank() const {
        return rank_;
    }

    /// Reduces a target mask against the echelon rows. Returns the combination if it reduces to zero.
    std::optional<std::vector<size_t>> solve(std::span<const uint64_t> xs, std::span<const uint64_t> zs) const {
        std::vector<uint64_t> t(stride_, 0);
        std::copy(xs.begin(), xs.end(), t.begin());
        std::copy(zs.begin(), zs.end(), t.begin() + static_cast<std::ptrdiff_t>(xs.size()));
        for (size_t r = 0; r < rank_; r++) {
            auto [w, b] = pivots_[r];
            if ((t[w] >> b) & 1) {
                const uint64_t *p = row(r);
                for (size_t k = w; k < stride_; k++) {
                    t[k] ^= p[k];
                }
            }
        }
        for (size_t k = 0; k < mask_words_; k++) {
            if (t[k]) {
                return std::nullopt;
            }
        }
        return combo(t.data());
    }

   private:
    uint64_t *row(size_t r) {
        return data_.data() + r * stride_;
    }
    const uint64_t *row(size_t r) const {
        return data_.data() + r * stride_;
    }
    void swap_rows(size_t a, size_t b) {
        if (a != b) {
            std::swap_ranges(row(a), row(a) + stride_, row(b));
        }
    }
    std::vector<size_t> combo(const uint64_t *r) const {
        std::vector<size_t> result;
        for (size_t w = 0; w < combo_words_; w++) {
            uint64_t v = r[mask_words_ + w];
            while (v) {
                result.push_back((w << 6) + std::countr_zero(v));
                v &= v - 1;
            }
        }
        return result;
    }

    size_t num_rows_;
    size_t mask_words_;
    size_t combo_words_;
    size_t stride_;
    std::vector<uint64_t> data_;
    std::vector<std::pair<size_t, int>> pivots_;
    size_t rank_ = 0;
};

PauliString product_of(const StabilizerState &state, const std::vector<size_t> &indices) {
    PauliString result(state.num_qubits());
    for (size_t i : indices) {
        result.inplace_right_mul_returning_phase(state.generators()[i]);
    }
    return result;
}

/// Interleaved column index (2*site for X, 2*site+1 for Z) of the leftmost nonzero bit.
size_t leading_column(const PauliString &p) {
    auto support = p.support_interval();
    if (!support) {
        return SIZE_MAX;
    }
    size_t s = support->first;
    return 2 * s + (p.x(s) ? 0 : 1);
}

uint8_t content_at(const PauliString &p, size_t site) {
    return static_cast<uint8_t>(p.x(site) | (p.z(site) << 1));
}

void mul_commuting(PauliString &target, const PauliString &other) {
    if (target.inplace_right_mul_returning_phase(other) != 0) {
        throw std::logic_error("stabilizer generators unexpectedly anticommute");
    }
}

}  // namespace

StabilizerState::StabilizerState(size_t num_qubits) : num_qubits_(num_qubits) {
}

StabilizerState::StabilizerState(size_t num_qubits, std::vector<PauliString> generators)
    : num_qubits_(num_qubits), generators_(std::move(generators)) {
}

StabilizerState StabilizerState::product_state(size_t num_qubits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("product_state needs at least one qubit");
    }
    StabilizerState result(num_qubits);
    for (size_t s = 0; s < num_qubits; s++) {
        result.generators_.push_back(PauliString::single(num_qubits, s, 'Z'));
    }
    return result;
}

StabilizerState StabilizerState::from_strs(const std::vector<std::string> &generators) {
    if (generators.empty()) {
        throw std::invalid_argument("from_strs needs at least one generator to fix the qubit count");
    }
    std::vector<PauliString> gens;
    for (const auto &g : generators) {
        gens.push_back(PauliString::from_str(g));
    }
    size_t n = gens.front().num_qubits();
    return StabilizerState(n, std::move(gens));
}

double StabilizerState::purity() const {
    return std::ldexp(1.0, purity_log2());
}

Gf2Matrix StabilizerState::generator_matrix() const {
    size_t w = words_for(num_qubits_);
    Gf2Matrix m(generators_.size(), 128 * w);
    for (size_t r = 0; r < generators_.size(); r++) {
        auto row = m.row(r);
        std::copy(generators_[r].xs().begin(), generators_[r].xs().end(), row.begin());
        std::copy(generators_[r].zs().begin(), generators_[r].zs().end(), row.begin() + static_cast<std::ptrdiff_t>(w));
    }
    return m;
}

std::string StabilizerState::str() const {
    std::string result = "{";
    for (size_t k = 0; k < generators_.size(); k++) {
        if (k) {
            result += ", ";
        }
        result += generators_[k].str();
    }
    return result + "}";
}

std::optional<Violation> validate(const StabilizerState &state) {
    const auto &gens = state.generators();
    for (size_t k = 0; k < gens.size(); k++) {
        if (gens[k].num_qubits() != state.num_qubits()) {
            return Violation{Violation::Kind::kSizeMismatch,
                             "generator " + std::to_string(k) + " has " + std::to_string(gens[k].num_qubits()) +
                                 " qubits, state has " + std::to_string(state.num_qubits())};
        }
    }
    for (size_t a = 0; a < gens.size(); a++) {
        for (size_t b = a + 1; b < gens.size(); b++) {
            if (!commutes(gens[a], gens[b])) {
                return Violation{Violation::Kind::kNonCommuting,
                                 "generators " + std::to_string(a) + " (" + gens[a].str() + ") and " +
                                     std::to_string(b) + " (" + gens[b].str() + ") anticommute"};
            }
        }
    }
    if (gens.size() > state.num_qubits()) {
        return Violation{Violation::Kind::kTooManyGenerators,
                         std::to_string(gens.size()) + " generators on " + std::to_string(state.num_qubits()) +
                             " qubits"};
    }
    TrackedRows rows(state);
    auto dependencies = rows.eliminate();
    if (!dependencies.empty()) {
        PauliString product = product_of(state, dependencies.front());
        if (product.negative()) {
            return Violation{Violation::Kind::kMinusIdentity, "generators produce -I, the state is empty"};
        }
        std::string which;
        for (size_t i : dependencies.front()) {
            which += (which.empty() ? "" : ",") + std::to_string(i);
        }
        return Violation{Violation::Kind::kDependent, "generators {" + which + "} are dependent"};
    }
    return std::nullopt;
}

std::optional<PauliString> find_group_element(const StabilizerState &state, const PauliString &target) {
    if (target.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("target size does not match state");
    }
    TrackedRows rows(state);
    rows.eliminate();
    auto combo = rows.solve(target.xs(), target.zs());
    if (!combo) {
        return std::nullopt;
    }
    return product_of(state, *combo);
}

StabilizerState canonicalize(const StabilizerState &state) {
    size_t n = state.num_qubits();
    std::vector<PauliString> rows = state.generators();
    for (const auto &g : rows) {
        if (g.is_identity()) {
            throw std::invalid_argument("cannot canonicalize a state with an identity generator");
        }
    }

    // Left sweep: echelon form over the interleaved column order (x_0, z_0, x_1, z_1, ...).
    size_t assigned = 0;
    for (size_t s = 0; s < n && assigned < rows.size(); s++) {
        for (int use_z = 0; use_z < 2 && assigned < rows.size(); use_z++) {
            auto has_bit = [&](const PauliString &p) { return use_z ? p.z(s) : p.x(s); };
            size_t found = rows.size();
            for (size_t r = assigned; r < rows.size(); r++) {
                if (has_bit(rows[r])) {
                    found = r;
                    break;
                }
            }
            if (found == rows.size()) {
                continue;
            }
            std::swap(rows[assigned], rows[found]);
            for (size_t r = assigned + 1; r < rows.size(); r++) {
                if (has_bit(rows[r])) {
                    mul_commuting(rows[r], rows[assigned]);
                }
            }
            assigned++;
        }
    }

    // Right sweep: only ever multiply a row by rows with a later leading column, which keeps every
    // leading column fixed while pulling right endpoints apart.
    std::vector<size_t> lead(rows.size());
    std::vector<size_t> right(rows.size());
    for (size_t r = 0; r < rows.size(); r++) {
        lead[r] = leading_column(rows[r]);
        right[r] = rows[r].support_interval()->second;
    }
    for (size_t s = n; s-- > 0;) {
        std::vector<size_t> ending;
        for (size_t r = 0; r < rows.size(); r++) {
            if (right[r] == s) {
                ending.push_back(r);
            }
        }
        std::sort(ending.begin(), ending.end(), [&](size_t a, size_t b) { return lead[a] > lead[b]; });
        std::vector<std::pair<size_t, uint8_t>> pivots;  // (row, lowest set bit of its content at s)
        for (size_t r : ending) {
            uint8_t v = content_at(rows[r], s);
            for (auto [q, bit] : pivots) {
                if ((v >> bit) & 1) {
                    mul_commuting(rows[r], rows[q]);
                    v = content_at(rows[r], s);
                }
            }
            if (v == 0) {
                right[r] = rows[r].support_interval()->second;
            } else {
                pivots.push_back({r, static_cast<uint8_t>(std::countr_zero(v))});
            }
        }
    }

    std::vector<size_t> order(rows.size());
    for (size_t r = 0; r < rows.size(); r++) {
        order[r] = r;
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return lead[a] < lead[b]; });
    std::vector<PauliString> sorted;
    sorted.reserve(rows.size());
    for (size_t r : order) {
        sorted.push_back(std::move(rows[r]));
    }
    return StabilizerState(n, std::move(sorted));
}

std::string state_to_json(const StabilizerState &state) {
    nlohmann::json j;
    j["L"] = state.num_qubits();
    j["generators"] = nlohmann::json::array();
    for (const auto &g : state.generators()) {
        j["generators"].push_back(g.str());
    }
    return j.dump();
}

StabilizerState state_from_json(std::string_view text) {
    auto j = nlohmann::json::parse(text);
    size_t n = j.at("L").get<size_t>();
    std::vector<PauliString> gens;
    for (const auto &g : j.at("generators")) {
        PauliString p = PauliString::from_str(g.get<std::string>());
        if (p.num_qubits() != n) {
            throw std::invalid_argument("generator " + p.str() + " does not have L=" + std::to_string(n) + " sites");
        }
        gens.push_back(std::move(p));
    }
    return StabilizerState(n, std::move(gens));
}

std::ostream &operator<<(std::ostream &out, const StabilizerState &state) {
    return out << state.str();
}

}  // namespace mixstab
