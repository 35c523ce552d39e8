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

#include "mixstab/channels.h"

#include <bit>
#include <stdexcept>
#include <utility>

namespace mixstab {

namespace {

constexpr uint64_t kPairLow = 0x5555555555555555ULL;

uint64_t transvection(uint64_t k, uint64_t v) {
    return symplectic_inner(k, v) ? v ^ k : v;
}

/// Finds h1, h2 with y = Z_h1 Z_h2 x, where Z_h is the transvection by h.
std::pair<uint64_t, uint64_t> find_transvection(uint64_t x, uint64_t y, size_t n) {
    if (x == y) {
        return {0, 0};
    }
    if (symplectic_inner(x, y)) {
        return {x ^ y, 0};
    }
    auto bit = [](uint64_t v, size_t b) -> uint64_t { return (v >> b) & 1; };
    uint64_t z = 0;
    for (size_t i = 0; i < n; i++) {
        size_t ii = 2 * i;
        uint64_t xi = (x >> ii) & 3, yi = (y >> ii) & 3;
        if (xi != 0 && yi != 0) {
            z |= (xi ^ yi) << ii;
            if (xi == yi) {
                z |= uint64_t{1} << (ii + 1);
                if (bit(x, ii) != bit(x, ii + 1)) {
                    z |= uint64_t{1} << ii;
                }
            }
            return {x ^ z, y ^ z};
        }
    }
    for (size_t i = 0; i < n; i++) {
        size_t ii = 2 * i;
        uint64_t xi = (x >> ii) & 3, yi = (y >> ii) & 3;
        if (xi != 0 && yi == 0) {
            if (bit(x, ii) == bit(x, ii + 1)) {
                z |= uint64_t{1} << (ii + 1);
            } else {
                z |= bit(x, ii) << (ii + 1);
                z |= bit(x, ii + 1) << ii;
            }
            break;
        }
    }
    for (size_t i = 0; i < n; i++) {
        size_t ii = 2 * i;
        uint64_t xi = (x >> ii) & 3, yi = (y >> ii) & 3;
        if (xi == 0 && yi != 0) {
            if (bit(y, ii) == bit(y, ii + 1)) {
                z |= uint64_t{1} << (ii + 1);
            } else {
                z |= bit(y, ii) << (ii + 1);
                z |= bit(y, ii + 1) << ii;
            }
            break;
        }
    }
    return {x ^ z, y ^ z};
}

/// Power of i in the product of the Hermitian two-qubit Paulis with codes u and v.
int product_phase(uint8_t u, uint8_t v) {
    uint64_t x1 = u & kPairLow, z1 = (u >> 1) & kPairLow;
    uint64_t x2 = v & kPairLow, z2 = (v >> 1) & kPairLow;
    uint64_t plus = (x1 & z1 & ~x2 & z2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
    uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2);
    return std::popcount(plus & kPairLow) - std::popcount(minus & kPairLow);
}

uint8_t code_of(const PauliString &p) {
    if (p.num_qubits() != 2) {
        throw std::invalid_argument("Clifford gate images must act on 2 qubits, got " + p.str());
    }
    return static_cast<uint8_t>(p.x(0) | (p.z(0) << 1) | (p.x(1) << 2) | (p.z(1) << 3));
}

PauliString pauli_of(uint8_t code, bool negative) {
    PauliString p(2);
    p.set_x(0, code & 1);
    p.set_z(0, (code >> 1) & 1);
    p.set_x(1, (code >> 2) & 1);
    p.set_z(1, (code >> 3) & 1);
    p.set_negative(negative);
    return p;
}

const std::vector<std::array<uint8_t, 4>> &two_qubit_symplectics() {
    static const std::vector<std::array<uint8_t, 4>> table = [] {
        std::vector<std::array<uint8_t, 4>> result;
        uint64_t order = symplectic_group_order(2);
        result.reserve(order);
        for (uint64_t i = 0; i < order; i++) {
            auto rows = symplectic_from_index(i, 2);
            result.push_back({static_cast<uint8_t>(rows[0]), static_cast<uint8_t>(rows[1]),
                              static_cast<uint8_t>(rows[2]), static_cast<uint8_t>(rows[3])});
        }
        return result;
    }();
    return table;
}

void check_site(const StabilizerState &state, size_t site) {
    if (site >= state.num_qubits()) {
        throw std::out_of_range(
            "site " + std::to_string(site) + " out of range for " + std::to_string(state.num_qubits()) + " qubits");
    }
}

void mul_commuting(PauliString &target, const PauliString &other) {
    if (target.inplace_right_mul_returning_phase(other) != 0) {
        throw std::logic_error("stabilizer generators unexpectedly anticommute");
    }
}

bool x_bit(const PauliString &p, size_t site) {
    return (p.xs()[site >> 6] >> (site & 63)) & 1;
}

bool z_bit(const PauliString &p, size_t site) {
    return (p.zs()[site >> 6] >> (site & 63)) & 1;
}

/// Shared tail of measure_pauli / measure_z once no generator anticommutes with the observable.
MeasurementResult measure_commuting(StabilizerState &state, const PauliString &observable, Rng &rng) {
    if (auto element = find_group_element(state, observable)) {
        return {element->negative() == observable.negative() ? +1 : -1, true};
    }
    int outcome = rng.coin() ? -1 : +1;
    PauliString added = observable;
    added.set_negative(observable.negative() != (outcome < 0));
    state.generators_mut().push_back(std::move(added));
    return {outcome, false};
}

}  // namespace

uint64_t symplectic_group_order(size_t n) {
    uint64_t order = 1;
    for (size_t j = 1; j <= n; j++) {
        order *= ((uint64_t{1} << (2 * j)) - 1) * (uint64_t{1} << (2 * j - 1));
    }
    return order;
}

std::vector<uint64_t> symplectic_from_index(uint64_t index, size_t n) {
    if (n == 0 || 2 * n > 64) {
        throw std::invalid_argument("symplectic_from_index supports 1 <= n <= 32");
    }
    if (n <= 5 && index >= symplectic_group_order(n)) {
        throw std::out_of_range("symplectic index out of range");
    }
    size_t nn = 2 * n;
    uint64_t s = (nn == 64 ? ~uint64_t{0} : (uint64_t{1} << nn) - 1);
    uint64_t k = (index % s) + 1;
    index /= s;

    uint64_t f1 = k;
    uint64_t e1 = 1;
    auto [t0, t1] = find_transvection(e1, f1, n);

    uint64_t bits = index % (uint64_t{1} << (nn - 1));
    uint64_t eprime = e1 | ((bits >> 1) << 2);
    uint64_t h0 = transvection(t1, transvection(t0, eprime));
    if (bits & 1) {
        f1 = 0;
    }

    std::vector<uint64_t> g(nn, 0);
    g[0] = 1;
    g[1] = 2;
    if (n > 1) {
        auto rest = symplectic_from_index(index >> (nn - 1), n - 1);
        for (size_t j = 0; j < rest.size(); j++) {
            g[j + 2] = rest[j] << 2;
        }
    }
    for (auto &row : g) {
        row = transvection(t0, row);
        row = transvection(t1, row);
        row = transvection(h0, row);
        row = transvection(f1, row);
    }
    return g;
}

CliffordGate CliffordGate::from_symplectic(const std::array<uint8_t, 4> &rows, uint8_t signs) {
    for (size_t a = 0; a < 4; a++) {
        if (rows[a] > 15) {
            throw std::invalid_argument("symplectic row out of range");
        }
        for (size_t b = 0; b < 4; b++) {
            bool expected = (a ^ b) == 1 && (a >> 1) == (b >> 1);
            if (symplectic_inner(rows[a], rows[b]) != expected) {
                throw std::invalid_argument("Clifford images do not preserve commutation relations");
            }
        }
    }
    CliffordGate gate;
    for (uint8_t c = 0; c < 16; c++) {
        int phase = ((c & 1) & (c >> 1)) + (((c >> 2) & 1) & (c >> 3));
        uint8_t code = 0;
        for (size_t r = 0; r < 4; r++) {
            if ((c >> r) & 1) {
                phase += product_phase(code, rows[r]);
                code ^= rows[r];
                if ((signs >> r) & 1) {
                    phase += 2;
                }
            }
        }
        phase &= 3;
        if (phase & 1) {
            throw std::logic_error("Clifford conjugation produced a non-Hermitian image");
        }
        gate.table_[c] = static_cast<uint8_t>(code | (phase ? 16 : 0));
    }
    return gate;
}

CliffordGate CliffordGate::from_images(const std::array<PauliString, 4> &images) {
    std::array<uint8_t, 4> rows{};
    uint8_t signs = 0;
    for (size_t r = 0; r < 4; r++) {
        rows[r] = code_of(images[r]);
        signs |= static_cast<uint8_t>(images[r].negative() << r);
    }
    return from_symplectic(rows, signs);
}

CliffordGate CliffordGate::identity() {
    return from_symplectic({1, 2, 4, 8}, 0);
}

CliffordGate CliffordGate::cnot() {
    // X1 -> X1 X2, Z1 -> Z1, X2 -> X2, Z2 -> Z1 Z2.
    return from_symplectic({1 | 4, 2, 4, 2 | 8}, 0);
}

CliffordGate CliffordGate::hadamard_first() {
    return from_symplectic({2, 1, 4, 8}, 0);
}

CliffordGate CliffordGate::phase_first() {
    // X -> Y, Z -> Z.
    return from_symplectic({3, 2, 4, 8}, 0);
}

CliffordGate CliffordGate::swap() {
    return from_symplectic({4, 8, 1, 2}, 0);
}

std::array<PauliString, 4> CliffordGate::images() const {
    std::array<PauliString, 4> result;
    for (size_t r = 0; r < 4; r++) {
        uint8_t out = table_[1u << r];
        result[r] = pauli_of(out & 15, out >> 4);
    }
    return result;
}

std::array<uint8_t, 4> CliffordGate::symplectic_rows() const {
    return {static_cast<uint8_t>(table_[1] & 15), static_cast<uint8_t>(table_[2] & 15),
            static_cast<uint8_t>(table_[4] & 15), static_cast<uint8_t>(table_[8] & 15)};
}

uint8_t CliffordGate::sign_bits() const {
    return static_cast<uint8_t>((table_[1] >> 4) | ((table_[2] >> 4) << 1) | ((table_[4] >> 4) << 2) |
                                ((table_[8] >> 4) << 3));
}

CliffordGate sample_two_qubit_clifford(Rng &rng) {
    const auto &symplectics = two_qubit_symplectics();
    const auto &rows = symplectics[rng.below(symplectics.size())];
    auto signs = static_cast<uint8_t>(rng.next() >> 60);
    return CliffordGate::from_symplectic(rows, signs);
}

void apply_clifford(StabilizerState &state, const CliffordGate &gate, size_t first, size_t second) {
    check_site(state, first);
    check_site(state, second);
    if (first == second) {
        throw std::invalid_argument("two-qubit gate needs distinct sites");
    }
    size_t w1 = first >> 6, w2 = second >> 6;
    uint64_t b1 = uint64_t{1} << (first & 63), b2 = uint64_t{1} << (second & 63);
    for (auto &g : state.generators_mut()) {
        auto xs = g.xs_mut();
        auto zs = g.zs_mut();
        uint8_t code = static_cast<uint8_t>(((xs[w1] & b1) ? 1 : 0) | ((zs[w1] & b1) ? 2 : 0) |
                                            ((xs[w2] & b2) ? 4 : 0) | ((zs[w2] & b2) ? 8 : 0));
        if (code == 0) {
            continue;
        }
        uint8_t out = gate.conjugate_code(code);
        xs[w1] = (out & 1) ? (xs[w1] | b1) : (xs[w1] & ~b1);
        zs[w1] = (out & 2) ? (zs[w1] | b1) : (zs[w1] & ~b1);
        xs[w2] = (out & 4) ? (xs[w2] | b2) : (xs[w2] & ~b2);
        zs[w2] = (out & 8) ? (zs[w2] | b2) : (zs[w2] & ~b2);
        if (out & 16) {
            g.set_negative(!g.negative());
        }
    }
}

MeasurementResult measure_pauli(StabilizerState &state, const PauliString &observable, Rng &rng) {
    if (observable.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("observable size does not match state");
    }
    if (observable.is_identity()) {
        throw std::invalid_argument("cannot measure the identity");
    }
    auto &gens = state.generators_mut();
    size_t pivot = gens.size();
    for (size_t k = 0; k < gens.size(); k++) {
        if (!commutes(gens[k], observable)) {
            if (pivot == gens.size()) {
                pivot = k;
            } else {
                mul_commuting(gens[k], gens[pivot]);
            }
        }
    }
    if (pivot == gens.size()) {
        return measure_commuting(state, observable, rng);
    }
    int outcome = rng.coin() ? -1 : +1;
    gens[pivot] = observable;
    gens[pivot].set_negative(observable.negative() != (outcome < 0));
    return {outcome, false};
}

MeasurementResult measure_z(StabilizerState &state, size_t site, Rng &rng) {
    check_site(state, site);
    auto &gens = state.generators_mut();
    size_t pivot = gens.size();
    bool any_z = false;
    for (size_t k = 0; k < gens.size(); k++) {
        if (x_bit(gens[k], site)) {
            if (pivot == gens.size()) {
                pivot = k;
            } else {
                mul_commuting(gens[k], gens[pivot]);
            }
        } else if (z_bit(gens[k], site)) {
            any_z = true;
        }
    }
    if (pivot != gens.size()) {
        int outcome = rng.coin() ? -1 : +1;
        PauliString &g = gens[pivot];
        std::fill(g.xs_mut().begin(), g.xs_mut().end(), 0);
        std::fill(g.zs_mut().begin(), g.zs_mut().end(), 0);
        g.set_z(site, true);
        g.set_negative(outcome < 0);
        return {outcome, false};
    }
    PauliString observable = PauliString::single(state.num_qubits(), site, 'Z');
    if (!any_z) {
        // No element of the group touches the site, so Z_site cannot be in it.
        int outcome = rng.coin() ? -1 : +1;
        observable.set_negative(outcome < 0);
        gens.push_back(std::move(observable));
        return {outcome, false};
    }
    return measure_commuting(state, observable, rng);
}

bool dephase(StabilizerState &state, size_t site) {
    check_site(state, site);
    auto &gens = state.generators_mut();
    size_t pivot = gens.size();
    for (size_t k = 0; k < gens.size(); k++) {
        if (x_bit(gens[k], site)) {
            if (pivot == gens.size()) {
                pivot = k;
            } else {
                mul_commuting(gens[k], gens[pivot]);
            }
        }
    }
    if (pivot == gens.size()) {
        return false;
    }
    gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(pivot));
    return true;
}

}  // namespace mixstab
