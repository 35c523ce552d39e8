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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "mixstab/dense.h"

using namespace mixstab;

namespace {

PauliString random_nontrivial_pauli(size_t n, Rng &rng) {
    PauliString p(n);
    while (p.is_identity()) {
        for (size_t q = 0; q < n; q++) {
            p.set_x(q, rng.coin());
            p.set_z(q, rng.coin());
        }
    }
    p.set_negative(rng.coin());
    return p;
}

void random_step(StabilizerState &s, Rng &rng) {
    size_t n = s.num_qubits();
    switch (rng.below(4)) {
        case 0: {
            size_t a = rng.below(n), b = rng.below(n - 1);
            if (b >= a) {
                b++;
            }
            apply_clifford(s, sample_two_qubit_clifford(rng), a, b);
            break;
        }
        case 1:
            measure_z(s, rng.below(n), rng);
            break;
        case 2:
            dephase(s, rng.below(n));
            break;
        default:
            measure_pauli(s, random_nontrivial_pauli(n, rng), rng);
            break;
    }
}

/// Every 4x4 bit matrix (rows = images of x1, z1, x2, z2) preserving the symplectic form, by exhaustion.
std::set<std::array<uint8_t, 4>> brute_force_sp4() {
    std::set<std::array<uint8_t, 4>> out;
    for (uint32_t m = 0; m < (1u << 16); m++) {
        std::array<uint8_t, 4> rows{};
        for (int r = 0; r < 4; r++) {
            rows[r] = (m >> (4 * r)) & 15;
        }
        bool ok = true;
        for (int a = 0; a < 4 && ok; a++) {
            for (int b = 0; b < 4 && ok; b++) {
                bool expected = (a ^ b) == 1;
                ok = symplectic_inner(rows[a], rows[b]) == expected;
            }
        }
        if (ok) {
            out.insert(rows);
        }
    }
    return out;
}

double max_abs(const dense::Matrix &m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST(channels, symplectic_enumeration_n2) {
    auto expected = brute_force_sp4();
    ASSERT_EQ(expected.size(), 720u);
    ASSERT_EQ(symplectic_group_order(2), 720u);
    std::set<std::array<uint8_t, 4>> got;
    for (uint64_t i = 0; i < 720; i++) {
        auto rows = symplectic_from_index(i, 2);
        got.insert({(uint8_t)rows[0], (uint8_t)rows[1], (uint8_t)rows[2], (uint8_t)rows[3]});
    }
    EXPECT_EQ(got, expected);
}

TEST(channels, symplectic_from_index_is_symplectic_n1_n3) {
    EXPECT_EQ(symplectic_group_order(1), 6u);
    std::set<std::vector<uint64_t>> n1;
    for (uint64_t i = 0; i < 6; i++) {
        n1.insert(symplectic_from_index(i, 1));
    }
    EXPECT_EQ(n1.size(), 6u);
    Rng rng(1);
    for (int trial = 0; trial < 200; trial++) {
        auto rows = symplectic_from_index(rng.below(symplectic_group_order(3)), 3);
        for (size_t a = 0; a < 6; a++) {
            for (size_t b = 0; b < 6; b++) {
                EXPECT_EQ(symplectic_inner(rows[a], rows[b]), (a ^ b) == 1);
            }
        }
    }
}

TEST(channels, named_gates) {
    auto cx = CliffordGate::cnot();
    auto s = StabilizerState::from_strs({"+ZI"});
    apply_clifford(s, cx, 0, 1);
    EXPECT_EQ(s.generators()[0], PauliString::from_str("+ZI"));
    s = StabilizerState::from_strs({"+XI"});
    apply_clifford(s, cx, 0, 1);
    EXPECT_EQ(s.generators()[0], PauliString::from_str("+XX"));
    s = StabilizerState::from_strs({"+ZI"});
    apply_clifford(s, CliffordGate::hadamard_first(), 0, 1);
    EXPECT_EQ(s.generators()[0], PauliString::from_str("+XI"));
    s = StabilizerState::from_strs({"+XI"});
    apply_clifford(s, CliffordGate::phase_first(), 0, 1);
    EXPECT_EQ(s.generators()[0], PauliString::from_str("+YI"));
    s = StabilizerState::from_strs({"+YZ"});
    apply_clifford(s, CliffordGate::swap(), 0, 1);
    EXPECT_EQ(s.generators()[0], PauliString::from_str("+ZY"));
    EXPECT_THROW(apply_clifford(s, cx, 0, 0), std::invalid_argument);
    EXPECT_THROW(apply_clifford(s, cx, 0, 2), std::out_of_range);
}

TEST(channels, from_images_validates) {
    auto id = CliffordGate::identity();
    EXPECT_EQ(CliffordGate::from_images(id.images()), id);
    EXPECT_THROW(CliffordGate::from_images({PauliString::from_str("XI"), PauliString::from_str("XI"),
                                            PauliString::from_str("IX"), PauliString::from_str("IZ")}),
                 std::invalid_argument);
}

TEST(channels, sample_two_qubit_clifford_uniform) {
    auto classes = brute_force_sp4();
    std::map<std::array<uint8_t, 4>, size_t> index;
    for (const auto &c : classes) {
        index.emplace(c, index.size());
    }
    const size_t samples = 1000000;
    std::vector<size_t> counts(720, 0);
    std::vector<size_t> sign_counts(16, 0);
    Rng rng(2024);
    for (size_t i = 0; i < samples; i++) {
        auto g = sample_two_qubit_clifford(rng);
        auto it = index.find(g.symplectic_rows());
        ASSERT_NE(it, index.end());
        counts[it->second]++;
        sign_counts[g.sign_bits()]++;
    }
    double p = 1.0 / 720;
    double sigma = std::sqrt(samples * p * (1 - p));
    for (size_t c : counts) {
        EXPECT_LT(std::abs(static_cast<double>(c) - samples * p), 5 * sigma);
    }
    double ps = 1.0 / 16;
    double sigma_s = std::sqrt(samples * ps * (1 - ps));
    for (size_t c : sign_counts) {
        EXPECT_LT(std::abs(static_cast<double>(c) - samples * ps), 5 * sigma_s);
    }
}

TEST(channels, sample_deterministic) {
    Rng a(42), b(42);
    EXPECT_EQ(sample_two_qubit_clifford(a), sample_two_qubit_clifford(b));
}

TEST(channels, clifford_matches_dense_conjugation) {
    Rng rng(77);
    for (int trial = 0; trial < 200; trial++) {
        auto s = StabilizerState::product_state(4);
        for (int i = 0; i < 6; i++) {
            random_step(s, rng);
        }
        auto gate = sample_two_qubit_clifford(rng);
        size_t a = rng.below(4), b = (a + 1 + rng.below(3)) % 4;
        auto d = dense::DenseState::from_stabilizer(s);
        apply_clifford(s, gate, a, b);
        dense::apply_clifford(d, gate, a, b);
        ASSERT_FALSE(validate(s).has_value());
        EXPECT_LT(max_abs(d.rho - dense::DenseState::from_stabilizer(s).rho), 1e-10);
        EXPECT_NEAR(d.rho.trace().real(), 1.0, 1e-12);
    }
}

TEST(channels, measure_examples) {
    Rng rng(5);
    auto s = StabilizerState::from_strs({"+Z"});
    auto r = measure_z(s, 0, rng);
    EXPECT_EQ(r.outcome, +1);
    EXPECT_TRUE(r.deterministic);
    EXPECT_EQ(s, StabilizerState::from_strs({"+Z"}));

    int plus = 0;
    for (int trial = 0; trial < 1000; trial++) {
        auto x = StabilizerState::from_strs({"+X"});
        auto m = measure_z(x, 0, rng);
        EXPECT_FALSE(m.deterministic);
        EXPECT_EQ(x.generators()[0], PauliString::from_str(m.outcome > 0 ? "+Z" : "-Z"));
        plus += m.outcome > 0;
    }
    EXPECT_NEAR(plus, 500, 5 * std::sqrt(250.0));

    StabilizerState mixed(1);
    auto m = measure_z(mixed, 0, rng);
    EXPECT_FALSE(m.deterministic);
    EXPECT_EQ(mixed.num_generators(), 1u);
    EXPECT_EQ(mixed.purity(), 1.0);

    EXPECT_THROW(measure_pauli(mixed, PauliString(1), rng), std::invalid_argument);
}

TEST(channels, measure_then_remeasure_is_deterministic) {
    Rng rng(31);
    for (int trial = 0; trial < 500; trial++) {
        size_t n = 2 + rng.below(7);
        auto s = StabilizerState::product_state(n);
        for (int i = 0; i < 10; i++) {
            random_step(s, rng);
        }
        auto h = random_nontrivial_pauli(n, rng);
        auto first = measure_pauli(s, h, rng);
        auto second = measure_pauli(s, h, rng);
        EXPECT_TRUE(second.deterministic);
        EXPECT_EQ(first.outcome, second.outcome);
    }
}

TEST(channels, measurement_matches_dense_projection) {
    Rng rng(91);
    for (int trial = 0; trial < 300; trial++) {
        auto s = StabilizerState::product_state(4);
        for (int i = 0; i < 8; i++) {
            random_step(s, rng);
        }
        auto d = dense::DenseState::from_stabilizer(s);
        size_t site = rng.below(4);
        double p_plus = dense::z_probability(d, site, +1);
        auto r = measure_z(s, site, rng);
        if (r.deterministic) {
            EXPECT_NEAR(r.outcome > 0 ? p_plus : 1 - p_plus, 1.0, 1e-10);
        } else {
            EXPECT_NEAR(p_plus, 0.5, 1e-10);
        }
        dense::project_z(d, site, r.outcome);
        EXPECT_LT(max_abs(d.rho - dense::DenseState::from_stabilizer(s).rho), 1e-10);
    }
}

TEST(channels, born_rule_statistics) {
    // General Pauli measurement on fixed random states: empirical frequency vs tr(P_+ rho) from the dense oracle.
    Rng rng(14);
    for (int state_trial = 0; state_trial < 10; state_trial++) {
        size_t n = 2 + rng.below(3);
        auto s = StabilizerState::product_state(n);
        for (int i = 0; i < 12; i++) {
            random_step(s, rng);
        }
        auto h = random_nontrivial_pauli(n, rng);
        auto d = dense::DenseState::from_stabilizer(s);
        size_t dim = d.dim();
        dense::Matrix proj = (dense::Matrix::Identity(dim, dim) + dense::pauli_matrix(h)) * 0.5;
        double p = (proj * d.rho).trace().real();
        const int trials = 10000;
        int plus = 0;
        for (int t = 0; t < trials; t++) {
            auto copy = s;
            plus += measure_pauli(copy, h, rng).outcome > 0;
        }
        double sigma = std::sqrt(trials * p * (1 - p));
        EXPECT_LE(std::abs(plus - trials * p), std::max(3 * sigma, 1e-9)) << "p=" << p;
    }
}

TEST(channels, random_outcomes_unbiased) {
    Rng rng(15);
    const long trials = 1000000;
    long plus = 0;
    for (long i = 0; i < trials; i++) {
        auto s = StabilizerState::from_strs({"+XI", "+IZ"});
        plus += measure_pauli(s, PauliString::from_str("ZZ"), rng).outcome > 0;
    }
    EXPECT_LT(std::abs(plus - trials / 2.0), 5 * std::sqrt(trials / 4.0));
}

TEST(channels, dephase_examples) {
    auto bell = StabilizerState::from_strs({"+XX", "+ZZ"});
    auto d = dense::DenseState::from_stabilizer(bell);
    EXPECT_TRUE(dephase(bell, 0));
    dense::dephase(d, 0);
    EXPECT_EQ(canonicalize(bell), canonicalize(StabilizerState::from_strs({"+ZZ"})));
    EXPECT_LT(max_abs(d.rho - dense::DenseState::from_stabilizer(bell).rho), 1e-12);

    auto z = StabilizerState::from_strs({"+Z"});
    EXPECT_FALSE(dephase(z, 0));
    EXPECT_EQ(z, StabilizerState::from_strs({"+Z"}));

    auto x = StabilizerState::from_strs({"+X"});
    EXPECT_TRUE(dephase(x, 0));
    EXPECT_EQ(x.num_generators(), 0u);
    EXPECT_THROW(dephase(x, 1), std::out_of_range);
}

TEST(channels, dephase_matches_dense_and_is_idempotent) {
    Rng rng(55);
    for (int trial = 0; trial < 300; trial++) {
        auto s = StabilizerState::product_state(4);
        for (int i = 0; i < 8; i++) {
            random_step(s, rng);
        }
        size_t site = rng.below(4);
        auto d = dense::DenseState::from_stabilizer(s);
        dephase(s, site);
        dense::dephase(d, site);
        EXPECT_LT(max_abs(d.rho - dense::DenseState::from_stabilizer(s).rho), 1e-10);
        auto once = canonicalize(s);
        EXPECT_FALSE(dephase(s, site));
        EXPECT_EQ(canonicalize(s), once);
    }
}

TEST(channels, fuzz_validate_and_purity_ledger) {
    Rng rng(404);
    for (int seq = 0; seq < 10000; seq++) {
        size_t n = 2 + rng.below(15);
        auto s = StabilizerState::product_state(n);
        for (int step = 0; step < 12; step++) {
            int before = s.purity_log2();
            auto kind = rng.below(3);
            if (kind == 0) {
                size_t a = rng.below(n), b = rng.below(n - 1);
                b += b >= a;
                apply_clifford(s, sample_two_qubit_clifford(rng), a, b);
                ASSERT_EQ(s.purity_log2(), before);
            } else if (kind == 1) {
                if (rng.coin()) {
                    measure_z(s, rng.below(n), rng);
                } else {
                    measure_pauli(s, random_nontrivial_pauli(n, rng), rng);
                }
                int delta = s.purity_log2() - before;
                ASSERT_TRUE(delta == 0 || delta == 1);
            } else {
                dephase(s, rng.below(n));
                int delta = s.purity_log2() - before;
                ASSERT_TRUE(delta == 0 || delta == -1);
            }
            auto v = validate(s);
            ASSERT_FALSE(v.has_value()) << v->message << " in sequence " << seq;
        }
    }
}
