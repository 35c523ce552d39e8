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


#include "mixstab/pauli_string.h"

#include <gtest/gtest.h>

#include "mixstab/dense.h"
#include "mixstab/rng.h"

using namespace mixstab;

namespace {

PauliString random_pauli(size_t n, Rng &rng) {
    PauliString p(n);
    for (size_t q = 0; q < n; q++) {
        p.set_x(q, rng.coin());
        p.set_z(q, rng.coin());
    }
    p.set_negative(rng.coin());
    return p;
}

/// Every signed string on n qubits.
std::vector<PauliString> all_paulis(size_t n) {
    std::vector<PauliString> out;
    for (uint64_t code = 0; code < (uint64_t{1} << (2 * n + 1)); code++) {
        PauliString p(n);
        for (size_t q = 0; q < n; q++) {
            p.set_x(q, (code >> (2 * q)) & 1);
            p.set_z(q, (code >> (2 * q + 1)) & 1);
        }
        p.set_negative((code >> (2 * n)) & 1);
        out.push_back(p);
    }
    return out;
}

}  // namespace

TEST(pauli_string, str_round_trip) {
    for (const char *text : {"+XIZY", "-ZZ", "+I", "-YYYY"}) {
        EXPECT_EQ(PauliString::from_str(text).str(), text);
    }
    EXPECT_EQ(PauliString::from_str("XZ").str(), "+XZ");
    EXPECT_EQ(PauliString::from_str("_X").str(), "+IX");
    EXPECT_THROW(PauliString::from_str("+XQ"), std::invalid_argument);

    Rng rng(5);
    for (size_t n : {1, 63, 64, 65, 200}) {
        auto p = random_pauli(n, rng);
        EXPECT_EQ(PauliString::from_str(p.str()), p);
    }
}

TEST(pauli_string, multiply_examples) {
    auto xx = PauliString::from_str("+XX");
    auto zz = PauliString::from_str("+ZZ");
    EXPECT_EQ(multiply(xx, zz), PauliString::from_str("-YY"));
    EXPECT_EQ(multiply(zz, xx), PauliString::from_str("-YY"));
    EXPECT_EQ(multiply(xx, xx), PauliString::from_str("+II"));
    auto r = multiply_phased(PauliString::from_str("X"), PauliString::from_str("Z"));
    EXPECT_EQ(r.pauli, PauliString::from_str("-Y"));
    EXPECT_EQ(r.i_power, 1);
    EXPECT_THROW(multiply(PauliString::from_str("X"), PauliString::from_str("Z")), std::invalid_argument);
    EXPECT_THROW(multiply(PauliString::from_str("X"), PauliString::from_str("ZZ")), std::invalid_argument);
}

TEST(pauli_string, multiply_matches_dense_matrices) {
    const std::complex<double> ipow[4] = {1.0, {0, 1}, -1.0, {0, -1}};
    for (size_t n = 1; n <= 3; n++) {
        auto all = all_paulis(n);
        for (const auto &a : all) {
            auto ma = dense::pauli_matrix(a);
            for (const auto &b : all) {
                auto r = multiply_phased(a, b);
                dense::Matrix expected = ma * dense::pauli_matrix(b);
                dense::Matrix got = dense::pauli_matrix(r.pauli) * ipow[r.i_power];
                ASSERT_LT((expected - got).cwiseAbs().maxCoeff(), 1e-12) << a << " * " << b;
                for (size_t w = 0; w < a.xs().size(); w++) {
                    ASSERT_EQ(r.pauli.xs()[w], a.xs()[w] ^ b.xs()[w]);
                    ASSERT_EQ(r.pauli.zs()[w], a.zs()[w] ^ b.zs()[w]);
                }
                bool matrices_commute = (ma * dense::pauli_matrix(b) - dense::pauli_matrix(b) * ma).cwiseAbs().maxCoeff() < 1e-12;
                ASSERT_EQ(commutes(a, b), matrices_commute);
            }
        }
    }
}

TEST(pauli_string, multiply_multiword_sitewise) {
    Rng rng(11);
    for (size_t n : {64, 65, 130, 257}) {
        for (int trial = 0; trial < 20; trial++) {
            auto a = random_pauli(n, rng);
            auto b = random_pauli(n, rng);
            auto r = multiply_phased(a, b);
            // Accumulate the phase one site at a time through single-qubit products.
            int power = (a.negative() ? 2 : 0) + (b.negative() ? 2 : 0);
            for (size_t q = 0; q < n; q++) {
                PauliString sa(1), sb(1);
                sa.set_pauli(0, a.pauli_at(q));
                sb.set_pauli(0, b.pauli_at(q));
                auto site = multiply_phased(sa, sb);
                power += site.i_power + (site.pauli.negative() ? 2 : 0);
                ASSERT_EQ(r.pauli.pauli_at(q), site.pauli.pauli_at(0));
            }
            EXPECT_EQ((power % 4 + 4) % 4, r.i_power + (r.pauli.negative() ? 2 : 0));
        }
    }
}

TEST(pauli_string, self_product_is_identity) {
    Rng rng(3);
    for (int trial = 0; trial < 100; trial++) {
        auto g = random_pauli(1 + rng.below(150), rng);
        auto sq = multiply(g, g);
        EXPECT_TRUE(sq.is_identity());
        EXPECT_FALSE(sq.negative());
    }
}

TEST(pauli_string, commutes) {
    EXPECT_FALSE(commutes(PauliString::from_str("X"), PauliString::from_str("Z")));
    EXPECT_TRUE(commutes(PauliString::from_str("XX"), PauliString::from_str("ZZ")));
    EXPECT_TRUE(commutes(PauliString::from_str("ZI"), PauliString::from_str("ZZ")));
    Rng rng(9);
    for (int trial = 0; trial < 500; trial++) {
        size_t n = 1 + rng.below(140);
        auto a = random_pauli(n, rng);
        auto b = random_pauli(n, rng);
        EXPECT_EQ(commutes(a, b), commutes(b, a));
    }
    EXPECT_THROW(commutes(PauliString::from_str("X"), PauliString::from_str("XX")), std::invalid_argument);
}

TEST(pauli_string, restrict_to) {
    EXPECT_EQ(restrict_to(PauliString::from_str("XX"), SiteSet(2, {0})), PauliString::from_str("XI"));
    EXPECT_EQ(restrict_to(PauliString::from_str("ZZ"), SiteSet(2, {0, 1})), PauliString::from_str("ZZ"));
    EXPECT_EQ(restrict_to(PauliString::from_str("-YZ"), SiteSet(2, {1})), PauliString::from_str("+IZ"));
    Rng rng(4);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + rng.below(130);
        auto a = random_pauli(n, rng);
        SiteSet region(n);
        for (size_t q = 0; q < n; q++) {
            if (rng.coin()) {
                region.insert(q);
            }
        }
        auto once = restrict_to(a, region);
        EXPECT_EQ(restrict_to(once, region), once);
    }
}

TEST(pauli_string, support_interval) {
    EXPECT_EQ(PauliString::from_str("IIIX").support_interval(), std::make_pair(size_t{3}, size_t{3}));
    EXPECT_EQ(PauliString::from_str("IZIIIX").support_interval(), std::make_pair(size_t{1}, size_t{5}));
    EXPECT_FALSE(PauliString::from_str("III").support_interval().has_value());
    auto p = PauliString::single(200, 130, 'Y');
    p.set_pauli(7, 'X');
    EXPECT_EQ(p.support_interval(), std::make_pair(size_t{7}, size_t{130}));
}

TEST(site_set, basics) {
    auto s = SiteSet::interval(70, 60, 66);
    EXPECT_EQ(s.size(), 6u);
    EXPECT_TRUE(s.contains(65));
    EXPECT_FALSE(s.contains(66));
    EXPECT_EQ(s.complement().size(), 64u);
    EXPECT_FALSE(s.intersects(s.complement()));
    EXPECT_EQ((s | s.complement()).size(), 70u);
}
