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


#include "mixstab/circuit.h"

#include <gtest/gtest.h>

#include "mixstab/channels.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

using namespace mixstab;

TEST(circuit, schedule_parse) {
    EXPECT_EQ(DephasingSchedule::parse("boundary_even_steps"), DephasingSchedule::boundary_even_steps());
    EXPECT_EQ(DephasingSchedule::parse("boundary_every_step"), DephasingSchedule::boundary_every_step());
    EXPECT_EQ(DephasingSchedule::parse("random_sites:2"), DephasingSchedule::random_sites(2));
    EXPECT_EQ(DephasingSchedule::random_sites(7).str(), "random_sites:7");
    EXPECT_THROW(DephasingSchedule::parse("random_sites:"), std::invalid_argument);
    EXPECT_THROW(DephasingSchedule::parse("edges"), std::invalid_argument);
}

TEST(circuit, config_validation_and_json) {
    CircuitConfig cfg;
    EXPECT_FALSE(config_error(cfg).has_value());
    cfg.num_qubits = 7;
    EXPECT_TRUE(config_error(cfg).has_value());
    cfg.num_qubits = 8;
    cfg.p = 1.5;
    EXPECT_TRUE(config_error(cfg).has_value());
    cfg.p = 0.2;
    cfg.samples = 0;
    EXPECT_TRUE(config_error(cfg).has_value());
    cfg.samples = 3;
    cfg.depth = 17;
    cfg.seed = 99;
    cfg.schedule = DephasingSchedule::random_sites(2);
    cfg.observables_every = 5;
    EXPECT_EQ(config_from_json(config_to_json(cfg)), cfg);
    auto partial = config_from_json(R"({"L": 12, "schedule": "boundary_every_step"})");
    EXPECT_EQ(partial.num_qubits, 12u);
    EXPECT_EQ(partial.effective_depth(), 48u);
    EXPECT_EQ(partial.schedule, DephasingSchedule::boundary_every_step());
    EXPECT_NE(config_hash(cfg), config_hash(partial));
    EXPECT_EQ(hex64(0xABC), "0000000000000abc");
}

TEST(circuit, record_times) {
    CircuitConfig cfg;
    cfg.num_qubits = 4;
    cfg.depth = 10;
    cfg.observables_every = 3;
    EXPECT_EQ(record_times(cfg), (std::vector<size_t>{3, 6, 9, 10}));
    cfg.observables_every = 5;
    EXPECT_EQ(record_times(cfg), (std::vector<size_t>{5, 10}));
    for (size_t s = 1; s <= 12; s++) {
        cfg.observables_every = s;
        auto traj = run_trajectory(cfg, 0);
        EXPECT_EQ(traj.records.size(), (cfg.depth + s - 1) / s);
        EXPECT_EQ(traj.records.back().time, 10u);
    }
}

TEST(circuit, zero_measurement_negativity_vanishes) {
    CircuitConfig cfg;
    cfg.num_qubits = 16;
    cfg.p = 0;
    cfg.depth = 64;
    for (uint64_t i = 0; i < 10; i++) {
        auto traj = run_trajectory(cfg, i);
        EXPECT_EQ(traj.records.back().negativity, 0.0);
    }
}

TEST(circuit, full_measurement_gives_product_state) {
    CircuitConfig cfg;
    cfg.num_qubits = 12;
    cfg.p = 1;
    cfg.depth = 20;
    for (uint64_t i = 0; i < 5; i++) {
        auto traj = run_trajectory(cfg, i, true);
        EXPECT_EQ(traj.records.back().negativity, 0.0);
        EXPECT_EQ(traj.records.back().s_ab, 0);
        EXPECT_EQ(traj.records.back().s_a, 0);
        auto h = length_distribution(*traj.final_state);
        EXPECT_EQ(h[1], 12u);
    }
}

TEST(circuit, pure_circuit_entropy_bounded_by_page_value) {
    CircuitConfig cfg;
    cfg.num_qubits = 8;
    cfg.p = 0;
    cfg.depth = 32;
    cfg.schedule = DephasingSchedule::random_sites(0);
    int hits = 0;
    for (uint64_t i = 0; i < 200; i++) {
        auto r = run_trajectory(cfg, i).records.back();
        EXPECT_EQ(r.s_ab, 0);
        EXPECT_LE(r.s_a, 4);
        hits += r.s_a == 4;
    }
    EXPECT_GT(hits, 0);
}

namespace {

/// Sorted list of every signed element of the stabilizer group; identifies the state uniquely.
std::string group_key(const StabilizerState &s) {
    std::vector<std::string> elements;
    size_t k = s.num_generators();
    for (uint64_t mask = 0; mask < (uint64_t{1} << k); mask++) {
        PauliString p(s.num_qubits());
        for (size_t i = 0; i < k; i++) {
            if ((mask >> i) & 1) {
                p = multiply(p, s.generators()[i]);
            }
        }
        elements.push_back(p.str());
    }
    std::sort(elements.begin(), elements.end());
    std::string key;
    for (const auto &e : elements) {
        key += e;
    }
    return key;
}

}  // namespace

TEST(circuit, pure_circuit_samples_uniform_stabilizer_states) {
    // Exact oracle: enumerate every 4-qubit stabilizer state by closing |0000> under H, S and CNOT, and compare
    // the half-chain entropy distribution with late-time circuit output.
    const size_t n = 4;
    std::vector<std::pair<CliffordGate, std::pair<size_t, size_t>>> moves;
    for (size_t a = 0; a < n; a++) {
        size_t b = (a + 1) % n;
        moves.push_back({CliffordGate::hadamard_first(), {a, b}});
        moves.push_back({CliffordGate::phase_first(), {a, b}});
        for (size_t c = 0; c < n; c++) {
            if (c != a) {
                moves.push_back({CliffordGate::cnot(), {a, c}});
            }
        }
    }
    std::set<std::string> seen;
    std::vector<StabilizerState> frontier{StabilizerState::product_state(n)};
    seen.insert(group_key(frontier[0]));
    std::vector<size_t> exact(3, 0);
    auto bp = Bipartition::half_chain(n);
    exact[entropy(frontier[0], bp.a)]++;
    while (!frontier.empty()) {
        std::vector<StabilizerState> next;
        for (const auto &s : frontier) {
            for (const auto &[gate, sites] : moves) {
                auto t = s;
                apply_clifford(t, gate, sites.first, sites.second);
                if (seen.insert(group_key(t)).second) {
                    exact[entropy(t, bp.a)]++;
                    next.push_back(std::move(t));
                }
            }
        }
        frontier = std::move(next);
    }
    ASSERT_EQ(seen.size(), 36720u);

    CircuitConfig cfg;
    cfg.num_qubits = n;
    cfg.p = 0;
    cfg.depth = 40;
    cfg.schedule = DephasingSchedule::random_sites(0);
    const size_t trials = 6000;
    std::vector<size_t> observed(3, 0);
    for (uint64_t i = 0; i < trials; i++) {
        observed[run_trajectory(cfg, i).records.back().s_a]++;
    }
    for (size_t k = 0; k < 3; k++) {
        double p = static_cast<double>(exact[k]) / seen.size();
        double sigma = std::sqrt(trials * p * (1 - p));
        EXPECT_LT(std::abs(observed[k] - trials * p), 5 * sigma + 1) << "S_A=" << k;
    }
}

TEST(circuit, dephasing_schedules_change_purity) {
    CircuitConfig cfg;
    cfg.num_qubits = 10;
    cfg.p = 0;
    cfg.depth = 1;
    cfg.schedule = DephasingSchedule::boundary_every_step();
    // After one layer of gates on |0..0>, dephasing sites 0 and L-1 removes at most one generator each.
    auto r = run_trajectory(cfg, 3).records.back();
    EXPECT_GE(r.purity_log2, -2);
    cfg.schedule = DephasingSchedule::boundary_even_steps();
    EXPECT_EQ(run_trajectory(cfg, 3).records.back().purity_log2, 0);
    cfg.depth = 40;
    cfg.schedule = DephasingSchedule::random_sites(10);
    EXPECT_EQ(run_trajectory(cfg, 3).records.back().s_ab, 10);
}

TEST(circuit, monte_carlo_single_sample_matches_trajectory) {
    CircuitConfig cfg;
    cfg.num_qubits = 10;
    cfg.p = 0.15;
    cfg.depth = 30;
    cfg.samples = 1;
    auto mc = monte_carlo(cfg);
    auto traj = run_trajectory(cfg, 0);
    ASSERT_EQ(mc.trajectories.size(), 1u);
    for (size_t i = 0; i < traj.records.size(); i++) {
        EXPECT_EQ(mc.at(i, Observable::kE).mean, traj.records[i].negativity);
        EXPECT_EQ(mc.at(i, Observable::kE).sem, 0.0);
    }
}

TEST(circuit, monte_carlo_independent_of_threads) {
    CircuitConfig cfg;
    cfg.num_qubits = 12;
    cfg.p = 0.1;
    cfg.samples = 23;
    cfg.observables_every = 3;
    auto a = monte_carlo(cfg, 1, true);
    auto b = monte_carlo(cfg, 4, true);
    std::ostringstream sa, sb;
    write_time_series_csv(sa, a);
    write_time_series_csv(sb, b);
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_EQ(a.final_length_histogram, b.final_length_histogram);
    for (auto o : kAllObservables) {
        EXPECT_EQ(a.late_time(o).mean, b.late_time(o).mean);
    }
}

TEST(circuit, seeds_differ_between_trajectories) {
    CircuitConfig cfg;
    cfg.num_qubits = 16;
    cfg.p = 0.1;
    cfg.depth = 40;
    auto a = run_trajectory(cfg, 0, true);
    auto b = run_trajectory(cfg, 1, true);
    EXPECT_NE(*a.final_state, *b.final_state);
    EXPECT_EQ(*run_trajectory(cfg, 1, true).final_state, *b.final_state);
}

TEST(circuit, statistics_helpers) {
    std::vector<double> v{1, 2, 3, 4};
    EXPECT_EQ(pairwise_sum(v), 10);
    auto m = mean_stderr(v);
    EXPECT_DOUBLE_EQ(m.mean, 2.5);
    EXPECT_DOUBLE_EQ(m.sem, std::sqrt((2.25 + 0.25 + 0.25 + 2.25) / 3 / 4));
    std::vector<double> many(1000, 0.1);
    EXPECT_NEAR(pairwise_sum(many), 100, 1e-12);
    EXPECT_EQ(parse_observable("purity_log2"), Observable::kPurityLog2);
    EXPECT_THROW(parse_observable("Q"), std::invalid_argument);
}

TEST(circuit, late_time_and_stationarity) {
    CircuitConfig cfg;
    cfg.num_qubits = 16;
    cfg.p = 0.1;
    cfg.samples = 40;
    auto mc = monte_carlo(cfg);
    auto late = mc.late_time(Observable::kE);
    EXPECT_GT(late.mean, 0);
    EXPECT_GT(late.sem, 0);
    auto gate = stationarity_gate(mc, Observable::kE);
    EXPECT_NEAR(gate.last.mean, late.mean, 1e-12);
    // Windows of one record: the final record alone.
    auto last = mc.late_time(Observable::kE, 1);
    EXPECT_EQ(last.mean, mc.at(mc.times.size() - 1, Observable::kE).mean);
}

TEST(circuit, csv_format) {
    CircuitConfig cfg;
    cfg.num_qubits = 4;
    cfg.depth = 2;
    cfg.samples = 2;
    std::ostringstream out;
    write_time_series_csv(out, monte_carlo(cfg));
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# mixstab run config_hash=" + hex64(config_hash(cfg)), 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, "L,p,t,observable,mean,stderr,samples");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("4,0.1,1,S_A,", 0), 0u);
    size_t rows = 1;
    while (std::getline(in, line)) {
        rows++;
    }
    EXPECT_EQ(rows, 2 * kAllObservables.size());
}
