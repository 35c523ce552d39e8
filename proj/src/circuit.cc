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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mixstab/channels.h"
#include "mixstab/parallel.h"
#include "mixstab/rng.h"

namespace mixstab {

namespace {

// Substream labels inside one layer.
constexpr uint64_t kGateStream = 1;
constexpr uint64_t kMeasureStream = 2;
constexpr uint64_t kDephaseStream = 3;

void dephase_layer(StabilizerState &state, const CircuitConfig &cfg, size_t t, const Rng &layer_rng) {
    size_t n = cfg.num_qubits;
    switch (cfg.schedule.kind) {
        case DephasingSchedule::Kind::kBoundaryEvenSteps:
            if (t % 2 == 0) {
                dephase(state, 0);
                dephase(state, n - 1);
            }
            break;
        case DephasingSchedule::Kind::kBoundaryEveryStep:
            dephase(state, 0);
            dephase(state, n - 1);
            break;
        case DephasingSchedule::Kind::kRandomSites: {
            Rng rng = layer_rng.fork(kDephaseStream);
            std::vector<size_t> sites(n);
            std::iota(sites.begin(), sites.end(), 0);
            for (size_t i = 0; i < cfg.schedule.num_sites; i++) {
                std::swap(sites[i], sites[i + rng.below(n - i)]);
                dephase(state, sites[i]);
            }
            break;
        }
    }
}

}  // namespace

DephasingSchedule DephasingSchedule::parse(std::string_view text) {
    if (text == "boundary_even_steps") {
        return boundary_even_steps();
    }
    if (text == "boundary_every_step") {
        return boundary_every_step();
    }
    constexpr std::string_view prefix = "random_sites:";
    if (text.starts_with(prefix)) {
        std::string digits(text.substr(prefix.size()));
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            return random_sites(std::stoull(digits));
        }
    }
    throw std::invalid_argument("unknown dephasing schedule '" + std::string(text) +
                                "' (expected boundary_even_steps, boundary_every_step or random_sites:m)");
}

std::string DephasingSchedule::str() const {
    switch (kind) {
        case Kind::kBoundaryEvenSteps:
            return "boundary_even_steps";
        case Kind::kBoundaryEveryStep:
            return "boundary_every_step";
        case Kind::kRandomSites:
            return "random_sites:" + std::to_string(num_sites);
    }
    return "";
}

std::optional<std::string> config_error(const CircuitConfig &cfg) {
    if (cfg.num_qubits < 2 || cfg.num_qubits % 2 != 0) {
        return "L must be even and at least 2, got " + std::to_string(cfg.num_qubits);
    }
    if (!(cfg.p >= 0 && cfg.p <= 1)) {
        return "p must lie in [0, 1]";
    }
    if (cfg.samples < 1) {
        return "samples must be at least 1";
    }
    if (cfg.observables_every < 1) {
        return "observables_every must be at least 1";
    }
    if (cfg.schedule.kind == DephasingSchedule::Kind::kRandomSites && cfg.schedule.num_sites > cfg.num_qubits) {
        return "random_sites count exceeds L";
    }
    return std::nullopt;
}

std::string config_to_json(const CircuitConfig &cfg) {
    nlohmann::ordered_json j;
    j["L"] = cfg.num_qubits;
    j["p"] = cfg.p;
    j["T"] = cfg.effective_depth();
    j["seed"] = cfg.seed;
    j["schedule"] = cfg.schedule.str();
    j["samples"] = cfg.samples;
    j["observables_every"] = cfg.observables_every;
    return j.dump();
}

CircuitConfig config_from_json(std::string_view text) {
    auto j = nlohmann::json::parse(text);
    CircuitConfig cfg;
    cfg.num_qubits = j.value("L", cfg.num_qubits);
    cfg.p = j.value("p", cfg.p);
    cfg.depth = j.value("T", cfg.depth);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("schedule")) {
        cfg.schedule = DephasingSchedule::parse(j["schedule"].get<std::string>());
    }
    cfg.samples = j.value("samples", cfg.samples);
    cfg.observables_every = j.value("observables_every", cfg.observables_every);
    return cfg;
}

uint64_t config_hash(const CircuitConfig &cfg) {
    // FNV-1a over the canonical JSON, finished with a mixer.
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : config_to_json(cfg)) {
        h = (h ^ c) * 0x100000001B3ULL;
    }
    return mix64(h);
}

std::string hex64(uint64_t value) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << value;
    return out.str();
}

std::vector<size_t> record_times(const CircuitConfig &cfg) {
    std::vector<size_t> times;
    size_t depth = cfg.effective_depth();
    for (size_t t = cfg.observables_every; t < depth; t += cfg.observables_every) {
        times.push_back(t);
    }
    times.push_back(depth);
    return times;
}

TrajectoryResult run_trajectory(const CircuitConfig &cfg, uint64_t trajectory_index, bool keep_final_state) {
    if (auto err = config_error(cfg)) {
        throw std::invalid_argument(*err);
    }
    size_t n = cfg.num_qubits;
    size_t depth = cfg.effective_depth();
    Rng base(hash_combine(cfg.seed, trajectory_index));
    auto bp = Bipartition::half_chain(n);
    auto state = StabilizerState::product_state(n);

    TrajectoryResult result;
    result.records.reserve(depth / cfg.observables_every + 1);
    for (size_t t = 1; t <= depth; t++) {
        Rng layer = base.fork(t);
        for (size_t q = (t % 2 == 1 ? 0 : 1); q + 1 < n; q += 2) {
            Rng gate_rng = layer.fork(hash_combine(kGateStream, q));
            apply_clifford(state, sample_two_qubit_clifford(gate_rng), q, q + 1);
        }
        if (cfg.p > 0) {
            for (size_t q = 0; q < n; q++) {
                Rng site_rng = layer.fork(hash_combine(kMeasureStream, q));
                if (site_rng.bernoulli(cfg.p)) {
                    measure_z(state, q, site_rng);
                }
            }
        }
        dephase_layer(state, cfg, t, layer);
        if (t % cfg.observables_every == 0 || t == depth) {
            result.records.push_back(measure_observables(state, bp, trajectory_index, t));
        }
    }
    if (keep_final_state) {
        result.final_state = std::move(state);
    }
    return result;
}

std::string_view observable_name(Observable o) {
    switch (o) {
        case Observable::kSA:
            return "S_A";
        case Observable::kSB:
            return "S_B";
        case Observable::kSAB:
            return "S_AB";
        case Observable::kE:
            return "E";
        case Observable::kI:
            return "I";
        case Observable::kPurityLog2:
            return "purity_log2";
    }
    return "";
}

Observable parse_observable(std::string_view name) {
    for (auto o : kAllObservables) {
        if (observable_name(o) == name) {
            return o;
        }
    }
    throw std::invalid_argument("unknown observable '" + std::string(name) + "'");
}

double observable_value(const ObservableRecord &r, Observable o) {
    switch (o) {
        case Observable::kSA:
            return r.s_a;
        case Observable::kSB:
            return r.s_b;
        case Observable::kSAB:
            return r.s_ab;
        case Observable::kE:
            return r.negativity;
        case Observable::kI:
            return r.mutual_information;
        case Observable::kPurityLog2:
            return r.purity_log2;
    }
    return 0;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double total = 0;
        for (double v : values) {
            total += v;
        }
        return total;
    }
    size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MeanStderr mean_stderr(std::span<const double> values) {
    if (values.empty()) {
        return {std::nan(""), std::nan("")};
    }
    double n = static_cast<double>(values.size());
    double mean = pairwise_sum(values) / n;
    if (values.size() == 1) {
        return {mean, 0};
    }
    std::vector<double> sq(values.size());
    for (size_t i = 0; i < values.size(); i++) {
        sq[i] = (values[i] - mean) * (values[i] - mean);
    }
    double var = pairwise_sum(sq) / (n - 1);
    return {mean, std::sqrt(var / n)};
}

MeanStderr MonteCarloResult::at(size_t time_index, Observable o) const {
    std::vector<double> v;
    v.reserve(trajectories.size());
    for (const auto &traj : trajectories) {
        v.push_back(observable_value(traj.at(time_index), o));
    }
    return mean_stderr(v);
}

std::vector<double> MonteCarloResult::window_means(Observable o, size_t t_end, size_t window) const {
    std::vector<double> out;
    out.reserve(trajectories.size());
    for (const auto &traj : trajectories) {
        std::vector<double> v;
        for (const auto &r : traj) {
            if (r.time <= t_end && r.time + window > t_end) {
                v.push_back(observable_value(r, o));
            }
        }
        if (v.empty()) {
            throw std::invalid_argument("no records inside the averaging window");
        }
        out.push_back(pairwise_sum(v) / static_cast<double>(v.size()));
    }
    return out;
}

MeanStderr MonteCarloResult::late_time(Observable o, size_t window) const {
    if (window == 0) {
        window = config.num_qubits;
    }
    return mean_stderr(window_means(o, config.effective_depth(), window));
}

MonteCarloResult monte_carlo(const CircuitConfig &cfg, size_t threads, bool length_histogram) {
    if (auto err = config_error(cfg)) {
        throw std::invalid_argument(*err);
    }
    MonteCarloResult result;
    result.config = cfg;
    result.times = record_times(cfg);
    result.trajectories.resize(cfg.samples);
    std::vector<std::vector<size_t>> histograms(length_histogram ? cfg.samples : 0);

    parallel_for(cfg.samples, threads, [&](size_t i) {
        auto traj = run_trajectory(cfg, i, length_histogram);
        result.trajectories[i] = std::move(traj.records);
        if (length_histogram) {
            histograms[i] = length_distribution(*traj.final_state);
        }
    });

    if (length_histogram) {
        result.final_length_histogram.assign(cfg.num_qubits + 1, 0.0);
        std::vector<double> column(cfg.samples);
        for (size_t len = 0; len <= cfg.num_qubits; len++) {
            for (size_t i = 0; i < cfg.samples; i++) {
                column[i] = static_cast<double>(histograms[i][len]);
            }
            result.final_length_histogram[len] = pairwise_sum(column);
        }
    }
    return result;
}

StationarityReport stationarity_gate(const MonteCarloResult &result, Observable o, size_t window) {
    if (window == 0) {
        window = result.config.num_qubits;
    }
    size_t depth = result.config.effective_depth();
    if (depth < 2 * window) {
        throw std::invalid_argument("stationarity gate needs T >= 2 * window");
    }
    StationarityReport report;
    report.last = mean_stderr(result.window_means(o, depth, window));
    report.previous = mean_stderr(result.window_means(o, depth - window, window));
    double combined = std::hypot(report.last.sem, report.previous.sem);
    double diff = std::abs(report.last.mean - report.previous.mean);
    report.passed = diff < 2 * combined || diff == 0;
    return report;
}

void write_time_series_csv(std::ostream &out, const MonteCarloResult &result) {
    const auto &cfg = result.config;
    out << "# mixstab run config_hash=" << hex64(config_hash(cfg)) << " config=" << config_to_json(cfg) << "\n";
    out << "L,p,t,observable,mean,stderr,samples\n";
    out << std::setprecision(9);
    for (size_t i = 0; i < result.times.size(); i++) {
        for (auto o : kAllObservables) {
            auto s = result.at(i, o);
            out << cfg.num_qubits << ',' << cfg.p << ',' << result.times[i] << ',' << observable_name(o) << ','
                << s.mean << ',' << s.sem << ',' << result.trajectories.size() << '\n';
        }
    }
}

}  // namespace mixstab
