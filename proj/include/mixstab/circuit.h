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

#ifndef MIXSTAB_CIRCUIT_H
#define MIXSTAB_CIRCUIT_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixstab/entanglement.h"
#include "mixstab/stabilizer_state.h"

namespace mixstab {

/// Which sites are dephased after each layer.
struct DephasingSchedule {
    enum class Kind {
        /// Sites 0 and L-1 after every even layer.
        kBoundaryEvenSteps,
        /// Sites 0 and L-1 after every layer.
        kBoundaryEveryStep,
        /// `num_sites` distinct uniformly random sites after every layer.
        kRandomSites,
    };
    Kind kind = Kind::kBoundaryEvenSteps;
    size_t num_sites = 0;

    static DephasingSchedule boundary_even_steps() {
        return {Kind::kBoundaryEvenSteps, 0};
    }
    static DephasingSchedule boundary_every_step() {
        return {Kind::kBoundaryEveryStep, 0};
    }
    static DephasingSchedule random_sites(size_t m) {
        return {Kind::kRandomSites, m};
    }

    /// "boundary_even_steps", "boundary_every_step" or "random_sites:m". Throws std::invalid_argument.
    static DephasingSchedule parse(std::string_view text);
    std::string str() const;
    bool operator==(const DephasingSchedule &other) const = default;
};

struct CircuitConfig {
    size_t num_qubits = 40;
    /// Measurement probability per site per layer.
    double p = 0.1;
    /// Number of brickwork layers. 0 means the default 4L.
    size_t depth = 0;
    uint64_t seed = 1;
    DephasingSchedule schedule;
    size_t samples = 1;
    /// Record observables every this many layers (and always after the last layer).
    size_t observables_every = 1;

    size_t effective_depth() const {
        return depth == 0 ? 4 * num_qubits : depth;
    }
    bool operator==(const CircuitConfig &other) const = default;
};

/// Returns a description of the first broken constraint, or nullopt.
std::optional<std::string> config_error(const CircuitConfig &cfg);

/// JSON keys: L, p, T, seed, schedule, samples, observables_every. Missing keys keep their defaults.
std::string config_to_json(const CircuitConfig &cfg);
CircuitConfig config_from_json(std::string_view text);
/// Stable 64-bit hash of the canonical JSON form.
uint64_t config_hash(const CircuitConfig &cfg);
std::string hex64(uint64_t value);

/// Layer times at which observables are recorded: s, 2s, ... and finally T.
std::vector<size_t> record_times(const CircuitConfig &cfg);

struct TrajectoryResult {
    std::vector<ObservableRecord> records;
    std::optional<StabilizerState> final_state;
};

/// One realization of the monitored circuit, starting from |0...0>. Layer t applies brickwork gates (pairs
/// (0,1),(2,3),... for odd t and (1,2),(3,4),... for even t), then Z measurements with probability p on each
/// site in ascending order, then the dephasing schedule. Observables use the half-chain bipartition.
TrajectoryResult run_trajectory(const CircuitConfig &cfg, uint64_t trajectory_index, bool keep_final_state = false);

enum class Observable { kSA, kSB, kSAB, kE, kI, kPurityLog2 };
constexpr std::array<Observable, 6> kAllObservables = {Observable::kSA, Observable::kSB,  Observable::kSAB,
                                                       Observable::kE,  Observable::kI,   Observable::kPurityLog2};
std::string_view observable_name(Observable o);
Observable parse_observable(std::string_view name);
double observable_value(const ObservableRecord &r, Observable o);

/// Summation by recursive halving, so the result depends only on the order of `values`.
double pairwise_sum(std::span<const double> values);

struct MeanStderr {
    double mean = 0;
    double sem = 0;
};
/// Sample mean and standard error of the mean (0 for a single sample).
MeanStderr mean_stderr(std::span<const double> values);

struct MonteCarloResult {
    CircuitConfig config;
    std::vector<size_t> times;
    /// trajectories[i] holds the records of trajectory i.
    std::vector<std::vector<ObservableRecord>> trajectories;
    /// Clipped-gauge length histograms of the final states, summed over trajectories (if requested).
    std::vector<double> final_length_histogram;

    /// Mean and standard error across trajectories at record index `time_index`.
    MeanStderr at(size_t time_index, Observable o) const;
    /// Per-trajectory averages of the records with time in (t_end - window, t_end].
    std::vector<double> window_means(Observable o, size_t t_end, size_t window) const;
    /// Mean and standard error of the per-trajectory average over the final `window` layers (default L).
    MeanStderr late_time(Observable o, size_t window = 0) const;
};

/// Runs cfg.samples trajectories on `threads` worker threads (0 = hardware concurrency). Trajectory i uses
/// seed hash(cfg.seed, i), so the result does not depend on the thread count.
MonteCarloResult monte_carlo(const CircuitConfig &cfg, size_t threads = 1, bool length_histogram = false);

struct StationarityReport {
    MeanStderr last;
    MeanStderr previous;
    bool passed = false;
};
/// Compares the average over the final `window` layers (default L) with the average over the `window` layers
/// before them; passes if they differ by less than two combined standard errors.
StationarityReport stationarity_gate(const MonteCarloResult &result, Observable o, size_t window = 0);

/// Columns L,p,t,observable,mean,stderr,samples, preceded by a comment line carrying the config hash.
void write_time_series_csv(std::ostream &out, const MonteCarloResult &result);

}  // namespace mixstab

#endif
