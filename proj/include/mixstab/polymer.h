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


#ifndef MIXSTAB_POLYMER_H
#define MIXSTAB_POLYMER_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mixstab {

/// Directed paths on a tilted square lattice below a flat boundary. Node (x, d) sits in column x at depth
/// d = -y >= 0. Each step goes x -> x + 1 and d -> d +/- 1, so there are no horizontal bonds.
///
/// The bond between (x, m) and (x + 1, m + 1) is (x, m, kDown); the bond between (x, m + 1) and (x + 1, m)
/// is (x, m, kUp). A bond is measured with probability p, independently. Measured bonds cost nothing and the
/// rest cost energy_unit.
class PolymerLattice {
   public:
    enum Direction : uint8_t { kDown = 0, kUp = 1 };

    /// Disorder drawn lazily from a counter-based hash of (seed, bond). `max_depth` = 0 means unbounded.
    PolymerLattice(size_t width, double p, uint64_t seed, size_t max_depth = 0, double energy_unit = 1.0);
    /// Explicit disorder: measured[bond_index(x, m, dir)] for x < width, m < max_depth.
    static PolymerLattice explicit_disorder(size_t width, size_t max_depth, std::vector<uint8_t> measured,
                                            double energy_unit = 1.0);

    size_t width() const {
        return width_;
    }
    /// Deepest reachable depth (width / 2 when unbounded).
    size_t max_depth() const {
        return max_depth_;
    }
    double p() const {
        return p_;
    }
    double energy_unit() const {
        return energy_unit_;
    }
    size_t num_bonds() const {
        return 2 * width_ * max_depth_;
    }
    size_t bond_index(size_t x, size_t m, Direction dir) const {
        return (x * max_depth_ + m) * 2 + dir;
    }

    bool measured(size_t x, size_t m, Direction dir) const;

   private:
    PolymerLattice() = default;

    size_t width_ = 0;
    size_t max_depth_ = 0;
    double p_ = 0;
    double energy_unit_ = 1;
    uint64_t key_ = 0;
    std::vector<uint8_t> explicit_;
};

/// Top-boundary endpoints of a path. Both ends sit at depth 0, so x_end - x_start must be even and positive.
struct PathQuery {
    size_t x_start = 0;
    size_t x_end = 0;
};

struct PathResult {
    /// Number of unmeasured bonds on the path.
    size_t unmeasured = 0;
    /// unmeasured * energy_unit.
    double energy = 0;
    /// depths[i] is the depth at column x_start + i. Empty unless requested.
    std::vector<int> depths;
};

/// Optimal path by dynamic programming. Ties prefer the predecessor at smaller depth. Throws
/// std::invalid_argument for an invalid query.
PathResult min_path_energy(const PolymerLattice &lat, PathQuery q, bool keep_path = true);
/// Exhaustive enumeration over all paths (span <= 24). Reports the minimum energy and the first optimal path in
/// the order that prefers shallower steps.
PathResult brute_force_min_energy(const PolymerLattice &lat, PathQuery q);
/// Energy of a given depth profile. Throws std::invalid_argument if it is not a valid path for `q`.
size_t path_unmeasured(const PolymerLattice &lat, PathQuery q, std::span<const int> depths);

/// How the length of a domain wall is read off its optimal path.
enum class LengthMeasure {
    /// Energy of the optimal path (unmeasured bond count times energy_unit).
    kEnergetic,
    /// Number of steps of the optimal path times energy_unit. Always equals the span on this lattice.
    kGeometric,
};

struct DomainWallResult {
    double e_a = 0;
    double e_b = 0;
    double e_ab = 0;
    /// (e_a + e_b - e_ab) / 2.
    double negativity = 0;
    /// e_a + e_b - e_ab.
    double mutual_information = 0;
};

/// Walls for A = [0, split), B = [split, width) and AB = [0, width). `split` = 0 means width / 2.
DomainWallResult domain_wall_negativity(const PolymerLattice &lat, size_t split = 0,
                                        LengthMeasure measure = LengthMeasure::kEnergetic);

struct KpzRow {
    size_t width = 0;
    size_t samples = 0;
    double mean_energy = 0;
    double mean_stderr = 0;
    double var_energy = 0;
    /// Smallest domain-wall negativity seen across samples.
    double min_negativity = 0;
};

struct KpzScan {
    double p = 0;
    std::vector<KpzRow> rows;
    /// True for p = 0 or p = 1, where every sample has the same energy and nothing is fitted.
    bool degenerate = false;
    /// mean E = s0 L + s1 L^(1/3).
    double s0 = 0;
    double s1 = 0;
    double mean_r_squared = 0;
    /// mean E = a L + b, for comparison.
    double linear_r_squared = 0;
    /// log var E = log A + two_beta log L.
    double two_beta = 0;
    double var_r_squared = 0;
};

/// Averages the full-width optimal path energy over `samples` disorder realizations for every width. Sample s
/// at width L uses seed hash(seed, L, s). Widths must be positive and divisible by 4.
KpzScan kpz_scan(std::span<const size_t> widths, double p, size_t samples, uint64_t seed, size_t threads = 1);

}  // namespace mixstab

#endif
