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


#include "mixstab/polymer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mixstab/circuit.h"
#include "mixstab/fit.h"
#include "mixstab/parallel.h"
#include "mixstab/rng.h"

namespace mixstab {

namespace {

constexpr size_t kInf = std::numeric_limits<size_t>::max() / 2;

void check_query(const PolymerLattice &lat, PathQuery q) {
    if (q.x_start >= q.x_end || q.x_end > lat.width()) {
        throw std::invalid_argument("path query needs x_start < x_end <= width");
    }
    if ((q.x_end - q.x_start) % 2 != 0) {
        throw std::invalid_argument("path span must be even for both ends to sit on the boundary");
    }
}

size_t bond_cost(const PolymerLattice &lat, size_t x, size_t m, PolymerLattice::Direction dir) {
    return lat.measured(x, m, dir) ? 0 : 1;
}

}  // namespace

PolymerLattice::PolymerLattice(size_t width, double p, uint64_t seed, size_t max_depth, double energy_unit)
    : width_(width),
      max_depth_(max_depth == 0 ? width / 2 : std::min(max_depth, width / 2)),
      p_(p),
      energy_unit_(energy_unit),
      key_(mix64(seed ^ 0xB7E151628AED2A6BULL)) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
}

PolymerLattice PolymerLattice::explicit_disorder(size_t width, size_t max_depth, std::vector<uint8_t> measured,
                                                 double energy_unit) {
    PolymerLattice lat;
    lat.width_ = width;
    lat.max_depth_ = max_depth;
    lat.energy_unit_ = energy_unit;
    if (measured.size() != lat.num_bonds()) {
        throw std::invalid_argument("explicit disorder needs 2 * width * max_depth entries");
    }
    size_t count = 0;
    for (auto v : measured) {
        count += v != 0;
    }
    lat.p_ = measured.empty() ? 0 : static_cast<double>(count) / static_cast<double>(measured.size());
    lat.explicit_ = std::move(measured);
    return lat;
}

bool PolymerLattice::measured(size_t x, size_t m, Direction dir) const {
    if (!explicit_.empty()) {
        return explicit_[bond_index(x, m, dir)] != 0;
    }
    if (p_ <= 0) {
        return false;
    }
    if (p_ >= 1) {
        return true;
    }
    uint64_t h = hash_combine(hash_combine(key_, x), 2 * m + dir);
    return static_cast<double>(h >> 11) * 0x1.0p-53 < p_;
}

PathResult min_path_energy(const PolymerLattice &lat, PathQuery q, bool keep_path) {
    check_query(lat, q);
    size_t span = q.x_end - q.x_start;
    size_t depth = std::min(span / 2, lat.max_depth());
    std::vector<size_t> cur(depth + 2, kInf), nxt(depth + 2, kInf);
    // from_above[i * (depth + 1) + d]: whether node (i, d) was reached from depth d - 1.
    std::vector<uint8_t> from_above(keep_path ? (span + 1) * (depth + 1) : 0, 0);
    cur[0] = 0;
    for (size_t i = 0; i < span; i++) {
        size_t x = q.x_start + i;
        size_t reach = std::min({i + 1, span - i - 1, depth});
        std::fill(nxt.begin(), nxt.end(), kInf);
        for (size_t d = (i + 1) % 2; d <= reach; d += 2) {
            size_t via_above = d > 0 && cur[d - 1] < kInf ? cur[d - 1] + bond_cost(lat, x, d - 1, PolymerLattice::kDown)
                                                          : kInf;
            size_t via_below = d + 1 <= depth && cur[d + 1] < kInf
                                   ? cur[d + 1] + bond_cost(lat, x, d, PolymerLattice::kUp)
                                   : kInf;
            bool above = via_above <= via_below;
            nxt[d] = above ? via_above : via_below;
            if (keep_path) {
                from_above[(i + 1) * (depth + 1) + d] = above;
            }
        }
        std::swap(cur, nxt);
    }
    PathResult result;
    result.unmeasured = cur[0];
    result.energy = static_cast<double>(cur[0]) * lat.energy_unit();
    if (keep_path) {
        result.depths.assign(span + 1, 0);
        int d = 0;
        for (size_t i = span; i > 0; i--) {
            result.depths[i] = d;
            d += from_above[i * (depth + 1) + static_cast<size_t>(d)] ? -1 : 1;
        }
        result.depths[0] = d;
    }
    return result;
}

size_t path_unmeasured(const PolymerLattice &lat, PathQuery q, std::span<const int> depths) {
    check_query(lat, q);
    size_t span = q.x_end - q.x_start;
    if (depths.size() != span + 1 || depths.front() != 0 || depths.back() != 0) {
        throw std::invalid_argument("path must have span + 1 depths starting and ending at 0");
    }
    size_t total = 0;
    for (size_t i = 0; i < span; i++) {
        int a = depths[i], b = depths[i + 1];
        if (a < 0 || b < 0 || std::abs(a - b) != 1 || static_cast<size_t>(std::max(a, b)) > lat.max_depth()) {
            throw std::invalid_argument("path leaves the lattice or takes a non-diagonal step");
        }
        auto dir = b > a ? PolymerLattice::kDown : PolymerLattice::kUp;
        total += bond_cost(lat, q.x_start + i, static_cast<size_t>(std::min(a, b)), dir);
    }
    return total;
}

PathResult brute_force_min_energy(const PolymerLattice &lat, PathQuery q) {
    check_query(lat, q);
    size_t span = q.x_end - q.x_start;
    if (span > 24) {
        throw std::invalid_argument("brute force is limited to spans <= 24");
    }
    PathResult best;
    best.unmeasured = kInf;
    std::vector<int> depths(span + 1, 0);
    auto recurse = [&](auto &&self, size_t i, size_t cost) -> void {
        int d = depths[i];
        if (i == span) {
            if (d == 0 && cost < best.unmeasured) {
                best.unmeasured = cost;
                best.depths = depths;
            }
            return;
        }
        // Must be able to return to the boundary in the remaining steps.
        for (int step : {-1, 1}) {
            int e = d + step;
            if (e < 0 || static_cast<size_t>(e) > lat.max_depth() || static_cast<size_t>(e) > span - i - 1) {
                continue;
            }
            auto dir = step > 0 ? PolymerLattice::kDown : PolymerLattice::kUp;
            depths[i + 1] = e;
            self(self, i + 1, cost + bond_cost(lat, q.x_start + i, static_cast<size_t>(std::min(d, e)), dir));
        }
    };
    recurse(recurse, 0, 0);
    best.energy = static_cast<double>(best.unmeasured) * lat.energy_unit();
    return best;
}

DomainWallResult domain_wall_negativity(const PolymerLattice &lat, size_t split, LengthMeasure measure) {
    size_t width = lat.width();
    if (split == 0) {
        split = width / 2;
    }
    auto length = [&](size_t a, size_t b) {
        if (measure == LengthMeasure::kGeometric) {
            check_query(lat, {a, b});
            return static_cast<double>(b - a) * lat.energy_unit();
        }
        return min_path_energy(lat, {a, b}, false).energy;
    };
    DomainWallResult r;
    r.e_a = length(0, split);
    r.e_b = length(split, width);
    r.e_ab = length(0, width);
    r.mutual_information = r.e_a + r.e_b - r.e_ab;
    r.negativity = 0.5 * r.mutual_information;
    return r;
}

KpzScan kpz_scan(std::span<const size_t> widths, double p, size_t samples, uint64_t seed, size_t threads) {
    if (widths.empty() || samples == 0) {
        throw std::invalid_argument("kpz_scan needs at least one width and one sample");
    }
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    for (size_t w : widths) {
        if (w == 0 || w % 4 != 0) {
            throw std::invalid_argument("kpz_scan widths must be positive multiples of 4");
        }
    }
    KpzScan scan;
    scan.p = p;
    scan.degenerate = p == 0 || p == 1;
    for (size_t w : widths) {
        std::vector<double> energies(samples), negativities(samples);
        parallel_for(samples, threads, [&](size_t s) {
            PolymerLattice lat(w, p, hash_combine(seed, hash_combine(w, s)));
            auto dw = domain_wall_negativity(lat);
            energies[s] = dw.e_ab;
            negativities[s] = dw.negativity;
        });
        KpzRow row;
        row.width = w;
        row.samples = samples;
        auto ms = mean_stderr(energies);
        row.mean_energy = ms.mean;
        row.mean_stderr = ms.sem;
        double ss = 0;
        for (double e : energies) {
            ss += (e - ms.mean) * (e - ms.mean);
        }
        row.var_energy = samples > 1 ? ss / static_cast<double>(samples - 1) : 0.0;
        row.min_negativity = *std::min_element(negativities.begin(), negativities.end());
        scan.rows.push_back(row);
    }
    if (scan.degenerate || scan.rows.size() < 3) {
        return scan;
    }
    std::vector<double> x, mean, log_x, log_var;
    for (const auto &row : scan.rows) {
        x.push_back(static_cast<double>(row.width));
        mean.push_back(row.mean_energy);
        if (row.var_energy > 0) {
            log_x.push_back(std::log(static_cast<double>(row.width)));
            log_var.push_back(std::log(row.var_energy));
        }
    }
    auto two_term = fit_basis(x, mean, {}, {[](double l) { return l; }, [](double l) { return std::cbrt(l); }});
    scan.s0 = two_term.coefficients[0];
    scan.s1 = two_term.coefficients[1];
    scan.mean_r_squared = two_term.r_squared;
    auto linear = fit_basis(x, mean, {}, {[](double l) { return l; }, [](double) { return 1.0; }});
    scan.linear_r_squared = linear.r_squared;
    if (log_x.size() >= 2) {
        auto var_fit = fit_basis(log_x, log_var, {}, {[](double) { return 1.0; }, [](double t) { return t; }});
        scan.two_beta = var_fit.coefficients[1];
        scan.var_r_squared = var_fit.r_squared;
    }
    return scan;
}

}  // namespace mixstab
