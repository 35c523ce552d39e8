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


#include "mixstab/analysis.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mixstab/rng.h"

using namespace mixstab;

namespace {

std::vector<FitPoint> synthetic(double c1, double c2, double err) {
    std::vector<FitPoint> pts;
    for (double l = 40; l <= 280; l += 40) {
        pts.push_back({l, c1 * std::cbrt(l) + c2, err});
    }
    return pts;
}

// y_L(p) = a_L + 2 tanh((p - p_c) L^(1/nu) / 5) plus optional noise.
std::vector<Curve> scaling_curves(double p_c, double nu, double noise, uint64_t seed, size_t num_p = 30) {
    Rng rng(seed);
    std::vector<Curve> curves;
    for (size_t l : {40, 80, 120, 160, 200}) {
        Curve c;
        c.num_qubits = l;
        for (size_t i = 0; i < num_p; i++) {
            double p = 0.1 + 0.145 * static_cast<double>(i) / static_cast<double>(num_p - 1);
            double y = 0.01 * static_cast<double>(l) +
                       2 * std::tanh((p - p_c) * std::pow(static_cast<double>(l), 1 / nu) / 5);
            c.points.push_back({p, y + noise * rng.normal(), noise});
        }
        curves.push_back(c);
    }
    return curves;
}

std::string read_file(const std::filesystem::path &p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST(analysis, power_law_fit_recovers_coefficients) {
    for (double err : {0.0, 0.05}) {
        auto fit = power_law_fit(synthetic(0.779, -1.307, err));
        EXPECT_NEAR(fit.c1, 0.779, 1e-9);
        EXPECT_NEAR(fit.c2, -1.307, 1e-9);
        EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
        EXPECT_LT(fit.ss_res, 1e-18);
        auto mi = power_law_fit(synthetic(1.670, -2.134, err));
        EXPECT_NEAR(mi.c1, 1.670, 1e-9);
        EXPECT_NEAR(mi.c2, -2.134, 1e-9);
    }
    auto flat = power_law_fit(synthetic(0.0, 3.25, 0.1));
    EXPECT_NEAR(flat.c1, 0.0, 1e-12);
    EXPECT_NEAR(flat.c2, 3.25, 1e-12);
    EXPECT_EQ(flat.r_squared, 1.0);
    auto two = synthetic(1, 1, 0);
    two.resize(2);
    EXPECT_THROW(power_law_fit(two), std::invalid_argument);
}

TEST(analysis, weighted_fit_matches_closed_form) {
    // Weighted least squares for a line in u = L^(1/3), solved from the normal equations by hand.
    std::vector<FitPoint> pts{{40, 1.3, 0.02}, {80, 2.1, 0.03}, {120, 2.5, 0.05}, {160, 3.0, 0.04}};
    double sw = 0, su = 0, sy = 0, suu = 0, suy = 0;
    for (const auto &pt : pts) {
        double w = 1 / (pt.err * pt.err), u = std::cbrt(pt.x);
        sw += w;
        su += w * u;
        sy += w * pt.y;
        suu += w * u * u;
        suy += w * u * pt.y;
    }
    double slope = (sw * suy - su * sy) / (sw * suu - su * su);
    double intercept = (sy - slope * su) / sw;
    auto fit = power_law_fit(pts);
    EXPECT_NEAR(fit.c1, slope, 1e-10);
    EXPECT_NEAR(fit.c2, intercept, 1e-10);
}

TEST(analysis, growth_model_comparison) {
    auto cube = compare_growth_models(synthetic(0.8, -1.3, 0.05));
    EXPECT_TRUE(cube.cube_root_preferred);
    std::vector<FitPoint> lin;
    for (double l = 40; l <= 280; l += 40) {
        lin.push_back({l, 0.01 * l + 2, 0.05});
    }
    auto c = compare_growth_models(lin);
    EXPECT_FALSE(c.cube_root_preferred);
    EXPECT_NEAR(c.linear.c1, 0.01, 1e-12);
    std::vector<double> x{1, 2, 5, 10, 20, 50, 100}, y;
    for (double v : x) {
        y.push_back(5 * std::pow(v, -1.5));
    }
    auto ll = log_log_fit(x, y, 2, 50);
    EXPECT_NEAR(ll.c1, -1.5, 1e-12);
    EXPECT_NEAR(std::exp(ll.c2), 5, 1e-9);
}

TEST(analysis, collapse_objective_properties) {
    auto curves = scaling_curves(0.16, 0.94, 0, 1);
    double at_truth = collapse_objective(curves, 0.16, 0.94);
    EXPECT_LT(at_truth, 1e-3);
    EXPECT_GT(collapse_objective(curves, 0.16, 1e6), 10 * at_truth);
    EXPECT_GT(collapse_objective(curves, 0.19, 0.94), 10 * at_truth);
    std::vector<Curve> one{curves[2]};
    EXPECT_EQ(collapse_objective(one, 0.17, 1.0), 0.0);
    auto shuffled = curves;
    std::reverse(shuffled.begin(), shuffled.end());
    std::swap(shuffled[0], shuffled[2]);
    EXPECT_NEAR(collapse_objective(shuffled, 0.15, 1.1), collapse_objective(curves, 0.15, 1.1), 1e-12);
    EXPECT_THROW(collapse_objective(curves, 0.3, 1.0), std::invalid_argument);
    EXPECT_THROW(collapse_objective(curves, 0.16, 0.0), std::invalid_argument);
}

TEST(analysis, optimize_collapse_recovers_parameters) {
    CollapseOptions opt;
    double grid_p = 0.145 / static_cast<double>(opt.grid_p - 1);
    double grid_nu = (opt.nu_max - opt.nu_min) / static_cast<double>(opt.grid_nu - 1);
    auto fit = optimize_collapse(scaling_curves(0.16, 0.94, 0, 1), opt);
    EXPECT_NEAR(fit.p_c, 0.16, grid_p);
    EXPECT_NEAR(fit.nu, 0.94, grid_nu);
    EXPECT_GT(fit.trace.size(), opt.grid_p * opt.grid_nu);
    auto other = optimize_collapse(scaling_curves(0.13, 1.3, 0, 1), opt);
    EXPECT_NEAR(other.p_c, 0.13, grid_p);
    EXPECT_NEAR(other.nu, 1.3, grid_nu);
    // Consistency: estimates approach the truth as the noise shrinks.
    double prev_err = std::numeric_limits<double>::infinity();
    for (double noise : {0.1, 0.01}) {
        double err = 0;
        for (uint64_t seed = 0; seed < 4; seed++) {
            auto f = optimize_collapse(scaling_curves(0.16, 0.94, noise, seed), opt);
            err += std::abs(f.p_c - 0.16) / grid_p + std::abs(f.nu - 0.94) / grid_nu;
        }
        EXPECT_LT(err, prev_err + 1e-12);
        prev_err = err;
    }
    EXPECT_LT(prev_err, 4 * 2.0);
    auto two = scaling_curves(0.16, 0.94, 0, 1);
    two.resize(2);
    EXPECT_THROW(optimize_collapse(two), std::invalid_argument);
    auto disjoint = scaling_curves(0.16, 0.94, 0, 1);
    for (auto &pt : disjoint[0].points) {
        pt.p += 0.2;
    }
    EXPECT_THROW(optimize_collapse(disjoint), std::invalid_argument);
}

TEST(analysis, sweep_round_trip) {
    SweepSpec spec;
    spec.num_qubits = {8, 12};
    spec.p_values = {0.0, 0.2};
    spec.base.samples = 4;
    auto rows = run_sweep(spec);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].num_qubits, 8u);
    EXPECT_EQ(rows[0].p, 0.0);
    EXPECT_EQ(rows[0].negativity.mean, 0.0);
    EXPECT_EQ(rows[3].num_qubits, 12u);
    std::stringstream buf;
    write_sweep_csv(buf, rows, "test");
    auto back = read_sweep_csv(buf);
    ASSERT_EQ(back.size(), rows.size());
    for (size_t i = 0; i < rows.size(); i++) {
        EXPECT_EQ(back[i].num_qubits, rows[i].num_qubits);
        EXPECT_NEAR(back[i].mutual_information.mean, rows[i].mutual_information.mean,
                    1e-8 * (1 + rows[i].mutual_information.mean));
        EXPECT_EQ(back[i].config_hash, rows[i].config_hash);
        EXPECT_EQ(back[i].stationary_negativity, rows[i].stationary_negativity);
    }
    auto pts = fit_points_at(rows, SweepObservable::kMutualInformation, 0.2, 10, false);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0].x, 12.0);
    auto curves = curves_from_sweep(rows, SweepObservable::kNegativity);
    ASSERT_EQ(curves.size(), 2u);
    EXPECT_EQ(curves[1].points.size(), 2u);
    std::stringstream bad("L,p\n1,2\n");
    EXPECT_THROW(read_sweep_csv(bad), std::runtime_error);
    spec.p_values = {1.5};
    EXPECT_FALSE(sweep_spec_error(spec).empty());
    EXPECT_THROW(parse_sweep_observable("S"), std::invalid_argument);
}

TEST(analysis, reproduce_formats) {
    auto dir = std::filesystem::temp_directory_path() / "mixstab_analysis_test";
    std::filesystem::remove_all(dir);
    EXPECT_THROW(reproduce_figure("fig9", FigureScale::kDesk, dir), std::invalid_argument);
    auto out = reproduce_figure("fig1b_inset", FigureScale::kDesk, dir, 3);
    EXPECT_EQ(out.files.size(), 3u);
    auto fit = read_file(dir / "fig1b_inset_fit.csv");
    EXPECT_NE(fit.find("# mixstab reproduce name=fig1b_inset scale=desk"), std::string::npos);
    EXPECT_NE(fit.find("\nc1,c2,r_squared\n"), std::string::npos);
    auto data = read_file(dir / "fig1b_inset.csv");
    EXPECT_NE(data.find("\nL,L_cbrt,E,stderr,stationary\n40,"), std::string::npos);
    std::filesystem::remove_all(dir);
}
