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


#ifndef MIXSTAB_ANALYSIS_H
#define MIXSTAB_ANALYSIS_H

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixstab/circuit.h"

namespace mixstab {

/// One measured value y(x) with its standard error.
struct FitPoint {
    double x = 0;
    double y = 0;
    double err = 0;
};

/// y = c1 f(x) + c2.
struct TwoParameterFit {
    double c1 = 0;
    double c2 = 0;
    double r_squared = 0;
    /// Weighted residual sum of squares.
    double ss_res = 0;
};

/// Weighted least squares of y on (x^(1/3), 1). Weights are 1/err^2 when every err is positive and 1
/// otherwise. Throws std::invalid_argument for fewer than 3 points.
TwoParameterFit power_law_fit(std::span<const FitPoint> points);
/// The same fit against f(x) = x.
TwoParameterFit linear_fit(std::span<const FitPoint> points);
/// The same fit against f(x) = ln x.
TwoParameterFit log_fit(std::span<const FitPoint> points);

struct GrowthModelComparison {
    TwoParameterFit cube_root;
    TwoParameterFit linear;
    TwoParameterFit log;
    /// The cube-root model has the smallest residual of the three.
    bool cube_root_preferred = false;
};
GrowthModelComparison compare_growth_models(std::span<const FitPoint> points);

/// Least squares slope and intercept of ln y against ln x over the points with x in [x_min, x_max] and y > 0.
TwoParameterFit log_log_fit(std::span<const double> x, std::span<const double> y, double x_min, double x_max);

/// Late-time means of one (L, p) point of a sweep.
struct SweepRow {
    size_t num_qubits = 0;
    double p = 0;
    size_t samples = 0;
    MeanStderr negativity;
    MeanStderr mutual_information;
    bool stationary_negativity = false;
    bool stationary_mutual_information = false;
    uint64_t config_hash = 0;
};

struct SweepSpec {
    std::vector<size_t> num_qubits;
    std::vector<double> p_values;
    /// num_qubits and p are overwritten per point; every other field is shared.
    CircuitConfig base;
};

/// Returns a description of the first invalid entry, or an empty string.
std::string sweep_spec_error(const SweepSpec &spec);
/// Runs every (L, p) pair in row-major order (L outer). `progress`, if given, gets one line per point.
std::vector<SweepRow> run_sweep(const SweepSpec &spec, size_t threads = 1, std::ostream *progress = nullptr);
SweepRow summarize_sweep_point(const MonteCarloResult &result);

/// Columns L,p,samples,E,E_stderr,I,I_stderr,stationary_E,stationary_I,config_hash; 9 significant digits.
void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows, std::string_view comment = {});
/// Reads the format above, skipping lines that start with '#'. Throws std::runtime_error on malformed input.
std::vector<SweepRow> read_sweep_csv(std::istream &in);

enum class SweepObservable { kNegativity, kMutualInformation };
SweepObservable parse_sweep_observable(std::string_view name);
MeanStderr sweep_value(const SweepRow &row, SweepObservable o);

/// Fit points (L, value, stderr) at rate p, keeping L >= min_l and, if requested, only stationary points.
std::vector<FitPoint> fit_points_at(std::span<const SweepRow> rows, SweepObservable o, double p, size_t min_l = 40,
                                    bool require_stationary = true);

struct CurvePoint {
    double p = 0;
    double y = 0;
    double err = 0;
};
/// One system size's measurements, sorted by p.
struct Curve {
    size_t num_qubits = 0;
    std::vector<CurvePoint> points;
};
std::vector<Curve> curves_from_sweep(std::span<const SweepRow> rows, SweepObservable o);

/// Quality of the collapse y_L(p) - y_L(p_c) = F((p - p_c) L^(1/nu)). Each curve is shifted by its linearly
/// interpolated value at p_c and rescaled. Every point is compared with the mean of the other curves' piecewise
/// linear interpolants at its abscissa, and the result is the mean of squared residual over combined variance
/// (plain mean squared residual if any error bar is zero). One curve gives 0 and curves with no overlap give
/// +inf. Throws std::invalid_argument if p_c lies outside some curve's range or nu <= 0.
double collapse_objective(std::span<const Curve> curves, double p_c, double nu);

struct CollapseOptions {
    size_t grid_p = 31;
    size_t grid_nu = 31;
    double nu_min = 0.5;
    double nu_max = 2.0;
    size_t max_simplex_iterations = 400;
};

struct CollapseFit {
    double p_c = 0;
    double nu = 0;
    double objective = 0;
    /// Every evaluated (p_c, nu, objective): the grid first, then the simplex iterates.
    std::vector<std::array<double, 3>> trace;
};

/// Grid search over p_c in the common p range of all curves and nu in [nu_min, nu_max], then Nelder-Mead
/// refinement inside the same box. Throws std::invalid_argument for fewer than 3 curves or a common p range
/// too narrow to hold a transition.
CollapseFit optimize_collapse(std::span<const Curve> curves, const CollapseOptions &options = {});

/// Writes (L, x, y - y(p_c), err) for a given collapse.
void write_collapse_csv(std::ostream &out, std::span<const Curve> curves, const CollapseFit &fit);

enum class FigureScale { kDesk, kFull };
FigureScale parse_figure_scale(std::string_view name);

struct ReproduceOutput {
    std::vector<std::filesystem::path> files;
    /// Human readable one-line results (fit values and similar).
    std::vector<std::string> summary;
};

/// Names: fig1b, fig1b_inset, fig3, supp_mi, supp_collapse. Writes <name>.csv and <name>.plot.tsv (blank-line
/// separated series) into `out_dir`, each starting with a comment describing the run. Throws
/// std::invalid_argument for an unknown name.
ReproduceOutput reproduce_figure(std::string_view name, FigureScale scale, const std::filesystem::path &out_dir,
                                 uint64_t seed = 1, size_t threads = 1, std::ostream *progress = nullptr);

/// Formats with 9 significant digits.
std::string fmt9(double v);

}  // namespace mixstab

#endif
