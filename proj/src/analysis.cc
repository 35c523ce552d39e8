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

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mixstab/fit.h"
#include "mixstab/rng.h"

namespace mixstab {

namespace {

TwoParameterFit two_parameter_fit(std::span<const FitPoint> points, double (*f)(double)) {
    if (points.size() < 3) {
        throw std::invalid_argument("fit needs at least 3 points");
    }
    std::vector<double> x, y, w;
    bool weighted = true;
    for (const auto &pt : points) {
        x.push_back(pt.x);
        y.push_back(pt.y);
        weighted = weighted && pt.err > 0;
    }
    if (weighted) {
        for (const auto &pt : points) {
            w.push_back(1.0 / (pt.err * pt.err));
        }
    }
    auto fit = fit_basis(x, y, w, {f, [](double) { return 1.0; }});
    return {fit.coefficients[0], fit.coefficients[1], fit.r_squared, fit.ss_res};
}

double identity_fn(double x) {
    return x;
}
double cbrt_fn(double x) {
    return std::cbrt(x);
}
double log_fn(double x) {
    return std::log(x);
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t end = line.find(sep, start);
        out.emplace_back(line.substr(start, end == std::string_view::npos ? end : end - start));
        if (end == std::string_view::npos) {
            return out;
        }
        start = end + 1;
    }
}

template <typename T>
std::string join(const std::vector<T> &values, char sep) {
    std::ostringstream out;
    out << std::setprecision(9);
    for (size_t i = 0; i < values.size(); i++) {
        out << (i ? std::string(1, sep) : "") << values[i];
    }
    return out.str();
}

/// Piecewise-linear interpolation on sorted abscissae; x must lie within [xs.front(), xs.back()].
double interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    size_t hi = static_cast<size_t>(it - xs.begin());
    if (hi == 0) {
        return ys.front();
    }
    if (hi >= xs.size()) {
        return ys.back();
    }
    size_t lo = hi - 1;
    double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

struct ScaledCurve {
    std::vector<double> x, y, err;
};

std::pair<double, double> common_range(std::span<const Curve> curves) {
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (const auto &c : curves) {
        if (c.points.empty()) {
            throw std::invalid_argument("empty curve");
        }
        lo = std::max(lo, c.points.front().p);
        hi = std::min(hi, c.points.back().p);
    }
    return {lo, hi};
}

std::vector<double> linspace(double lo, double hi, size_t n) {
    std::vector<double> out(n);
    for (size_t i = 0; i < n; i++) {
        out[i] = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

struct CollapseProblem {
    std::span<const Curve> curves;
    double p_lo, p_hi, nu_lo, nu_hi;
    std::vector<std::array<double, 3>> *trace;
};

double simplex_objective(const gsl_vector *v, void *params) {
    auto *prob = static_cast<CollapseProblem *>(params);
    double p_c = gsl_vector_get(v, 0), nu = gsl_vector_get(v, 1);
    // Outside the search box: a large penalty growing with the distance keeps the simplex inside.
    double excess = std::max({0.0, prob->p_lo - p_c, p_c - prob->p_hi, prob->nu_lo - nu, nu - prob->nu_hi});
    if (excess > 0) {
        return 1e10 * (1 + excess);
    }
    double value = collapse_objective(prob->curves, p_c, nu);
    prob->trace->push_back({p_c, nu, value});
    return std::isfinite(value) ? value : 1e10;
}

CircuitConfig point_config(const CircuitConfig &base, size_t l, double p) {
    CircuitConfig cfg = base;
    cfg.num_qubits = l;
    cfg.p = p;
    cfg.seed = hash_combine(base.seed, hash_combine(l, std::bit_cast<uint64_t>(p)));
    return cfg;
}

std::vector<size_t> step_sizes(size_t first, size_t last, size_t step) {
    std::vector<size_t> out;
    for (size_t l = first; l <= last; l += step) {
        out.push_back(l);
    }
    return out;
}

std::vector<double> p_grid(double first, size_t count, double step) {
    std::vector<double> out;
    for (size_t i = 0; i < count; i++) {
        // Rounded so the values print cleanly.
        out.push_back(std::round((first + step * static_cast<double>(i)) * 1e6) / 1e6);
    }
    return out;
}

std::ofstream open_output(const std::filesystem::path &path, ReproduceOutput &out) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out.files.push_back(path);
    return f;
}

std::string run_header(std::string_view name, FigureScale scale, uint64_t seed, const SweepSpec &spec) {
    std::ostringstream h;
    h << "# mixstab reproduce name=" << name << " scale=" << (scale == FigureScale::kDesk ? "desk" : "full")
      << " seed=" << seed << " L=" << join(spec.num_qubits, ';') << " p=" << join(spec.p_values, ';')
      << " samples=" << spec.base.samples << " T=" << (spec.base.depth == 0 ? "4L" : std::to_string(spec.base.depth))
      << " schedule=" << spec.base.schedule.str() << " config_hash=" << hex64(config_hash(spec.base)) << "\n";
    return h.str();
}

void write_sweep_figure(std::string_view name, SweepObservable o, FigureScale scale, const SweepSpec &spec,
                        std::span<const SweepRow> rows, const std::filesystem::path &dir, uint64_t seed,
                        ReproduceOutput &out) {
    std::string header = run_header(name, scale, seed, spec);
    const char *col = o == SweepObservable::kNegativity ? "E" : "I";
    auto csv = open_output(dir / (std::string(name) + ".csv"), out);
    csv << header << "L,p," << col << ",stderr,samples\n";
    for (const auto &r : rows) {
        auto v = sweep_value(r, o);
        csv << r.num_qubits << ',' << fmt9(r.p) << ',' << fmt9(v.mean) << ',' << fmt9(v.sem) << ',' << r.samples
            << '\n';
    }
    auto plot = open_output(dir / (std::string(name) + ".plot.tsv"), out);
    plot << header << "# one block per L: p " << col << " stderr\n";
    for (const auto &curve : curves_from_sweep(rows, o)) {
        plot << "# L=" << curve.num_qubits << "\n";
        for (const auto &pt : curve.points) {
            plot << fmt9(pt.p) << '\t' << fmt9(pt.y) << '\t' << fmt9(pt.err) << '\n';
        }
        plot << "\n\n";
    }
}

}  // namespace

std::string fmt9(double v) {
    std::ostringstream s;
    s << std::setprecision(9) << v;
    return s.str();
}

TwoParameterFit power_law_fit(std::span<const FitPoint> points) {
    return two_parameter_fit(points, cbrt_fn);
}

TwoParameterFit linear_fit(std::span<const FitPoint> points) {
    return two_parameter_fit(points, identity_fn);
}

TwoParameterFit log_fit(std::span<const FitPoint> points) {
    for (const auto &pt : points) {
        if (!(pt.x > 0)) {
            throw std::invalid_argument("log fit needs positive x");
        }
    }
    return two_parameter_fit(points, log_fn);
}

GrowthModelComparison compare_growth_models(std::span<const FitPoint> points) {
    GrowthModelComparison c;
    c.cube_root = power_law_fit(points);
    c.linear = linear_fit(points);
    c.log = log_fit(points);
    c.cube_root_preferred = c.cube_root.ss_res < c.linear.ss_res && c.cube_root.ss_res < c.log.ss_res;
    return c;
}

TwoParameterFit log_log_fit(std::span<const double> x, std::span<const double> y, double x_min, double x_max) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("log-log fit inputs have mismatched lengths");
    }
    std::vector<FitPoint> pts;
    for (size_t i = 0; i < x.size(); i++) {
        if (x[i] >= x_min && x[i] <= x_max && x[i] > 0 && y[i] > 0) {
            pts.push_back({std::log(x[i]), std::log(y[i]), 0});
        }
    }
    return two_parameter_fit(pts, identity_fn);
}

std::string sweep_spec_error(const SweepSpec &spec) {
    if (spec.num_qubits.empty() || spec.p_values.empty()) {
        return "sweep needs at least one L and one p";
    }
    for (size_t l : spec.num_qubits) {
        for (double p : spec.p_values) {
            if (auto err = config_error(point_config(spec.base, l, p))) {
                return "L=" + std::to_string(l) + " p=" + fmt9(p) + ": " + *err;
            }
        }
    }
    return "";
}

SweepRow summarize_sweep_point(const MonteCarloResult &result) {
    const auto &cfg = result.config;
    SweepRow row;
    row.num_qubits = cfg.num_qubits;
    row.p = cfg.p;
    row.samples = cfg.samples;
    row.negativity = result.late_time(Observable::kE);
    row.mutual_information = result.late_time(Observable::kI);
    if (cfg.effective_depth() >= 2 * cfg.num_qubits) {
        row.stationary_negativity = stationarity_gate(result, Observable::kE).passed;
        row.stationary_mutual_information = stationarity_gate(result, Observable::kI).passed;
    }
    row.config_hash = config_hash(cfg);
    return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec, size_t threads, std::ostream *progress) {
    if (auto err = sweep_spec_error(spec); !err.empty()) {
        throw std::invalid_argument(err);
    }
    std::vector<SweepRow> rows;
    for (size_t l : spec.num_qubits) {
        for (double p : spec.p_values) {
            rows.push_back(summarize_sweep_point(monte_carlo(point_config(spec.base, l, p), threads)));
            if (progress) {
                const auto &r = rows.back();
                *progress << "L=" << l << " p=" << fmt9(p) << " E=" << fmt9(r.negativity.mean) << "+-"
                          << fmt9(r.negativity.sem) << " I=" << fmt9(r.mutual_information.mean) << "+-"
                          << fmt9(r.mutual_information.sem) << std::endl;
            }
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows, std::string_view comment) {
    if (!comment.empty()) {
        out << "# " << comment << "\n";
    }
    out << "L,p,samples,E,E_stderr,I,I_stderr,stationary_E,stationary_I,config_hash\n";
    for (const auto &r : rows) {
        out << r.num_qubits << ',' << fmt9(r.p) << ',' << r.samples << ',' << fmt9(r.negativity.mean) << ','
            << fmt9(r.negativity.sem) << ',' << fmt9(r.mutual_information.mean) << ','
            << fmt9(r.mutual_information.sem) << ',' << r.stationary_negativity << ','
            << r.stationary_mutual_information << ',' << hex64(r.config_hash) << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream &in) {
    std::vector<SweepRow> rows;
    std::string line;
    bool header = false;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            if (line.rfind("L,p,samples,E,E_stderr,I,I_stderr", 0) != 0) {
                throw std::runtime_error("unexpected sweep CSV header: " + line);
            }
            header = true;
            continue;
        }
        auto f = split(line, ',');
        if (f.size() != 10) {
            throw std::runtime_error("sweep CSV line " + std::to_string(line_no) + " has " +
                                     std::to_string(f.size()) + " fields");
        }
        try {
            SweepRow r;
            r.num_qubits = std::stoull(f[0]);
            r.p = std::stod(f[1]);
            r.samples = std::stoull(f[2]);
            r.negativity = {std::stod(f[3]), std::stod(f[4])};
            r.mutual_information = {std::stod(f[5]), std::stod(f[6])};
            r.stationary_negativity = f[7] == "1";
            r.stationary_mutual_information = f[8] == "1";
            r.config_hash = std::stoull(f[9], nullptr, 16);
            rows.push_back(r);
        } catch (const std::logic_error &) {
            throw std::runtime_error("sweep CSV line " + std::to_string(line_no) + " is malformed");
        }
    }
    if (!header) {
        throw std::runtime_error("sweep CSV has no header");
    }
    return rows;
}

SweepObservable parse_sweep_observable(std::string_view name) {
    if (name == "E") {
        return SweepObservable::kNegativity;
    }
    if (name == "I") {
        return SweepObservable::kMutualInformation;
    }
    throw std::invalid_argument("unknown observable '" + std::string(name) + "' (expected E or I)");
}

MeanStderr sweep_value(const SweepRow &row, SweepObservable o) {
    return o == SweepObservable::kNegativity ? row.negativity : row.mutual_information;
}

std::vector<FitPoint> fit_points_at(std::span<const SweepRow> rows, SweepObservable o, double p, size_t min_l,
                                    bool require_stationary) {
    std::vector<FitPoint> out;
    for (const auto &r : rows) {
        bool stationary = o == SweepObservable::kNegativity ? r.stationary_negativity
                                                            : r.stationary_mutual_information;
        if (std::abs(r.p - p) < 1e-9 && r.num_qubits >= min_l && (stationary || !require_stationary)) {
            auto v = sweep_value(r, o);
            out.push_back({static_cast<double>(r.num_qubits), v.mean, v.sem});
        }
    }
    return out;
}

std::vector<Curve> curves_from_sweep(std::span<const SweepRow> rows, SweepObservable o) {
    std::map<size_t, Curve> by_l;
    for (const auto &r : rows) {
        auto &c = by_l[r.num_qubits];
        c.num_qubits = r.num_qubits;
        auto v = sweep_value(r, o);
        c.points.push_back({r.p, v.mean, v.sem});
    }
    std::vector<Curve> out;
    for (auto &[l, c] : by_l) {
        std::sort(c.points.begin(), c.points.end(), [](const auto &a, const auto &b) { return a.p < b.p; });
        out.push_back(std::move(c));
    }
    return out;
}

double collapse_objective(std::span<const Curve> curves, double p_c, double nu) {
    if (!(nu > 0)) {
        throw std::invalid_argument("nu must be positive");
    }
    auto [lo, hi] = common_range(curves);
    if (!(p_c >= lo && p_c <= hi)) {
        throw std::invalid_argument("p_c lies outside the data range");
    }
    if (curves.size() < 2) {
        return 0;
    }
    bool weighted = true;
    std::vector<ScaledCurve> scaled;
    for (const auto &c : curves) {
        std::vector<double> ps, ys;
        for (const auto &pt : c.points) {
            ps.push_back(pt.p);
            ys.push_back(pt.y);
            weighted = weighted && pt.err > 0;
        }
        double y_c = interpolate(ps, ys, p_c);
        double scale = std::pow(static_cast<double>(c.num_qubits), 1.0 / nu);
        ScaledCurve s;
        for (const auto &pt : c.points) {
            s.x.push_back((pt.p - p_c) * scale);
            s.y.push_back(pt.y - y_c);
            s.err.push_back(pt.err);
        }
        scaled.push_back(std::move(s));
    }
    double total = 0;
    size_t count = 0;
    for (size_t i = 0; i < scaled.size(); i++) {
        for (size_t k = 0; k < scaled[i].x.size(); k++) {
            double x = scaled[i].x[k];
            double sum = 0, var_sum = 0;
            size_t m = 0;
            for (size_t j = 0; j < scaled.size(); j++) {
                if (j == i || x < scaled[j].x.front() || x > scaled[j].x.back()) {
                    continue;
                }
                sum += interpolate(scaled[j].x, scaled[j].y, x);
                double e = interpolate(scaled[j].x, scaled[j].err, x);
                var_sum += e * e;
                m++;
            }
            if (m == 0) {
                continue;
            }
            double md = static_cast<double>(m);
            double r = scaled[i].y[k] - sum / md;
            double var = weighted ? scaled[i].err[k] * scaled[i].err[k] + var_sum / (md * md) : 1.0;
            total += r * r / var;
            count++;
        }
    }
    return count == 0 ? std::numeric_limits<double>::infinity() : total / static_cast<double>(count);
}

CollapseFit optimize_collapse(std::span<const Curve> curves, const CollapseOptions &options) {
    if (curves.size() < 3) {
        throw std::invalid_argument("collapse needs at least 3 system sizes");
    }
    auto [lo, hi] = common_range(curves);
    size_t inside = 0;
    for (const auto &pt : curves.front().points) {
        inside += pt.p >= lo && pt.p <= hi;
    }
    if (!(hi > lo) || inside < 3) {
        throw std::invalid_argument("curves share fewer than 3 rates, so they cannot straddle a transition");
    }
    if (!(options.nu_min > 0 && options.nu_max > options.nu_min) || options.grid_p < 2 || options.grid_nu < 2) {
        throw std::invalid_argument("invalid collapse search options");
    }
    CollapseFit best;
    best.objective = std::numeric_limits<double>::infinity();
    auto ps = linspace(lo, hi, options.grid_p);
    auto nus = linspace(options.nu_min, options.nu_max, options.grid_nu);
    for (double p_c : ps) {
        for (double nu : nus) {
            double v = collapse_objective(curves, p_c, nu);
            best.trace.push_back({p_c, nu, v});
            if (v < best.objective) {
                best.objective = v;
                best.p_c = p_c;
                best.nu = nu;
            }
        }
    }
    if (!std::isfinite(best.objective)) {
        throw std::invalid_argument("curves never overlap after rescaling");
    }

    CollapseProblem prob{curves, lo, hi, options.nu_min, options.nu_max, &best.trace};
    gsl_multimin_function fn{&simplex_objective, 2, &prob};
    gsl_vector *x = gsl_vector_alloc(2), *step = gsl_vector_alloc(2);
    gsl_vector_set(x, 0, best.p_c);
    gsl_vector_set(x, 1, best.nu);
    gsl_vector_set(step, 0, 0.5 * (ps[1] - ps[0]));
    gsl_vector_set(step, 1, 0.5 * (nus[1] - nus[0]));
    gsl_multimin_fminimizer *s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
    gsl_multimin_fminimizer_set(s, &fn, x, step);
    for (size_t iter = 0; iter < options.max_simplex_iterations; iter++) {
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) {
            break;
        }
        if (s->fval < best.objective) {
            best.objective = s->fval;
            best.p_c = gsl_vector_get(s->x, 0);
            best.nu = gsl_vector_get(s->x, 1);
        }
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-8) == GSL_SUCCESS) {
            break;
        }
    }
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(x);
    gsl_vector_free(step);
    return best;
}

void write_collapse_csv(std::ostream &out, std::span<const Curve> curves, const CollapseFit &fit) {
    out << "# p_c=" << fmt9(fit.p_c) << " nu=" << fmt9(fit.nu) << " objective=" << fmt9(fit.objective) << "\n";
    out << "L,x,y,err\n";
    for (const auto &c : curves) {
        std::vector<double> ps, ys;
        for (const auto &pt : c.points) {
            ps.push_back(pt.p);
            ys.push_back(pt.y);
        }
        double y_c = interpolate(ps, ys, fit.p_c);
        double scale = std::pow(static_cast<double>(c.num_qubits), 1.0 / fit.nu);
        for (const auto &pt : c.points) {
            out << c.num_qubits << ',' << fmt9((pt.p - fit.p_c) * scale) << ',' << fmt9(pt.y - y_c) << ','
                << fmt9(pt.err) << '\n';
        }
    }
}

FigureScale parse_figure_scale(std::string_view name) {
    if (name == "desk") {
        return FigureScale::kDesk;
    }
    if (name == "full") {
        return FigureScale::kFull;
    }
    throw std::invalid_argument("unknown scale '" + std::string(name) + "' (expected desk or full)");
}

ReproduceOutput reproduce_figure(std::string_view name, FigureScale scale, const std::filesystem::path &out_dir,
                                 uint64_t seed, size_t threads, std::ostream *progress) {
    bool full = scale == FigureScale::kFull;
    std::filesystem::create_directories(out_dir);
    ReproduceOutput out;
    SweepSpec spec;
    spec.base.seed = seed;

    if (name == "fig1b" || name == "supp_mi") {
        spec.num_qubits = full ? step_sizes(40, 280, 40) : step_sizes(40, 120, 40);
        spec.p_values = full ? p_grid(0.0, 13, 0.025) : p_grid(0.0, 7, 0.05);
        spec.base.samples = full ? 200 : 40;
        auto rows = run_sweep(spec, threads, progress);
        auto o = name == "fig1b" ? SweepObservable::kNegativity : SweepObservable::kMutualInformation;
        write_sweep_figure(name, o, scale, spec, rows, out_dir, seed, out);
        out.summary.push_back(std::string(name) + ": " + std::to_string(rows.size()) + " (L, p) points");
        return out;
    }

    if (name == "fig1b_inset") {
        spec.num_qubits = full ? step_sizes(40, 280, 40) : step_sizes(40, 160, 40);
        spec.p_values = {0.1};
        spec.base.samples = full ? 200 : 50;
        auto rows = run_sweep(spec, threads, progress);
        std::string header = run_header(name, scale, seed, spec);
        std::vector<FitPoint> pts = fit_points_at(rows, SweepObservable::kNegativity, 0.1, 40, false);
        auto fit = power_law_fit(pts);
        auto csv = open_output(out_dir / "fig1b_inset.csv", out);
        csv << header << "L,L_cbrt,E,stderr,stationary\n";
        for (const auto &r : rows) {
            csv << r.num_qubits << ',' << fmt9(std::cbrt(static_cast<double>(r.num_qubits))) << ','
                << fmt9(r.negativity.mean) << ',' << fmt9(r.negativity.sem) << ',' << r.stationary_negativity << '\n';
        }
        auto fit_csv = open_output(out_dir / "fig1b_inset_fit.csv", out);
        fit_csv << header << "c1,c2,r_squared\n" << fmt9(fit.c1) << ',' << fmt9(fit.c2) << ',' << fmt9(fit.r_squared)
                << '\n';
        auto plot = open_output(out_dir / "fig1b_inset.plot.tsv", out);
        plot << header << "# block 0: L^(1/3) E stderr; block 1: L^(1/3) fit\n";
        for (const auto &pt : pts) {
            plot << fmt9(std::cbrt(pt.x)) << '\t' << fmt9(pt.y) << '\t' << fmt9(pt.err) << '\n';
        }
        plot << "\n\n";
        for (double u : linspace(std::cbrt(pts.front().x), std::cbrt(pts.back().x), 50)) {
            plot << fmt9(u) << '\t' << fmt9(fit.c1 * u + fit.c2) << '\n';
        }
        out.summary.push_back("fig1b_inset: c1=" + fmt9(fit.c1) + " c2=" + fmt9(fit.c2) +
                              " r2=" + fmt9(fit.r_squared));
        return out;
    }

    if (name == "fig3") {
        size_t l = full ? 480 : 120;
        CircuitConfig base;
        base.num_qubits = l;
        base.p = 0.1;
        base.seed = seed;
        base.samples = full ? 200 : 100;
        base.observables_every = l;
        struct Series {
            std::string label;
            DephasingSchedule schedule;
        };
        std::vector<Series> series{{"with_baths", DephasingSchedule::random_sites(2)},
                                   {"without_baths", DephasingSchedule::random_sites(0)}};
        std::vector<std::vector<double>> hists;
        for (const auto &s : series) {
            CircuitConfig cfg = base;
            cfg.schedule = s.schedule;
            hists.push_back(monte_carlo(cfg, threads, true).final_length_histogram);
            if (progress) {
                *progress << "fig3 " << s.label << " done" << std::endl;
            }
        }
        std::ostringstream header;
        header << "# mixstab reproduce name=fig3 scale=" << (full ? "full" : "desk") << " seed=" << seed
               << " L=" << l << " p=0.1 samples=" << base.samples << " T=4L schedules=random_sites:2;random_sites:0"
               << " config_hash=" << hex64(config_hash(base)) << "\n";
        auto csv = open_output(out_dir / "fig3.csv", out);
        csv << header.str() << "series,length,count,probability\n";
        auto plot = open_output(out_dir / "fig3.plot.tsv", out);
        plot << header.str() << "# one block per series (with_baths, without_baths): length probability\n";
        for (size_t k = 0; k < series.size(); k++) {
            double total = 0;
            for (double c : hists[k]) {
                total += c;
            }
            plot << "# " << series[k].label << "\n";
            for (size_t len = 1; len < hists[k].size(); len++) {
                double prob = total > 0 ? hists[k][len] / total : 0.0;
                csv << series[k].label << ',' << len << ',' << fmt9(hists[k][len]) << ',' << fmt9(prob) << '\n';
                if (hists[k][len] > 0) {
                    plot << len << '\t' << fmt9(prob) << '\n';
                }
            }
            plot << "\n\n";
        }
        out.summary.push_back("fig3: L=" + std::to_string(l) + " histograms written");
        return out;
    }

    if (name == "supp_collapse") {
        spec.num_qubits = full ? step_sizes(40, 280, 40) : step_sizes(40, 120, 40);
        spec.p_values = p_grid(0.1, 11, 0.0145);
        spec.base.samples = full ? 200 : 40;
        auto rows = run_sweep(spec, threads, progress);
        std::string header = run_header(name, scale, seed, spec);
        auto sweep_csv = open_output(out_dir / "supp_collapse_sweep.csv", out);
        sweep_csv << header;
        write_sweep_csv(sweep_csv, rows);
        auto fit_csv = open_output(out_dir / "supp_collapse_fit.csv", out);
        fit_csv << header << "observable,p_c,nu,objective\n";
        auto csv = open_output(out_dir / "supp_collapse.csv", out);
        csv << header << "observable,L,x,y,err\n";
        auto plot = open_output(out_dir / "supp_collapse.plot.tsv", out);
        plot << header << "# one block per (observable, L): x y err\n";
        for (auto o : {SweepObservable::kMutualInformation, SweepObservable::kNegativity}) {
            const char *label = o == SweepObservable::kNegativity ? "E" : "I";
            auto curves = curves_from_sweep(rows, o);
            auto fit = optimize_collapse(curves);
            fit_csv << label << ',' << fmt9(fit.p_c) << ',' << fmt9(fit.nu) << ',' << fmt9(fit.objective) << '\n';
            std::ostringstream collapsed;
            write_collapse_csv(collapsed, curves, fit);
            std::istringstream lines(collapsed.str());
            std::string line;
            size_t current_l = 0;
            while (std::getline(lines, line)) {
                if (line.empty() || line[0] == '#' || line[0] == 'L') {
                    continue;
                }
                csv << label << ',' << line << '\n';
                auto f = split(line, ',');
                size_t l = std::stoull(f[0]);
                if (l != current_l) {
                    plot << (current_l ? "\n\n" : "") << "# " << label << " L=" << l << "\n";
                    current_l = l;
                }
                plot << f[1] << '\t' << f[2] << '\t' << f[3] << '\n';
            }
            plot << "\n\n";
            out.summary.push_back(std::string("supp_collapse ") + label + ": p_c=" + fmt9(fit.p_c) +
                                  " nu=" + fmt9(fit.nu) + " objective=" + fmt9(fit.objective));
        }
        return out;
    }

    throw std::invalid_argument("unknown figure '" + std::string(name) +
                                "' (expected fig1b, fig1b_inset, fig3, supp_mi or supp_collapse)");
}

}  // namespace mixstab
