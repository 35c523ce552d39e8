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


#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mixstab/analysis.h"
#include "mixstab/circuit.h"
#include "mixstab/entanglement.h"
#include "mixstab/oracle_check.h"
#include "mixstab/permutation.h"
#include "mixstab/polymer.h"

using namespace mixstab;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCheckFailed = 3;

/// Input that fails validation; reported with exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Common flags. Optional values override the JSON config.
struct CommonOptions {
    std::string config_path;
    std::optional<uint64_t> seed;
    size_t threads = 1;
    std::string out;
};

void add_common(CLI::App *app, CommonOptions &opt, bool with_config = true) {
    if (with_config) {
        app->add_option("--config", opt.config_path, "JSON circuit config (keys L, p, T, seed, schedule, samples, "
                                                      "observables_every)");
    }
    app->add_option("--seed", opt.seed, "Master seed");
    app->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
    app->add_option("--out", opt.out, "Output path (default stdout)");
}

std::string read_text(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw ValidationError("cannot read " + path);
    }
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

/// Writes to --out if given, else stdout.
class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw ValidationError("cannot write " + path);
            }
        }
    }
    std::ostream &stream() {
        return file_ ? *file_ : std::cout;
    }

   private:
    std::unique_ptr<std::ofstream> file_;
};

struct CircuitOverrides {
    std::optional<size_t> num_qubits;
    std::optional<double> p;
    std::optional<size_t> depth;
    std::optional<size_t> samples;
    std::optional<std::string> schedule;
    std::optional<size_t> observables_every;
};

void add_circuit_overrides(CLI::App *app, CircuitOverrides &o, bool with_l_and_p) {
    if (with_l_and_p) {
        app->add_option("--L", o.num_qubits, "Number of qubits");
        app->add_option("--p", o.p, "Measurement probability");
    }
    app->add_option("--T", o.depth, "Number of layers (0 = 4L)");
    app->add_option("--samples", o.samples, "Trajectories");
    app->add_option("--schedule", o.schedule, "boundary_even_steps, boundary_every_step or random_sites:m");
    app->add_option("--observables-every", o.observables_every, "Record stride in layers");
}

CircuitConfig build_config(const CommonOptions &common, const CircuitOverrides &o) {
    CircuitConfig cfg;
    if (!common.config_path.empty()) {
        try {
            cfg = config_from_json(read_text(common.config_path));
        } catch (const ValidationError &) {
            throw;
        } catch (const std::exception &e) {
            throw ValidationError("bad config " + common.config_path + ": " + e.what());
        }
    }
    if (common.seed) {
        cfg.seed = *common.seed;
    }
    if (o.num_qubits) {
        cfg.num_qubits = *o.num_qubits;
    }
    if (o.p) {
        cfg.p = *o.p;
    }
    if (o.depth) {
        cfg.depth = *o.depth;
    }
    if (o.samples) {
        cfg.samples = *o.samples;
    }
    if (o.schedule) {
        try {
            cfg.schedule = DephasingSchedule::parse(*o.schedule);
        } catch (const std::invalid_argument &e) {
            throw ValidationError(e.what());
        }
    }
    if (o.observables_every) {
        cfg.observables_every = *o.observables_every;
    }
    if (auto err = config_error(cfg)) {
        throw ValidationError("invalid config: " + *err);
    }
    return cfg;
}

std::vector<SweepRow> read_sweep_file(const std::string &path) {
    std::istringstream in(read_text(path));
    try {
        return read_sweep_csv(in);
    } catch (const std::exception &e) {
        throw ValidationError(path + ": " + e.what());
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"mixstab: mixed-state stabilizer simulation of open monitored circuits"};
    app.require_subcommand(1);
    std::function<int()> action;

    // run
    CommonOptions run_opt;
    CircuitOverrides run_over;
    std::string run_records;
    auto *run = app.add_subcommand("run", "Monte Carlo time series for one config");
    add_common(run, run_opt);
    add_circuit_overrides(run, run_over, true);
    run->add_option("--records", run_records, "Also write every per-trajectory record to this CSV");
    run->callback([&] {
        action = [&] {
            auto cfg = build_config(run_opt, run_over);
            auto result = monte_carlo(cfg, run_opt.threads);
            Output out(run_opt.out);
            write_time_series_csv(out.stream(), result);
            if (!run_records.empty()) {
                Output rec(run_records);
                rec.stream() << std::setprecision(9);
                write_observable_csv_header(rec.stream());
                for (const auto &traj : result.trajectories) {
                    for (const auto &r : traj) {
                        write_observable_csv_row(rec.stream(), r);
                    }
                }
            }
            for (auto o : {Observable::kE, Observable::kI}) {
                auto late = result.late_time(o);
                std::cerr << observable_name(o) << " late-time " << fmt9(late.mean) << " +- " << fmt9(late.sem)
                          << "\n";
            }
            return 0;
        };
    });

    // sweep
    CommonOptions sweep_opt;
    CircuitOverrides sweep_over;
    std::vector<size_t> sweep_l;
    std::vector<double> sweep_p;
    auto *sweep = app.add_subcommand("sweep", "Late-time E and I over a grid of (L, p)");
    add_common(sweep, sweep_opt);
    add_circuit_overrides(sweep, sweep_over, false);
    sweep->add_option("--L", sweep_l, "System sizes")->required()->delimiter(',');
    sweep->add_option("--p", sweep_p, "Measurement probabilities")->required()->delimiter(',');
    sweep->callback([&] {
        action = [&] {
            SweepSpec spec;
            spec.num_qubits = sweep_l;
            spec.p_values = sweep_p;
            CircuitOverrides base_over = sweep_over;
            CommonOptions base_opt = sweep_opt;
            spec.base = build_config(base_opt, base_over);
            if (auto err = sweep_spec_error(spec); !err.empty()) {
                throw ValidationError(err);
            }
            auto rows = run_sweep(spec, sweep_opt.threads, &std::cerr);
            Output out(sweep_opt.out);
            write_sweep_csv(out.stream(), rows,
                            "mixstab sweep base_config=" + config_to_json(spec.base) +
                                " config_hash=" + hex64(config_hash(spec.base)));
            return 0;
        };
    });

    // fit
    CommonOptions fit_opt;
    std::string fit_in, fit_observable = "E";
    double fit_p = 0.1;
    size_t fit_min_l = 40;
    bool fit_allow_nonstationary = false;
    auto *fit = app.add_subcommand("fit", "Fit late-time values at one p to c1 L^(1/3) + c2 and rival models");
    add_common(fit, fit_opt, false);
    fit->add_option("--in", fit_in, "Sweep CSV")->required();
    fit->add_option("--observable", fit_observable, "E or I");
    fit->add_option("--p", fit_p, "Measurement probability to fit");
    fit->add_option("--min-L", fit_min_l, "Smallest system size used");
    fit->add_flag("--allow-nonstationary", fit_allow_nonstationary, "Keep points that fail the stationarity gate");
    fit->callback([&] {
        action = [&] {
            auto rows = read_sweep_file(fit_in);
            auto o = parse_sweep_observable(fit_observable);
            auto pts = fit_points_at(rows, o, fit_p, fit_min_l, !fit_allow_nonstationary);
            if (pts.size() < 3) {
                throw ValidationError("only " + std::to_string(pts.size()) + " usable points at p=" + fmt9(fit_p));
            }
            auto cmp = compare_growth_models(pts);
            Output out(fit_opt.out);
            out.stream() << "observable,p,model,c1,c2,r_squared,ss_res,points\n";
            auto row = [&](const char *model, const TwoParameterFit &f) {
                out.stream() << fit_observable << ',' << fmt9(fit_p) << ',' << model << ',' << fmt9(f.c1) << ','
                             << fmt9(f.c2) << ',' << fmt9(f.r_squared) << ',' << fmt9(f.ss_res) << ','
                             << pts.size() << '\n';
            };
            row("cube_root", cmp.cube_root);
            row("linear", cmp.linear);
            row("log", cmp.log);
            std::cerr << "cube-root model preferred: " << (cmp.cube_root_preferred ? "yes" : "no") << "\n";
            return 0;
        };
    });

    // collapse
    CommonOptions col_opt;
    std::string col_in, col_observable = "I", col_trace;
    auto *collapse = app.add_subcommand("collapse", "Finite-size scaling collapse of a p sweep");
    add_common(collapse, col_opt, false);
    collapse->add_option("--in", col_in, "Sweep CSV")->required();
    collapse->add_option("--observable", col_observable, "E or I");
    collapse->add_option("--trace", col_trace, "Write the search trace (p_c, nu, objective) to this CSV");
    collapse->callback([&] {
        action = [&] {
            auto rows = read_sweep_file(col_in);
            auto curves = curves_from_sweep(rows, parse_sweep_observable(col_observable));
            CollapseFit result;
            try {
                result = optimize_collapse(curves);
            } catch (const std::invalid_argument &e) {
                throw ValidationError(e.what());
            }
            Output out(col_opt.out);
            write_collapse_csv(out.stream(), curves, result);
            if (!col_trace.empty()) {
                Output trace(col_trace);
                trace.stream() << "p_c,nu,objective\n";
                for (const auto &t : result.trace) {
                    trace.stream() << fmt9(t[0]) << ',' << fmt9(t[1]) << ',' << fmt9(t[2]) << '\n';
                }
            }
            std::cerr << "p_c=" << fmt9(result.p_c) << " nu=" << fmt9(result.nu)
                      << " objective=" << fmt9(result.objective) << "\n";
            return 0;
        };
    });

    // polymer
    CommonOptions poly_opt;
    std::vector<size_t> poly_widths{64, 128, 256, 512, 1024, 2048, 4096};
    double poly_p = 0.1;
    size_t poly_samples = 200;
    auto *polymer = app.add_subcommand("polymer", "Directed-polymer energy scan over lattice widths");
    add_common(polymer, poly_opt, false);
    polymer->add_option("--widths", poly_widths, "Lattice widths (multiples of 4)")->delimiter(',');
    polymer->add_option("--p", poly_p, "Measured-bond density");
    polymer->add_option("--samples", poly_samples, "Disorder samples per width");
    polymer->callback([&] {
        action = [&] {
            KpzScan scan;
            try {
                scan = kpz_scan(poly_widths, poly_p, poly_samples, poly_opt.seed.value_or(1), poly_opt.threads);
            } catch (const std::invalid_argument &e) {
                throw ValidationError(e.what());
            }
            Output out(poly_opt.out);
            auto &s = out.stream();
            if (scan.degenerate) {
                s << "# degenerate p=" << fmt9(poly_p) << ": every sample has the same energy, no fit\n";
            } else if (scan.rows.size() >= 3) {
                s << "# fit mean_E = s0 L + s1 L^(1/3): s0=" << fmt9(scan.s0) << " s1=" << fmt9(scan.s1)
                  << " r2=" << fmt9(scan.mean_r_squared) << " linear_r2=" << fmt9(scan.linear_r_squared) << "\n";
                s << "# fit var_E ~ L^(2 beta): two_beta=" << fmt9(scan.two_beta) << " r2=" << fmt9(scan.var_r_squared)
                  << "\n";
            }
            s << "L,samples,mean_E,stderr,var_E,min_negativity\n";
            for (const auto &r : scan.rows) {
                s << r.width << ',' << r.samples << ',' << fmt9(r.mean_energy) << ',' << fmt9(r.mean_stderr) << ','
                  << fmt9(r.var_energy) << ',' << fmt9(r.min_negativity) << '\n';
            }
            return 0;
        };
    });

    // permcheck
    size_t perm_n = 4, perm_k = 1;
    auto *permcheck = app.add_subcommand("permcheck", "Boundary permutations, the intermediate D and their distances");
    permcheck->add_option("--n", perm_n, "Replica number (even)");
    permcheck->add_option("--k", perm_k, "Copies");
    permcheck->callback([&] {
        action = [&] {
            if (perm_n < 2 || perm_n % 2 != 0 || perm_k < 1 || perm_n * perm_k + 1 > 9) {
                throw ValidationError("permcheck needs even n >= 2, k >= 1 and nk + 1 <= 9");
            }
            auto rp = replica_permutations(perm_n, perm_k);
            auto d = find_intermediate_d(perm_n, perm_k);
            std::cout << "r=" << rp.c.size() << "\nC=" << rp.c.str() << "\nCbar=" << rp.c_bar.str() << "\n";
            if (!d) {
                std::cout << "D=none\n";
                return kExitCheckFailed;
            }
            std::cout << "D=" << d->str() << "\n\n";
            std::vector<std::pair<std::string, Permutation>> named{
                {"I", rp.id}, {"C", rp.c}, {"Cbar", rp.c_bar}, {"D", *d}};
            std::cout << "distance";
            for (const auto &[name, p] : named) {
                std::cout << '\t' << name;
            }
            std::cout << '\n';
            for (const auto &[name, a] : named) {
                std::cout << name;
                for (const auto &b : named) {
                    std::cout << '\t' << cayley_distance(a, b.second);
                }
                std::cout << '\n';
            }
            size_t n = perm_n, k = perm_k;
            bool ok = cayley_norm(rp.c) == k * (n - 1) && cayley_distance(rp.c, rp.c_bar) == k * (n - 2) &&
                      cayley_distance(rp.c, *d) == k * (n / 2 - 1) &&
                      cayley_distance(rp.c_bar, *d) == k * (n / 2 - 1) && cayley_norm(*d) == k * n / 2;
            std::cout << "\nidentities " << (ok ? "hold" : "FAIL") << "\n";
            return ok ? 0 : kExitCheckFailed;
        };
    });

    // oracle-check
    CommonOptions oracle_opt;
    size_t oracle_circuits = 500, oracle_l = 4, oracle_depth = 8;
    auto *oracle = app.add_subcommand("oracle-check", "Compare the stabilizer simulator with dense density matrices");
    add_common(oracle, oracle_opt, false);
    oracle->add_option("--circuits", oracle_circuits, "Random circuits");
    oracle->add_option("--L", oracle_l, "Qubits (2..8)");
    oracle->add_option("--depth", oracle_depth, "Layers per circuit");
    oracle->callback([&] {
        action = [&] {
            if (oracle_l < 2 || oracle_l > 8) {
                throw ValidationError("oracle-check needs 2 <= L <= 8");
            }
            auto report = oracle_check(oracle_circuits, oracle_l, oracle_depth, oracle_opt.seed.value_or(1));
            Output out(oracle_opt.out);
            out.stream() << "circuits,comparisons,max_error,passed\n"
                         << report.circuits << ',' << report.comparisons << ',' << fmt9(report.max_error) << ','
                         << report.passed << '\n';
            if (!report.passed) {
                std::cerr << "mismatch: " << report.first_failure << "\n";
                return kExitCheckFailed;
            }
            return 0;
        };
    });

    // reproduce
    CommonOptions rep_opt;
    std::string rep_name, rep_scale = "desk";
    auto *reproduce = app.add_subcommand("reproduce", "Regenerate figure data (fig1b, fig1b_inset, fig3, supp_mi, "
                                                      "supp_collapse)");
    add_common(reproduce, rep_opt, false);
    reproduce->add_option("name", rep_name, "Figure name")->required();
    reproduce->add_option("--scale", rep_scale, "desk or full");
    reproduce->callback([&] {
        action = [&] {
            FigureScale scale;
            try {
                scale = parse_figure_scale(rep_scale);
            } catch (const std::invalid_argument &e) {
                throw ValidationError(e.what());
            }
            std::string dir = rep_opt.out.empty() ? "." : rep_opt.out;
            ReproduceOutput result;
            try {
                result = reproduce_figure(rep_name, scale, dir, rep_opt.seed.value_or(1), rep_opt.threads, &std::cerr);
            } catch (const std::invalid_argument &e) {
                throw ValidationError(e.what());
            }
            for (const auto &f : result.files) {
                std::cout << "wrote " << f.string() << "\n";
            }
            for (const auto &line : result.summary) {
                std::cout << line << "\n";
            }
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }
    try {
        return action();
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
