// Copyright 2026 The hamamp Authors
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

#include "hamamp/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "hamamp/averaging.hpp"
#include "hamamp/errors.hpp"
#include "hamamp/fock_jc.hpp"
#include "hamamp/noise.hpp"
#include "hamamp/pulse.hpp"
#include "hamamp/symplectic.hpp"

namespace hamamp {

namespace {

double squeezing_of(const Scenario& s) {
    if (s.has("r")) return s.number("r");
    return 0.5 * std::acosh(s.number("lambda"));
}

std::size_t as_count(double v) { return static_cast<std::size_t>(std::llround(v)); }

// Cycles of a |V|-element set with control spacing dt over time t.
std::size_t cycles_for(double t, double dt, std::size_t set_size) {
    const auto n = std::llround(t / (static_cast<double>(set_size) * dt));
    return static_cast<std::size_t>(std::max<long long>(n, 1));
}

QuadraticHamiltonian chain_hamiltonian(std::size_t modes, double omega, double coupling) {
    Matrix a = omega * Matrix::Identity(static_cast<Eigen::Index>(2 * modes), static_cast<Eigen::Index>(2 * modes));
    for (std::size_t i = 0; i + 1 < modes; ++i) {
        const auto x = static_cast<Eigen::Index>(2 * i);
        a(x, x + 2) = coupling;
        a(x + 2, x) = coupling;
    }
    return QuadraticHamiltonian(a);
}

SymplecticMatrix exact_propagator(const Matrix& a, double t) {
    return sympl_exp(build_generator(QuadraticHamiltonian(a)), t);
}

PointTables amplify_map_point(const Scenario& s) {
    const auto modes = as_count(s.number_or("modes", 1));
    const double r = squeezing_of(s);
    const double lambda = std::cosh(2.0 * r);
    const auto h = chain_hamiltonian(modes, s.number("omega"), s.number_or("coupling", 0.0));
    const double t = s.number_or("t", 1.0);
    const auto n = as_count(s.number_or("n", 1000));

    std::vector<GaussianOperation> ops;
    Matrix target = h.a_matrix();
    if (s.word_or("set", "ha") == "ha_dd") {
        const Bipartition part(modes, {0});
        ops = build_ha_dd_set(part, r);
        for (Eigen::Index i = 0; i < target.rows(); ++i) {
            for (Eigen::Index j = 0; j < target.cols(); ++j) {
                const bool si = part.is_system(static_cast<std::size_t>(i / 2));
                const bool sj = part.is_system(static_cast<std::size_t>(j / 2));
                if (si && sj) target(i, j) *= lambda;
                if (si != sj) target(i, j) = 0.0;
            }
        }
    } else {
        ops = build_ha_set(modes, all_modes(modes), r);
        target *= lambda;
    }
    const Matrix averaged = average_map(h, ops).a_matrix();
    const double residual = hs_norm(averaged - target);
    const double epsilon = amplification_error(h, ops, t, n);
    return {{"", Table{{"lambda", "map_residual", "epsilon"}, {{lambda, residual, epsilon}}}}};
}

PointTables trotter_point(const Scenario& s, bool with_ratio) {
    const auto modes = as_count(s.number_or("modes", 1));
    const double r = squeezing_of(s);
    const double lambda = std::cosh(2.0 * r);
    const auto h = QuadraticHamiltonian::harmonic(modes, s.number("omega"));
    const double t = s.number_or("t", 1.0);
    const std::size_t n = cycles_for(t, s.number("dt"), 2);
    const SymplecticMatrix target = exact_propagator(lambda * h.a_matrix(), t);

    const std::string pulse = with_ratio ? "bangbang" : s.word_or("pulse", "both");
    Table table;
    std::vector<double> row;
    if (pulse != "smooth") {
        const auto ops = build_ha_set(modes, all_modes(modes), r);
        const double eps = hs_norm(trotter_sequence(h, ops, t, n).matrix() - target.matrix());
        const double bound = error_bound(h.max_abs_entry(), modes, t, t / static_cast<double>(n), r);
        table.columns = {"epsilon", "bound"};
        row = {eps, bound};
        if (with_ratio) {
            table.columns.insert(table.columns.begin(), "n");
            table.columns.insert(table.columns.end(), {"ratio", "holds"});
            row.insert(row.begin(), static_cast<double>(n));
            row.push_back(bound > 0.0 ? eps / bound : (eps == 0.0 ? 0.0 : INFINITY));
            row.push_back(eps <= bound ? 1.0 : 0.0);
        }
    }
    if (pulse != "bangbang") {
        const PulseShape shape = amplifying_pulse(lambda, t / static_cast<double>(n));
        const SmoothPropagation prop =
            propagate_smooth(h, shape, n, as_count(s.number_or("substeps", 256)));
        if (!prop.converged) {
            throw NumericalError("smooth propagation not converged: doubling substeps moved the result by " +
                                 format_csv_number(prop.refinement_change));
        }
        table.columns.push_back("epsilon_smooth");
        row.push_back(hs_norm(prop.propagator.matrix() - target.matrix()));
    }
    table.rows.push_back(std::move(row));
    return {{"", std::move(table)}};
}

std::vector<double> parse_coefficients(const Scenario& s) {
    std::vector<double> out;
    const std::string text = s.word_or("coefficients", "");
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(std::stod(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

PointTables pulse_design_point(const Scenario& s) {
    const PulseFamily family = parse_pulse_family(s.word_or("family", ""));
    std::vector<double> coeffs;
    if (s.has("k")) {
        coeffs = {s.number("k")};
    } else if (s.has("lambda")) {
        coeffs = {bessel_gain_parameter(s.number("lambda"))};
    } else {
        coeffs = parse_coefficients(s);
    }
    const double period = s.number_or("period", 1.0);
    const PulseShape pulse(family, coeffs, period, static_cast<int>(as_count(s.number_or("harmonic", 1))));
    const SecondOrderIntegrals ints = magnus_second_integrals(pulse);
    const MagnusScaleFactors scale = magnus_scale_factors(pulse);

    PointTables out;
    out[""] = Table{{"i1", "i2", "x_scale", "p_scale"}, {{ints.i1, ints.i2, scale.x_scale, scale.p_scale}}};
    Table wave{{"t", "u", "R", "rate"}, {}};
    const auto samples = as_count(s.number_or("samples", 101));
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = period * static_cast<double>(k) / static_cast<double>(samples - 1);
        wave.rows.push_back({t, pulse.u(t), pulse.integrated(t), pulse.rate(t)});
    }
    out["waveform"] = std::move(wave);
    return out;
}

PointTables noise_point(const Scenario& s, std::uint64_t seed) {
    const double r = squeezing_of(s);
    const double lambda = std::cosh(2.0 * r);
    const auto h = QuadraticHamiltonian::harmonic(1, s.number("omega"));
    const double t = s.number_or("t", 1.0);
    const std::size_t n = cycles_for(t, s.number("dt"), 2);
    const SymplecticMatrix target = exact_propagator(lambda * h.a_matrix(), t);
    const GaussianState initial = GaussianState::coherent(std::complex<double>(s.number_or("alpha", 1.0), 0.0));
    const GaussianState target_state = evolve_gaussian(initial, target);

    NoiseSpec spec;
    spec.sigma = s.number("sigma");
    spec.seed = seed;
    spec.trajectories = as_count(s.number_or("trajectories", 100));
    std::vector<SymplecticMatrix> stream;
    if (s.word_or("noise", "angle") == "angle") {
        spec.kind = NoiseKind::angle_gaussian;
        stream = noisy_bangbang_run(h, r, t, n, spec, 1);
    } else {
        spec.kind = NoiseKind::amplitude_gaussian;
        const PulseShape pulse = amplifying_pulse(lambda, t / static_cast<double>(n));
        stream = noisy_pulse_run(h, pulse, n, as_count(s.number_or("substeps", 64)), spec, 1);
    }
    const EnsembleSummary summary = ensemble_statistics(stream, target, initial, target_state);
    const SampleStatistics& f = *summary.fidelity_error;
    return {{"", Table{{"eps_mean", "eps_std", "epsF_mean", "epsF_std"},
                       {{summary.epsilon.mean, summary.epsilon.stddev, f.mean, f.stddev}}}}};
}

PointTables fidelity_point(const Scenario& s) {
    const double r = squeezing_of(s);
    const double lambda = std::cosh(2.0 * r);
    const auto h = QuadraticHamiltonian::harmonic(1, s.number("omega"));
    const double t = s.number_or("t", 1.0);
    const std::size_t n = cycles_for(t, s.number("dt"), 2);
    const SymplecticMatrix target = exact_propagator(lambda * h.a_matrix(), t);
    const SymplecticMatrix sequence = trotter_sequence(h, build_ha_set(1, all_modes(1), r), t, n);
    const GaussianState initial = GaussianState::coherent(std::complex<double>(s.number("alpha"), 0.0));
    const double fidelity = gaussian_fidelity(evolve_gaussian(initial, sequence), evolve_gaussian(initial, target));
    const double eps = hs_norm(sequence.matrix() - target.matrix());
    return {{"", Table{{"fidelity", "eps_f", "epsilon"}, {{fidelity, 1.0 - fidelity, eps}}}}};
}

PointTables jc_point(const Scenario& s) {
    JcParameters p;
    p.omega_r = s.number("omega_r");
    p.omega_q = s.number("omega_q");
    p.g = s.number("g");
    p.r = s.number("r");
    const AmplifiedCoupling coupling = amplified_frequency(p);
    const SwapTrace trace =
        converged_swap_trace(p, s.number("t_final"), s.number("dt"), as_count(s.number_or("samples", 200)),
                             as_count(s.number_or("cutoff", 40)), as_count(s.number_or("max_cutoff", 160)));
    PointTables out;
    Table main{{"t", "p_swap"}, {}};
    for (std::size_t k = 0; k < trace.times.size(); ++k) main.rows.push_back({trace.times[k], trace.p_swap[k]});
    out[""] = std::move(main);
    out["peaks"] = Table{{"first_peak_time", "first_peak_value", "t_swap", "omega_amp", "cutoff", "dispersive"},
                         {{trace.first_peak_time.value_or(NAN), trace.first_peak_value, coupling.t_swap,
                           coupling.omega_amp, static_cast<double>(trace.cutoff), p.is_dispersive() ? 1.0 : 0.0}}};
    return out;
}

std::string python_list(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t k = 0; k < items.size(); ++k) out += (k ? ", '" : "'") + items[k] + "'";
    return out + "]";
}

}  // namespace

PointTables run_point(const Scenario& point, std::uint64_t seed) {
    if (!point.sweeps.empty()) throw InvalidArgument("run_point: sweeps must be substituted first");
    switch (point.kind) {
        case ExperimentKind::amplify_map:
            return amplify_map_point(point);
        case ExperimentKind::trotter_sweep:
            return trotter_point(point, false);
        case ExperimentKind::bound_check:
            return trotter_point(point, true);
        case ExperimentKind::pulse_design:
            return pulse_design_point(point);
        case ExperimentKind::noise_ensemble:
            return noise_point(point, seed);
        case ExperimentKind::gaussian_fidelity_sweep:
            return fidelity_point(point);
        case ExperimentKind::jc_swap_sweep:
            return jc_point(point);
    }
    throw InvalidArgument("run_point: unknown experiment kind");
}

std::string format_csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw NumericalError("format_csv_number: conversion failed");
    return std::string(buf.data(), ptr);
}

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t k = 0; k < table.columns.size(); ++k) out += (k ? "," : "") + table.columns[k];
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + format_csv_number(row[k]);
        out += '\n';
    }
    return out;
}

std::string plot_script(const Scenario& s, const std::map<std::string, Table>& tables) {
    std::ostringstream py;
    const std::string stem = s.output;
    const Table& main = tables.at("");
    std::vector<std::string> sweep_keys;
    for (const SweepAxis& a : s.sweeps) sweep_keys.push_back(a.key);

    py << "#!/usr/bin/env python3\n"
       << "# Generated by hamamp for scenario kind " << to_string(s.kind) << ".\n"
       << "import csv\n"
       << "import os\n"
       << "import sys\n\n"
       << "import matplotlib\n"
       << "matplotlib.use('Agg')\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "HERE = os.path.dirname(os.path.abspath(__file__))\n\n\n"
       << "def load(name):\n"
       << "    with open(os.path.join(HERE, name), newline='') as fh:\n"
       << "        rows = list(csv.DictReader(fh))\n"
       << "    return {k: [float(r[k]) for r in rows] for k in rows[0]}\n\n\n"
       << "data = load('" << stem << ".csv')\n"
       << "sweeps = " << python_list(sweep_keys) << "\n"
       << "fig, ax = plt.subplots(figsize=(6, 4))\n";

    if (s.kind == ExperimentKind::jc_swap_sweep) {
        py << "peaks = load('" << stem << "_peaks.csv')\n"
           << "if 'r' in data and len(set(data['r'])) > 1:\n"
           << "    rs = sorted(set(data['r']))\n"
           << "    ts = sorted(set(data['t']))\n"
           << "    grid = {(r, t): p for r, t, p in zip(data['r'], data['t'], data['p_swap'])}\n"
           << "    z = [[grid.get((r, t), float('nan')) for t in ts] for r in rs]\n"
           << "    mesh = ax.pcolormesh([t * 1e-3 for t in ts], rs, z, shading='auto', vmin=0, vmax=1)\n"
           << "    fig.colorbar(mesh, ax=ax, label='P_swap')\n"
           << "    ax.plot([t * 1e-3 for t in peaks['t_swap']], peaks['r'], 'w--', label='t_swap(r)')\n"
           << "    ax.set_xlabel('t (us)')\n"
           << "    ax.set_ylabel('r')\n"
           << "    ax.legend()\n"
           << "else:\n"
           << "    ax.plot([t * 1e-3 for t in data['t']], data['p_swap'])\n"
           << "    ax.set_xlabel('t (us)')\n"
           << "    ax.set_ylabel('P_swap')\n";
    } else if (s.kind == ExperimentKind::pulse_design) {
        py << "wave = load('" << stem << "_waveform.csv')\n"
           << "for key in ('u', 'R', 'rate'):\n"
           << "    ax.plot(wave['t'], wave[key], label=key)\n"
           << "ax.set_xlabel('t')\n"
           << "ax.legend()\n";
    } else {
        std::vector<std::string> ys;
        for (const std::string& c : main.columns) {
            if (std::find(sweep_keys.begin(), sweep_keys.end(), c) == sweep_keys.end() && c != "holds" &&
                c != "n" && c != "lambda" && c != "fidelity") {
                ys.push_back(c);
            }
        }
        const bool log_axes = s.kind == ExperimentKind::trotter_sweep || s.kind == ExperimentKind::bound_check ||
                              s.kind == ExperimentKind::noise_ensemble ||
                              s.kind == ExperimentKind::gaussian_fidelity_sweep;
        py << "ys = " << python_list(ys) << "\n"
           << "x_key = sweeps[0] if sweeps else None\n"
           << "xs = data[x_key] if x_key else list(range(len(data[ys[0]])))\n"
           << "for key in ys:\n"
           << "    if key.endswith('_std'):\n"
           << "        continue\n"
           << "    err = data.get(key.replace('_mean', '_std')) if key.endswith('_mean') else None\n"
           << "    if err:\n"
           << "        ax.errorbar(xs, data[key], yerr=err, marker='o', ms=3, label=key)\n"
           << "    else:\n"
           << "        ax.plot(xs, data[key], marker='o', ms=3, label=key)\n";
        if (log_axes) py << "ax.set_xscale('log')\nax.set_yscale('log')\n";
        py << "ax.set_xlabel(x_key or 'point')\n"
           << "ax.legend()\n";
    }
    py << "fig.tight_layout()\n"
       << "out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(HERE, '" << stem << ".png')\n"
       << "fig.savefig(out, dpi=150)\n";
    return py.str();
}

RunArtifacts run_scenario(const Scenario& s, const RunOptions& options) {
    if (const auto issues = validate_scenario(s); !issues.empty()) {
        throw InvalidArgument("invalid scenario: " + issues.front().message);
    }
    const std::uint64_t seed = options.seed.value_or(s.seed);
    const auto grid = sweep_grid(s);

    std::vector<PointTables> results(grid.size());
    std::vector<std::exception_ptr> failures(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next.fetch_add(1); k < grid.size(); k = next.fetch_add(1)) {
            try {
                Scenario point = s;
                point.sweeps.clear();
                for (std::size_t a = 0; a < s.sweeps.size(); ++a) point.params[s.sweeps[a].key] = grid[k][a];
                results[k] = run_point(point, trajectory_seed(seed, k));
            } catch (...) {
                failures[k] = std::current_exception();
            }
        }
    };
    const std::size_t n_workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(grid.size(), 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
        worker();
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    std::map<std::string, Table> merged;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        for (auto& [suffix, table] : results[k]) {
            Table& dst = merged[suffix];
            if (dst.columns.empty()) {
                for (const SweepAxis& a : s.sweeps) dst.columns.push_back(a.key);
                dst.columns.insert(dst.columns.end(), table.columns.begin(), table.columns.end());
            }
            for (auto& row : table.rows) {
                std::vector<double> full(grid[k]);
                full.insert(full.end(), row.begin(), row.end());
                dst.rows.push_back(std::move(full));
            }
        }
    }

    std::filesystem::create_directories(options.out_dir);
    RunArtifacts artifacts;
    artifacts.points = grid.size();
    for (const auto& [suffix, table] : merged) {
        const auto path = options.out_dir / (s.output + (suffix.empty() ? "" : "_" + suffix) + ".csv");
        std::ofstream out(path, std::ios::binary);
        out << render_csv(table);
        if (!out) throw NumericalError("cannot write " + path.string());
        artifacts.csv_files.push_back(path);
    }
    artifacts.plot_script = options.out_dir / (s.output + "_plot.py");
    std::ofstream py(artifacts.plot_script, std::ios::binary);
    py << plot_script(s, merged);
    if (!py) throw NumericalError("cannot write " + artifacts.plot_script.string());
    return artifacts;
}

}  // namespace hamamp
