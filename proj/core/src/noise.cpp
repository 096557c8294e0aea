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

#include "hamamp/noise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <thread>

#include <boost/random/normal_distribution.hpp>

#include "hamamp/averaging.hpp"
#include "hamamp/errors.hpp"

namespace hamamp {

namespace {

using Engine = std::mt19937_64;

// Runs body(i) for i in [0, count), spread over up to `workers` threads.
// Results are written by index, so the output order never depends on timing.
void for_each_trajectory(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::vector<SymplecticMatrix> collect(std::vector<std::optional<SymplecticMatrix>>&& slots) {
    std::vector<SymplecticMatrix> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace

std::string_view to_string(NoiseKind kind) {
    return kind == NoiseKind::angle_gaussian ? "angle_gaussian" : "amplitude_gaussian";
}

void NoiseSpec::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("NoiseSpec: sigma must be >= 0");
    if (trajectories < 1) throw InvalidArgument("NoiseSpec: need at least one trajectory");
}

std::uint64_t trajectory_seed(std::uint64_t seed, std::size_t index) {
    // splitmix64 finalizer over the (seed, index) pair.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<SymplecticMatrix> noisy_bangbang_run(const QuadraticHamiltonian& h, double r, double t, std::size_t n,
                                                 const NoiseSpec& spec, std::size_t workers) {
    spec.validate();
    if (spec.kind != NoiseKind::angle_gaussian) {
        throw InvalidArgument("noisy_bangbang_run: needs angle_gaussian noise");
    }
    if (n == 0) throw InvalidArgument("noisy_bangbang_run: n must be at least 1");
    if (!(t >= 0.0)) throw InvalidArgument("noisy_bangbang_run: t must be non-negative");

    const std::size_t modes = h.n_modes();
    const ModeMask mask = all_modes(modes);
    const SymplecticMatrix free = sympl_exp(build_generator(h), t / (2.0 * static_cast<double>(n)));
    const double nominal[2] = {0.0, std::numbers::pi};

    std::vector<std::optional<SymplecticMatrix>> out(spec.trajectories);
    for_each_trajectory(spec.trajectories, workers, [&](std::size_t i) {
        Engine engine(trajectory_seed(spec.seed, i));
        boost::random::normal_distribution<double> normal(0.0, spec.sigma);
        SymplecticMatrix total = SymplecticMatrix::identity(modes);
        for (std::size_t c = 0; c < n; ++c) {
            for (const double theta : nominal) {
                const double delta = spec.sigma > 0.0 ? normal(engine) : 0.0;
                const SymplecticMatrix f = build_squeeze(modes, mask, r, theta + delta).symplectic;
                total = f.inverse() * free * f * total;
            }
        }
        out[i] = std::move(total);
    });
    return collect(std::move(out));
}

Matrix angle_error_matrix(const QuadraticHamiltonian& h) {
    if (!h.is_xx_pp_form()) throw InvalidArgument("angle_error_matrix: Hamiltonian has x-p cross terms");
    const std::size_t n = h.n_modes();
    const Matrix& a = h.a_matrix();
    Matrix b = Matrix::Zero(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double c = a(2 * i, 2 * j) - a(2 * i + 1, 2 * j + 1);
            b(2 * i, 2 * j + 1) = c;
            b(2 * j + 1, 2 * i) = c;
        }
    }
    return b;
}

QuadraticHamiltonian first_order_error_term(const QuadraticHamiltonian& h, double r, double delta) {
    const double s = std::sinh(r);
    return QuadraticHamiltonian(std::cosh(2.0 * r) * h.a_matrix() + delta * s * s * angle_error_matrix(h));
}

QuadraticHamiltonian perturbed_average(const QuadraticHamiltonian& h, double r, double delta) {
    const ModeMask mask = all_modes(h.n_modes());
    const std::vector<GaussianOperation> ops{build_squeeze(h.n_modes(), mask, r, delta),
                                             build_squeeze(h.n_modes(), mask, r, std::numbers::pi + delta)};
    return average_map(h, ops);
}

std::vector<SymplecticMatrix> noisy_pulse_run(const QuadraticHamiltonian& h, const PulseShape& pulse,
                                              std::size_t n_cycles, std::size_t substeps, const NoiseSpec& spec,
                                              std::size_t workers) {
    spec.validate();
    if (spec.kind != NoiseKind::amplitude_gaussian) {
        throw InvalidArgument("noisy_pulse_run: needs amplitude_gaussian noise");
    }
    std::vector<std::optional<SymplecticMatrix>> out(spec.trajectories);
    for_each_trajectory(spec.trajectories, workers, [&](std::size_t i) {
        Engine engine(trajectory_seed(spec.seed, i));
        boost::random::normal_distribution<double> normal(0.0, spec.sigma);
        std::vector<double> amplitude(n_cycles * substeps, 1.0);
        if (spec.sigma > 0.0) {
            for (double& a : amplitude) a += normal(engine);
        }
        out[i] = propagate_pulse_modulated(h, pulse, n_cycles, substeps, amplitude);
    });
    return collect(std::move(out));
}

SampleStatistics summarize(std::span<const double> samples) {
    if (samples.empty()) throw InvalidArgument("summarize: no samples");
    SampleStatistics s;
    s.count = samples.size();
    s.min = *std::min_element(samples.begin(), samples.end());
    s.max = *std::max_element(samples.begin(), samples.end());
    double sum = 0.0;
    for (const double x : samples) sum += x;
    s.mean = sum / static_cast<double>(s.count);
    double var = 0.0;
    for (const double x : samples) var += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(var / static_cast<double>(s.count));
    return s;
}

EnsembleSummary ensemble_statistics(std::span<const SymplecticMatrix> stream, const SymplecticMatrix& target,
                                    const std::optional<GaussianState>& initial,
                                    const std::optional<GaussianState>& target_state) {
    if (stream.empty()) throw InvalidArgument("ensemble_statistics: empty trajectory stream");
    if (initial.has_value() != target_state.has_value()) {
        throw InvalidArgument("ensemble_statistics: initial and target states must be given together");
    }
    std::vector<double> eps;
    std::vector<double> eps_f;
    for (const auto& f : stream) {
        if (f.n_modes() != target.n_modes()) throw InvalidArgument("ensemble_statistics: dimension mismatch");
        eps.push_back(hs_norm(f.matrix() - target.matrix()));
        if (initial) eps_f.push_back(1.0 - gaussian_fidelity(evolve_gaussian(*initial, f), *target_state));
    }
    EnsembleSummary out;
    out.epsilon = summarize(eps);
    if (initial) out.fidelity_error = summarize(eps_f);
    return out;
}

}  // namespace hamamp
