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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hamamp/pulse.hpp"
#include "hamamp/symplectic.hpp"

namespace hamamp {

enum class NoiseKind { angle_gaussian, amplitude_gaussian };

std::string_view to_string(NoiseKind kind);

/// sigma is a standard deviation: radians for angle noise, relative for
/// amplitude noise.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::angle_gaussian;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::size_t trajectories = 1;

    void validate() const;
};

/// Independent, reproducible seed for trajectory `index` of a run.
std::uint64_t trajectory_seed(std::uint64_t seed, std::size_t index);

/// Bang-bang HA with squeezing-angle noise: every squeeze slot of every
/// cycle uses S(theta0 + delta) with a fresh delta ~ N(0, sigma^2), the same
/// delta for v and v^dagger of that slot. One propagator per trajectory.
std::vector<SymplecticMatrix> noisy_bangbang_run(const QuadraticHamiltonian& h, double r, double t, std::size_t n,
                                                 const NoiseSpec& spec, std::size_t workers = 1);

/// Predicted noisy average cosh(2r) H0 + delta sinh^2(r) H_er.
QuadraticHamiltonian first_order_error_term(const QuadraticHamiltonian& h, double r, double delta);

/// H_er = sum_ij (wx_ij - wp_ij)(x_i p_j + p_i x_j) as a 2N x 2N matrix.
Matrix angle_error_matrix(const QuadraticHamiltonian& h);

/// Exact average over {S(delta), S(pi + delta)} on all modes.
QuadraticHamiltonian perturbed_average(const QuadraticHamiltonian& h, double r, double delta);

/// Smooth amplification with amplitude noise: at every substep the integrated
/// pulse is multiplied by (1 + xi), xi ~ N(0, sigma^2).
std::vector<SymplecticMatrix> noisy_pulse_run(const QuadraticHamiltonian& h, const PulseShape& pulse,
                                              std::size_t n_cycles, std::size_t substeps, const NoiseSpec& spec,
                                              std::size_t workers = 1);

struct SampleStatistics {
    double mean = 0.0;
    double stddev = 0.0;  ///< population standard deviation
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

SampleStatistics summarize(std::span<const double> samples);

struct EnsembleSummary {
    SampleStatistics epsilon;                   ///< HS distance to the target propagator
    std::optional<SampleStatistics> fidelity_error;  ///< 1 - F(evolved, target_state)
};

EnsembleSummary ensemble_statistics(std::span<const SymplecticMatrix> stream, const SymplecticMatrix& target,
                                    const std::optional<GaussianState>& initial = std::nullopt,
                                    const std::optional<GaussianState>& target_state = std::nullopt);

}  // namespace hamamp
