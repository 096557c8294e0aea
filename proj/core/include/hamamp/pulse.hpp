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
#include <span>
#include <string_view>
#include <vector>

#include "hamamp/symplectic.hpp"

namespace hamamp {

/// Modified Bessel function I0 by its power series
/// sum_k (K/2)^(2k) / (k!)^2, truncated once a term drops below 1e-16 of the
/// partial sum.
double bessel_i0(double k);

/// The K >= 0 with I0(K) = lambda, by bisection on [0, 20] to 1e-12.
double bessel_gain_parameter(double lambda);

/// Periodic squeezing waveforms. With T the period and u(t) = 2 R(t):
///   cosine_first_order  u = K sin(2 pi t / T)            (first order only)
///   exsol1              u = sum_n a_n cos(2 pi (2n+1) t / T)
///   exsol3              u = sin^2(2 pi t / T) sum_n a_n cos(2 pi (2n+1) t / T)
///   exsol4              u = sin(4 pi t / T) sum_n a_n sin(2 pi (2n+1) t / T)
///   exsol2_n            u = a cos(4 pi n t / T), n >= 1
/// The exsol families also cancel the second-order Magnus term.
enum class PulseFamily { cosine_first_order, exsol1, exsol3, exsol4, exsol2_n };

std::string_view to_string(PulseFamily family);
PulseFamily parse_pulse_family(std::string_view name);

class PulseShape {
   public:
    PulseShape(PulseFamily family, std::vector<double> coefficients, double period, int harmonic = 1);

    PulseFamily family() const { return family_; }
    const std::vector<double>& coefficients() const { return coefficients_; }
    double period() const { return period_; }
    int harmonic() const { return harmonic_; }

    /// u(t) = 2 R(t).
    double u(double t) const;
    /// Integrated squeezing R(t).
    double integrated(double t) const;
    /// Squeezing rate r(t) = dR/dt, differentiated analytically.
    double rate(double t) const;

    bool is_zero() const;

   private:
    double du(double t) const;

    PulseFamily family_;
    std::vector<double> coefficients_;
    double period_;
    int harmonic_;
};

PulseShape build_pulse_family(PulseFamily family, std::vector<double> coefficients, double period,
                              int harmonic = 1);

/// The exsol2_n pulse with n = 1, R(t) = (K/2) cos(4 pi t / T), whose
/// first-order Magnus term is amplified by I0(K) = lambda.
PulseShape amplifying_pulse(double lambda, double period);

struct MagnusScaleFactors {
    double x_scale = 1.0;  ///< (1/T) int e^{-2R}
    double p_scale = 1.0;  ///< (1/T) int e^{+2R}
};

MagnusScaleFactors magnus_scale_factors(const PulseShape& pulse);

/// First-order (time-averaged) Hamiltonian in the controller frame. Only
/// defined for Hamiltonians without x-p cross terms.
QuadraticHamiltonian magnus_first_order(const QuadraticHamiltonian& h, const PulseShape& pulse);

struct SecondOrderIntegrals {
    double i1 = 0.0;  ///< int_0^T sinh(u(t)) dt
    double i2 = 0.0;  ///< int_0^T dt1 int_0^t1 dt2 sinh(u(t1) - u(t2))
};

SecondOrderIntegrals magnus_second_integrals(const PulseShape& pulse);

/// A in the frame of the controller with integrated squeezing R on every
/// mode: x-rows/cols scaled by e^-R, p-rows/cols by e^+R.
Matrix controller_frame(const Matrix& a, double integrated_squeezing);

struct SmoothPropagation {
    SymplecticMatrix propagator;
    bool converged = true;
    double refinement_change = 0.0;  ///< HS change when substeps are doubled
};

inline constexpr std::size_t kMinSubsteps = 16;
inline constexpr double kSubstepConvergence = 1e-6;

/// Controller-frame propagation over n_cycles periods with piecewise-constant
/// midpoint exponentials. `converged` is false when doubling the substeps
/// moves the result by more than 1e-6.
SmoothPropagation propagate_smooth(const QuadraticHamiltonian& h, const PulseShape& pulse, std::size_t n_cycles,
                                   std::size_t substeps_per_cycle);

/// Same integrator, with R at substep k multiplied by amplitude[k]
/// (size n_cycles * substeps_per_cycle). No refinement check.
SymplecticMatrix propagate_pulse_modulated(const QuadraticHamiltonian& h, const PulseShape& pulse,
                                           std::size_t n_cycles, std::size_t substeps_per_cycle,
                                           std::span<const double> amplitude);

}  // namespace hamamp
