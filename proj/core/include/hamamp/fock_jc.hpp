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
#include <optional>
#include <vector>

#include "hamamp/symplectic.hpp"

namespace hamamp {

/// Two qubits and one resonator truncated to `cutoff` Fock levels, in the
/// tensor order qubit1 (x) qubit2 (x) oscillator. Qubit basis: index 0 is
/// spin up (sigma_z = +1), index 1 is spin down.
class FockSystem {
   public:
    explicit FockSystem(std::size_t cutoff);

    std::size_t cutoff() const { return cutoff_; }
    std::size_t dim() const { return 4 * cutoff_; }

    /// Oscillator operators (cutoff x cutoff).
    const CMatrix& annihilation() const { return a_; }
    CMatrix creation() const { return a_.adjoint(); }
    CMatrix position() const;
    CMatrix momentum() const;

    /// Qubit operators on the composite space; qubit is 0 or 1.
    CMatrix sigma_z(int qubit) const;
    CMatrix sigma_plus(int qubit) const;
    CMatrix sigma_minus(int qubit) const;

    /// I (x) I (x) op.
    CMatrix on_oscillator(const CMatrix& op) const;

    /// a^dagger a + sum_j sigma_+^(j) sigma_-^(j).
    CMatrix excitation_number() const;

    std::size_t index(bool qubit1_up, bool qubit2_up, std::size_t photons) const;

    /// Rows/columns with fewer than max(2, cutoff/8) photons. Squeezed Fock
    /// states spread far above their photon number, so only this low block is
    /// reproduced faithfully by truncated squeezing operators.
    std::vector<std::size_t> interior_indices() const;

   private:
    std::size_t cutoff_;
    CMatrix a_;
};

/// Angular frequencies (rad per time unit). Both qubits share omega_q and g.
struct JcParameters {
    double omega_r = 0.0;
    double omega_q = 0.0;
    double g = 0.0;
    double r = 0.0;

    double detuning() const;

    /// False when |omega_q - cosh(2r) omega_r| <= 10 cosh(r) g, where
    /// adiabatic elimination of the resonator no longer holds.
    bool is_dispersive() const;
};

/// H0 = omega_r a^dagger a + sum_j omega_q/2 sigma_z^(j) + g sum_j (sigma_+^(j) a + sigma_-^(j) a^dagger).
CMatrix build_jc_hamiltonian(const FockSystem& sys, const JcParameters& p);

inline constexpr double kSqueezeTruncationTolerance = 1e-4;

/// S(+) = exp(i r/2 (xp + px)) for sign = +1, S(-) for sign = -1, on the
/// oscillator alone. Throws TruncationError when S^dagger a S departs from
/// a cosh r -+ a^dagger sinh r by more than 1e-4 on the interior block.
CMatrix fock_squeeze(const FockSystem& sys, double r, int sign);

/// Largest interior-block deviation of S^dagger a S from its Bogoliubov form.
double squeeze_truncation_error(const FockSystem& sys, double r, int sign);

struct AmplifiedCoupling {
    double omega_amp = 0.0;  ///< cosh^2(r) g^2 / |omega_q - cosh(2r) omega_r|
    double t_swap = 0.0;     ///< pi / (2 omega_amp)
};

/// Throws ResonanceError at cosh(2r) = omega_q / omega_r.
AmplifiedCoupling amplified_frequency(const JcParameters& p);

/// Squeezing parameter of the resonance crossing, or nullopt when
/// omega_q < omega_r (no crossing for r >= 0).
std::optional<double> resonance_crossing(const JcParameters& p);

struct SwapTrace {
    std::vector<double> times;
    std::vector<double> p_swap;
    std::optional<double> first_peak_time;
    double first_peak_value = 0.0;
    double max_norm_drift = 0.0;
    std::size_t cutoff = 0;
};

inline constexpr double kNormDriftLimit = 1e-6;

/// Bang-bang evolution from |up, down> (x) |0>, one cycle being
/// S(-)^dagger e^{-i H0 dt} S(-) S(+)^dagger e^{-i H0 dt} S(+), each factor
/// built as exp(-i dt S^dagger H0 S) from the Bogoliubov-transformed
/// Hamiltonian so that truncation keeps the steps unitary. P_swap is the
/// |down, up> population with the oscillator traced out. `samples` points on
/// [0, t_final] are recorded; the first peak is tracked at every cycle.
SwapTrace swap_probability_evolution(const FockSystem& sys, const JcParameters& p, double t_final, double dt,
                                     std::size_t samples);

/// The same observable under plain exp(-i H0 t) (no squeezing).
SwapTrace direct_swap_evolution(const FockSystem& sys, const JcParameters& p, double t_final, double dt,
                                std::size_t samples);

inline constexpr double kTruncationAgreement = 1e-3;

/// Runs swap_probability_evolution at cutoff d and 2d, doubling d until the
/// two curves agree pointwise within 1e-3; returns the trace at the accepted
/// d. Throws TruncationError past max_cutoff.
SwapTrace converged_swap_trace(const JcParameters& p, double t_final, double dt, std::size_t samples,
                               std::size_t cutoff = 40, std::size_t max_cutoff = 160);

/// Relative interior-block distance between 1/2 (S+^dagger H0 S+ + S-^dagger H0 S-)
/// and H_q + cosh(2r) H_r + cosh(r) H_int, up to an energy offset.
double amplified_jc_map_check(const FockSystem& sys, const JcParameters& p);

}  // namespace hamamp
