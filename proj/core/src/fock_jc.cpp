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

#include "hamamp/fock_jc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "hamamp/errors.hpp"

namespace hamamp {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

std::size_t interior_size(std::size_t cutoff) { return std::max<std::size_t>(2, cutoff / 8); }

CMatrix qubit_op(int which) {
    CMatrix m = CMatrix::Zero(2, 2);
    switch (which) {
        case 0:  // sigma_z
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        case 1:  // sigma_+ = |up><down|
            m(0, 1) = 1.0;
            break;
        default:  // sigma_-
            m(1, 0) = 1.0;
            break;
    }
    return m;
}

CMatrix kron3(const CMatrix& q1, const CMatrix& q2, const CMatrix& osc) {
    return Eigen::kroneckerProduct(Eigen::kroneckerProduct(q1, q2).eval(), osc).eval();
}

CMatrix on_qubit(const FockSystem& sys, int qubit, const CMatrix& op) {
    const CMatrix id2 = CMatrix::Identity(2, 2);
    const CMatrix id_osc = CMatrix::Identity(static_cast<Eigen::Index>(sys.cutoff()),
                                             static_cast<Eigen::Index>(sys.cutoff()));
    if (qubit != 0 && qubit != 1) throw InvalidArgument("qubit index must be 0 or 1");
    return qubit == 0 ? kron3(op, id2, id_osc) : kron3(id2, op, id_osc);
}

// exp(sign r/2 (a^2 - a^dagger^2)) = exp(sign i r/2 (xp + px)); exact on the
// truncated basis because a^2 truncates without error.
CMatrix squeeze_unchecked(const FockSystem& sys, double r, int sign) {
    const CMatrix& a = sys.annihilation();
    const CMatrix gen = (0.5 * sign * r) * (a * a - a.adjoint() * a.adjoint());
    return gen.exp();
}

std::vector<Eigen::Index> odd_excitation_sector(const FockSystem& sys) {
    std::vector<Eigen::Index> idx;
    for (int q1 = 0; q1 < 2; ++q1) {
        for (int q2 = 0; q2 < 2; ++q2) {
            for (std::size_t n = 0; n < sys.cutoff(); ++n) {
                const std::size_t exc = n + (q1 == 0 ? 1 : 0) + (q2 == 0 ? 1 : 0);
                if (exc % 2 == 1) idx.push_back(static_cast<Eigen::Index>(sys.index(q1 == 0, q2 == 0, n)));
            }
        }
    }
    return idx;
}

// Steps a state restricted to the odd-excitation sector with a fixed cycle
// matrix, sampling P(down, up) on a grid of cycle counts.
SwapTrace run_cycles(const FockSystem& sys, const CMatrix& cycle, double cycle_time, double t_final,
                     std::size_t samples) {
    if (!(t_final > 0.0) || !(cycle_time > 0.0)) throw InvalidArgument("swap evolution: t_final and dt must be positive");
    if (samples < 2) throw InvalidArgument("swap evolution: need at least two samples");

    const std::vector<Eigen::Index> sector = odd_excitation_sector(sys);
    const CMatrix step = cycle(sector, sector);
    const auto n_sector = static_cast<Eigen::Index>(sector.size());

    std::vector<Eigen::Index> target_positions;
    Eigen::Index start = -1;
    const auto start_full = static_cast<Eigen::Index>(sys.index(true, false, 0));
    for (Eigen::Index k = 0; k < n_sector; ++k) {
        const auto full = static_cast<std::size_t>(sector[static_cast<std::size_t>(k)]);
        // qubit1 down, qubit2 up occupies the third quarter of the basis.
        if (full / sys.cutoff() == 2) target_positions.push_back(k);
        if (sector[static_cast<std::size_t>(k)] == start_full) start = k;
    }

    CVector psi = CVector::Zero(n_sector);
    psi(start) = 1.0;
    CVector next(n_sector);

    const auto total_cycles = static_cast<std::size_t>(std::llround(t_final / cycle_time));
    if (total_cycles == 0) throw InvalidArgument("swap evolution: t_final shorter than one cycle");
    std::vector<std::size_t> sample_at(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        sample_at[k] = static_cast<std::size_t>(
            std::llround(static_cast<double>(k) * static_cast<double>(total_cycles) / static_cast<double>(samples - 1)));
    }

    auto population = [&](const CVector& v) {
        double s = 0.0;
        for (const Eigen::Index k : target_positions) s += std::norm(v(k));
        return s;
    };

    SwapTrace trace;
    trace.cutoff = sys.cutoff();
    trace.times.reserve(samples);
    trace.p_swap.reserve(samples);

    bool above = false;
    bool peak_done = false;
    double peak_value = 0.0;
    std::size_t peak_cycle = 0;
    std::size_t next_sample = 0;

    for (std::size_t c = 0; c <= total_cycles; ++c) {
        if (c > 0) {
            next.noalias() = step * psi;
            psi.swap(next);
        }
        const double p = population(psi);
        if (!peak_done) {
            if (p > 0.5) {
                above = true;
                if (p > peak_value) {
                    peak_value = p;
                    peak_cycle = c;
                }
            } else if (above) {
                peak_done = true;
            }
        }
        while (next_sample < samples && sample_at[next_sample] == c) {
            const double drift = std::abs(psi.squaredNorm() - 1.0);
            trace.max_norm_drift = std::max(trace.max_norm_drift, drift);
            if (drift > kNormDriftLimit) {
                throw NumericalError("swap evolution: norm drift " + std::to_string(drift) + " exceeds 1e-6");
            }
            trace.times.push_back(static_cast<double>(c) * cycle_time);
            trace.p_swap.push_back(p);
            ++next_sample;
        }
    }
    if (above) {
        trace.first_peak_time = static_cast<double>(peak_cycle) * cycle_time;
        trace.first_peak_value = peak_value;
    }
    return trace;
}

// H0 with the oscillator annihilation operator replaced by `a`.
CMatrix jc_hamiltonian_with(const FockSystem& sys, const JcParameters& p, const CMatrix& a) {
    CMatrix h = p.omega_r * sys.on_oscillator(a.adjoint() * a);
    const CMatrix big_a = sys.on_oscillator(a);
    const CMatrix big_ad = big_a.adjoint();
    for (int q = 0; q < 2; ++q) {
        h += 0.5 * p.omega_q * sys.sigma_z(q);
        h += p.g * (sys.sigma_plus(q) * big_a + sys.sigma_minus(q) * big_ad);
    }
    return h;
}

}  // namespace

FockSystem::FockSystem(std::size_t cutoff) : cutoff_(cutoff) {
    if (cutoff < 4) throw InvalidArgument("FockSystem: cutoff must be at least 4");
    const auto d = static_cast<Eigen::Index>(cutoff);
    a_ = CMatrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) a_(n - 1, n) = std::sqrt(static_cast<double>(n));
}

CMatrix FockSystem::position() const { return (a_ + a_.adjoint()) / std::sqrt(2.0); }

CMatrix FockSystem::momentum() const { return (a_ - a_.adjoint()) / (kI * std::sqrt(2.0)); }

CMatrix FockSystem::sigma_z(int qubit) const { return on_qubit(*this, qubit, qubit_op(0)); }
CMatrix FockSystem::sigma_plus(int qubit) const { return on_qubit(*this, qubit, qubit_op(1)); }
CMatrix FockSystem::sigma_minus(int qubit) const { return on_qubit(*this, qubit, qubit_op(2)); }

CMatrix FockSystem::on_oscillator(const CMatrix& op) const {
    return kron3(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2), op);
}

CMatrix FockSystem::excitation_number() const {
    CMatrix n = on_oscillator(a_.adjoint() * a_);
    for (int q = 0; q < 2; ++q) n += sigma_plus(q) * sigma_minus(q);
    return n;
}

std::size_t FockSystem::index(bool qubit1_up, bool qubit2_up, std::size_t photons) const {
    const std::size_t q1 = qubit1_up ? 0 : 1;
    const std::size_t q2 = qubit2_up ? 0 : 1;
    return (2 * q1 + q2) * cutoff_ + photons;
}

std::vector<std::size_t> FockSystem::interior_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t q = 0; q < 4; ++q) {
        for (std::size_t n = 0; n < interior_size(cutoff_); ++n) idx.push_back(q * cutoff_ + n);
    }
    return idx;
}

double JcParameters::detuning() const { return std::abs(omega_q - omega_r); }

bool JcParameters::is_dispersive() const {
    return std::abs(omega_q - std::cosh(2.0 * r) * omega_r) > 10.0 * std::cosh(r) * std::abs(g);
}

CMatrix build_jc_hamiltonian(const FockSystem& sys, const JcParameters& p) {
    return jc_hamiltonian_with(sys, p, sys.annihilation());
}

double squeeze_truncation_error(const FockSystem& sys, double r, int sign) {
    if (sign != 1 && sign != -1) throw InvalidArgument("fock_squeeze: sign must be +1 or -1");
    const CMatrix s = squeeze_unchecked(sys, r, sign);
    const CMatrix& a = sys.annihilation();
    const CMatrix lhs = s.adjoint() * a * s;
    const CMatrix rhs = std::cosh(r) * a - static_cast<double>(sign) * std::sinh(r) * a.adjoint();
    const auto low = static_cast<Eigen::Index>(interior_size(sys.cutoff()));
    return (lhs - rhs).topLeftCorner(low, low).cwiseAbs().maxCoeff();
}

CMatrix fock_squeeze(const FockSystem& sys, double r, int sign) {
    const double err = squeeze_truncation_error(sys, r, sign);
    if (!(err <= kSqueezeTruncationTolerance)) {
        throw TruncationError("fock_squeeze: cutoff " + std::to_string(sys.cutoff()) + " too small for r = " +
                              std::to_string(r) + " (Bogoliubov deviation " + std::to_string(err) + ")");
    }
    return squeeze_unchecked(sys, r, sign);
}

std::optional<double> resonance_crossing(const JcParameters& p) {
    const double ratio = p.omega_q / p.omega_r;
    if (!(ratio >= 1.0)) return std::nullopt;
    return 0.5 * std::acosh(ratio);
}

AmplifiedCoupling amplified_frequency(const JcParameters& p) {
    const double denom = std::abs(p.omega_q - std::cosh(2.0 * p.r) * p.omega_r);
    if (!(denom > 1e-12 * std::max(std::abs(p.omega_q), std::abs(p.omega_r)))) {
        const double crossing = resonance_crossing(p).value_or(p.r);
        throw ResonanceError("amplified_frequency: qubits resonant with the amplified resonator at r = " +
                                 std::to_string(crossing),
                             crossing);
    }
    const double c = std::cosh(p.r);
    AmplifiedCoupling out;
    out.omega_amp = c * c * p.g * p.g / denom;
    out.t_swap = std::numbers::pi / (2.0 * out.omega_amp);
    return out;
}

SwapTrace swap_probability_evolution(const FockSystem& sys, const JcParameters& p, double t_final, double dt,
                                     std::size_t samples) {
    if (!(dt > 0.0)) throw InvalidArgument("swap_probability_evolution: dt must be positive");
    // S^dagger e^{-i H0 dt} S = exp(-i dt S^dagger H0 S), and S^dagger H0 S is H0
    // with a -> a cosh r -+ a^dagger sinh r. Truncating this Hamiltonian keeps
    // each step exactly unitary.
    const CMatrix& a = sys.annihilation();
    const CMatrix b_plus = std::cosh(p.r) * a - std::sinh(p.r) * a.adjoint();
    const CMatrix b_minus = std::cosh(p.r) * a + std::sinh(p.r) * a.adjoint();
    const CMatrix u_plus = (jc_hamiltonian_with(sys, p, b_plus) * (-kI * dt)).exp();
    const CMatrix u_minus = (jc_hamiltonian_with(sys, p, b_minus) * (-kI * dt)).exp();
    const CMatrix cycle = u_minus * u_plus;
    return run_cycles(sys, cycle, 2.0 * dt, t_final, samples);
}

SwapTrace direct_swap_evolution(const FockSystem& sys, const JcParameters& p, double t_final, double dt,
                                std::size_t samples) {
    if (!(dt > 0.0)) throw InvalidArgument("direct_swap_evolution: dt must be positive");
    const CMatrix h = build_jc_hamiltonian(sys, p);
    return run_cycles(sys, (h * (-kI * 2.0 * dt)).exp(), 2.0 * dt, t_final, samples);
}

SwapTrace converged_swap_trace(const JcParameters& p, double t_final, double dt, std::size_t samples,
                               std::size_t cutoff, std::size_t max_cutoff) {
    for (std::size_t d = cutoff; 2 * d <= max_cutoff; d *= 2) {
        const SwapTrace coarse = swap_probability_evolution(FockSystem(d), p, t_final, dt, samples);
        const SwapTrace fine = swap_probability_evolution(FockSystem(2 * d), p, t_final, dt, samples);
        double gap = 0.0;
        for (std::size_t k = 0; k < coarse.p_swap.size(); ++k) {
            gap = std::max(gap, std::abs(coarse.p_swap[k] - fine.p_swap[k]));
        }
        if (gap <= kTruncationAgreement) return coarse;
    }
    throw TruncationError("converged_swap_trace: P_swap not converged up to cutoff " + std::to_string(max_cutoff));
}

double amplified_jc_map_check(const FockSystem& sys, const JcParameters& p) {
    const CMatrix& a = sys.annihilation();
    const CMatrix h0 = build_jc_hamiltonian(sys, p);
    const CMatrix s_plus = sys.on_oscillator(squeeze_unchecked(sys, p.r, +1));
    const CMatrix s_minus = sys.on_oscillator(squeeze_unchecked(sys, p.r, -1));
    const CMatrix averaged = 0.5 * (s_plus.adjoint() * h0 * s_plus + s_minus.adjoint() * h0 * s_minus);

    const CMatrix h_r = p.omega_r * sys.on_oscillator(a.adjoint() * a);
    const CMatrix big_a = sys.on_oscillator(a);
    CMatrix h_q = CMatrix::Zero(h0.rows(), h0.cols());
    CMatrix h_int = CMatrix::Zero(h0.rows(), h0.cols());
    for (int q = 0; q < 2; ++q) {
        h_q += 0.5 * p.omega_q * sys.sigma_z(q);
        h_int += p.g * (sys.sigma_plus(q) * big_a + sys.sigma_minus(q) * big_a.adjoint());
    }
    const CMatrix predicted = h_q + std::cosh(2.0 * p.r) * h_r + std::cosh(p.r) * h_int;

    std::vector<Eigen::Index> idx;
    for (const std::size_t k : sys.interior_indices()) idx.push_back(static_cast<Eigen::Index>(k));
    CMatrix diff = (averaged - predicted)(idx, idx);
    const cplx offset = diff.trace() / static_cast<double>(diff.rows());
    diff.diagonal().array() -= offset;
    const double scale = hs_norm(CMatrix(predicted(idx, idx)));
    return scale > 0.0 ? hs_norm(diff) / scale : hs_norm(diff);
}

}  // namespace hamamp
