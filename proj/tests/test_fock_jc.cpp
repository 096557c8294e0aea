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

#include <cmath>
#include <algorithm>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "hamamp/errors.hpp"
#include "hamamp/fock_jc.hpp"

namespace hamamp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Resonator 2.5 GHz, qubits 15 GHz, coupling 50 MHz, in rad/ns.
JcParameters reference(double r) { return JcParameters{kTwoPi * 2.5, kTwoPi * 15.0, kTwoPi * 0.05, r}; }

TEST(FockSystemTest, LadderOperators) {
    const FockSystem sys(12);
    const CMatrix& a = sys.annihilation();
    for (Eigen::Index n = 1; n < 12; ++n) {
        CVector ket = CVector::Zero(12);
        ket(n) = 1.0;
        const CVector out = a * ket;
        EXPECT_NEAR(std::abs(out(n - 1)), std::sqrt(static_cast<double>(n)), 1e-15);
        EXPECT_NEAR(out.norm(), std::sqrt(static_cast<double>(n)), 1e-15);
    }
    const CMatrix comm = sys.position() * sys.momentum() - sys.momentum() * sys.position();
    const CMatrix expected = std::complex<double>(0.0, 1.0) * CMatrix::Identity(11, 11);
    EXPECT_LT((comm.topLeftCorner(11, 11) - expected).norm(), 1e-13);
    EXPECT_THROW(FockSystem(3), InvalidArgument);
}

TEST(FockSystemTest, IndexingAndQubitOperators) {
    const FockSystem sys(6);
    EXPECT_EQ(sys.dim(), 24u);
    EXPECT_EQ(sys.index(true, true, 0), 0u);
    EXPECT_EQ(sys.index(true, false, 2), 8u);
    EXPECT_EQ(sys.index(false, true, 5), 17u);
    const CMatrix sz = sys.sigma_z(0);
    EXPECT_EQ(sz(sys.index(true, false, 1), sys.index(true, false, 1)), 1.0);
    EXPECT_EQ(sz(sys.index(false, true, 1), sys.index(false, true, 1)), -1.0);
    const CMatrix sp = sys.sigma_plus(1);
    EXPECT_EQ(sp(sys.index(true, true, 3), sys.index(true, false, 3)), 1.0);
    EXPECT_LT((sys.sigma_minus(1) - sp.adjoint()).norm(), 1e-15);
    EXPECT_THROW(sys.sigma_z(2), InvalidArgument);
    EXPECT_EQ(sys.interior_indices().size(), 8u);
}

TEST(JcHamiltonianTest, HermitianAndExcitationConserving) {
    const FockSystem sys(10);
    const CMatrix h = build_jc_hamiltonian(sys, reference(0.0));
    EXPECT_LT((h - h.adjoint()).norm(), 1e-12);
    const CMatrix n = sys.excitation_number();
    EXPECT_LT((h * n - n * h).norm(), 1e-10);
}

TEST(JcHamiltonianTest, UncoupledSpectrum) {
    const FockSystem sys(8);
    JcParameters p = reference(0.0);
    p.g = 0.0;
    const CMatrix h = build_jc_hamiltonian(sys, p);
    std::vector<double> expected;
    for (int n = 0; n < 8; ++n) {
        for (const double q : {-1.0, 0.0, 0.0, 1.0}) expected.push_back(p.omega_r * n + q * p.omega_q);
    }
    std::sort(expected.begin(), expected.end());
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    for (std::size_t k = 0; k < expected.size(); ++k) {
        EXPECT_NEAR(eig.eigenvalues()(static_cast<Eigen::Index>(k)), expected[k], 1e-10);
    }
}

TEST(JcParametersTest, Dispersive) {
    EXPECT_TRUE(reference(0.0).is_dispersive());
    EXPECT_FALSE(reference(0.5 * std::acosh(6.0)).is_dispersive());
    EXPECT_NEAR(reference(0.0).detuning(), kTwoPi * 12.5, 1e-12);
}

TEST(FockSqueezeTest, IdentityAtZero) {
    const FockSystem sys(10);
    EXPECT_LT((fock_squeeze(sys, 0.0, 1) - CMatrix::Identity(10, 10)).norm(), 1e-15);
}

TEST(FockSqueezeTest, BogoliubovOnInteriorBlock) {
    const FockSystem sys(40);
    for (const int sign : {1, -1}) EXPECT_LT(squeeze_truncation_error(sys, 0.5, sign), 1e-6);
    const CMatrix sp = fock_squeeze(sys, 0.5, 1);
    const CMatrix sm = fock_squeeze(sys, 0.5, -1);
    EXPECT_LT((sp * sp.adjoint() - CMatrix::Identity(40, 40)).norm(), 1e-10);
    EXPECT_LT((sp * sm - CMatrix::Identity(40, 40)).topLeftCorner(5, 5).norm(), 1e-6);
    EXPECT_THROW(fock_squeeze(sys, 0.5, 0), InvalidArgument);
}

TEST(FockSqueezeTest, SmallCutoffTruncates) {
    EXPECT_THROW(fock_squeeze(FockSystem(8), 1.5, 1), TruncationError);
    EXPECT_GT(squeeze_truncation_error(FockSystem(8), 1.5, 1), 1e-4);
}

TEST(AmplifiedFrequencyTest, BareDispersiveCoupling) {
    const auto c = amplified_frequency(reference(0.0));
    EXPECT_NEAR(c.omega_amp, kTwoPi * 2e-4, 1e-15);
    EXPECT_NEAR(c.t_swap, 1250.0, 1e-9);
}

TEST(AmplifiedFrequencyTest, ClosedForm) {
    for (const double r : {0.2, 0.4, 0.8, 2.0}) {
        const JcParameters p = reference(r);
        const double expected =
            std::pow(std::cosh(r) * p.g, 2) / std::abs(p.omega_q - std::cosh(2 * r) * p.omega_r);
        EXPECT_NEAR(amplified_frequency(p).omega_amp, expected, 1e-12 * expected);
    }
}

TEST(AmplifiedFrequencyTest, LargeSqueezingLimit) {
    const JcParameters p = reference(6.0);
    const double limit = p.g * p.g / (2.0 * p.omega_r);
    EXPECT_NEAR(amplified_frequency(p).omega_amp, limit, 1e-3 * limit);
}

TEST(AmplifiedFrequencyTest, Resonances) {
    JcParameters same = reference(0.0);
    same.omega_q = same.omega_r;
    EXPECT_THROW(amplified_frequency(same), ResonanceError);
    const auto crossing = resonance_crossing(reference(0.0));
    ASSERT_TRUE(crossing.has_value());
    EXPECT_NEAR(*crossing, 0.5 * std::acosh(6.0), 1e-15);
    EXPECT_THROW(amplified_frequency(reference(*crossing)), ResonanceError);
    try {
        amplified_frequency(reference(*crossing));
    } catch (const ResonanceError& e) {
        EXPECT_NEAR(e.crossing_r(), *crossing, 1e-12);
    }
    JcParameters below = reference(0.0);
    below.omega_q = 0.5 * below.omega_r;
    EXPECT_FALSE(resonance_crossing(below).has_value());
}

TEST(SwapEvolutionTest, NoCouplingNoSwap) {
    JcParameters p = reference(0.4);
    p.g = 0.0;
    const auto trace = swap_probability_evolution(FockSystem(8), p, 20.0, 0.01, 11);
    for (const double x : trace.p_swap) EXPECT_LT(x, 1e-14);
    EXPECT_FALSE(trace.first_peak_time.has_value());
}

TEST(SwapEvolutionTest, UnsqueezedMatchesDirect) {
    const FockSystem sys(8);
    const auto a = swap_probability_evolution(sys, reference(0.0), 100.0, 0.01, 51);
    const auto b = direct_swap_evolution(sys, reference(0.0), 100.0, 0.01, 51);
    ASSERT_EQ(a.p_swap.size(), 51u);
    EXPECT_EQ(a.times, b.times);
    for (std::size_t k = 0; k < a.p_swap.size(); ++k) EXPECT_NEAR(a.p_swap[k], b.p_swap[k], 1e-10);
    EXPECT_NEAR(a.times.back(), 100.0, 1e-9);
}

TEST(SwapEvolutionTest, FirstPeakAtSwapTime) {
    const auto trace = swap_probability_evolution(FockSystem(8), reference(0.0), 1500.0, 0.01, 31);
    ASSERT_TRUE(trace.first_peak_time.has_value());
    EXPECT_NEAR(*trace.first_peak_time, 1250.0, 0.05 * 1250.0);
    EXPECT_GE(trace.first_peak_value, 0.95);
    EXPECT_LT(trace.max_norm_drift, 1e-6);
}

TEST(SwapEvolutionTest, ArgumentErrors) {
    const FockSystem sys(8);
    EXPECT_THROW(swap_probability_evolution(sys, reference(0.0), 10.0, 0.0, 5), InvalidArgument);
    EXPECT_THROW(swap_probability_evolution(sys, reference(0.0), 10.0, 0.01, 1), InvalidArgument);
    EXPECT_THROW(swap_probability_evolution(sys, reference(0.0), -1.0, 0.01, 5), InvalidArgument);
    EXPECT_THROW(direct_swap_evolution(sys, reference(0.0), 10.0, -0.01, 5), InvalidArgument);
}

TEST(ConvergedSwapTraceTest, AcceptsAgreeingCutoff) {
    const auto trace = converged_swap_trace(reference(0.4), 40.0, 0.01, 21, 8, 64);
    EXPECT_GE(trace.cutoff, 8u);
    EXPECT_EQ(trace.p_swap.size(), 21u);
    EXPECT_THROW(converged_swap_trace(reference(0.4), 40.0, 0.01, 21, 40, 60), TruncationError);
}

TEST(AmplifiedMapCheckTest, Unsqueezed) {
    EXPECT_LT(amplified_jc_map_check(FockSystem(16), reference(0.0)), 1e-10);
}

TEST(AmplifiedMapCheckTest, ModerateSqueezing) {
    EXPECT_LT(amplified_jc_map_check(FockSystem(60), reference(0.5)), 1e-4);
}

TEST(AmplifiedMapCheckTest, ImprovesWithCutoff) {
    const double coarse = amplified_jc_map_check(FockSystem(24), reference(0.8));
    const double fine = amplified_jc_map_check(FockSystem(48), reference(0.8));
    EXPECT_LT(fine, coarse);
}

}  // namespace
}  // namespace hamamp
