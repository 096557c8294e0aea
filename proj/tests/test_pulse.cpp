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
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hamamp/averaging.hpp"
#include "hamamp/errors.hpp"
#include "hamamp/pulse.hpp"
#include "test_support.hpp"

namespace hamamp {
namespace {

// I2 = int_0^T [sinh u(t1) C(t1) - cosh u(t1) S(t1)] dt1 with C, S the running
// integrals of cosh u and sinh u, all on one composite Simpson grid.
double separable_i2(const PulseShape& p, int intervals = 20000) {
    const double h = p.period() / intervals;
    std::vector<double> c(intervals + 1, 0.0), s(intervals + 1, 0.0);
    for (int k = 0; k < intervals; ++k) {
        const double t0 = k * h, tm = t0 + 0.5 * h, t1 = t0 + h;
        c[k + 1] = c[k] + h / 6.0 * (std::cosh(p.u(t0)) + 4 * std::cosh(p.u(tm)) + std::cosh(p.u(t1)));
        s[k + 1] = s[k] + h / 6.0 * (std::sinh(p.u(t0)) + 4 * std::sinh(p.u(tm)) + std::sinh(p.u(t1)));
    }
    double sum = 0.0;
    for (int k = 0; k <= intervals; ++k) {
        const double t = k * h;
        const double f = std::sinh(p.u(t)) * c[k] - std::cosh(p.u(t)) * s[k];
        const double w = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        sum += w * f;
    }
    return sum * h / 3.0;
}

std::vector<PulseShape> random_theorem_pulses(std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_int_distribution<int> terms(1, 3);
    std::uniform_int_distribution<int> harmonic(1, 3);
    std::vector<PulseShape> out;
    const PulseFamily families[] = {PulseFamily::exsol1, PulseFamily::exsol3, PulseFamily::exsol4,
                                    PulseFamily::exsol2_n};
    for (int k = 0; k < count; ++k) {
        const PulseFamily f = families[k % 4];
        std::vector<double> a(f == PulseFamily::exsol2_n ? 1 : terms(rng));
        for (double& x : a) x = coef(rng);
        out.emplace_back(f, a, 0.5 + 0.1 * (k % 7), harmonic(rng));
    }
    return out;
}

TEST(BesselTest, Values) {
    EXPECT_EQ(bessel_i0(0.0), 1.0);
    for (const double k : {0.5, 1.0, 2.0, 5.0, 12.0}) {
        EXPECT_NEAR(bessel_i0(k), std::cyl_bessel_i(0.0, k), 1e-12 * std::cyl_bessel_i(0.0, k));
    }
    EXPECT_NEAR(bessel_i0(2.0), 2.2795853023360673, 1e-12);
}

TEST(BesselTest, GainParameterInverts) {
    const double k = bessel_gain_parameter(2.0);
    EXPECT_NEAR(bessel_i0(k), 2.0, 1e-10);
    EXPECT_NEAR(k, 1.8078967, 1e-6);
    EXPECT_NEAR(bessel_gain_parameter(1.0), 0.0, 1e-10);
    EXPECT_THROW(bessel_gain_parameter(0.5), InvalidArgument);
}

TEST(PulseShapeTest, FamilyFormulas) {
    const double k = 0.9, period = 0.4;
    const auto ex1 = build_pulse_family(PulseFamily::exsol1, {k}, period);
    const auto ex2 = build_pulse_family(PulseFamily::exsol2_n, {k}, period, 1);
    for (const double t : {0.0, 0.03, 0.17, 0.33}) {
        EXPECT_NEAR(ex1.u(t), k * std::cos(2 * std::numbers::pi * t / period), 1e-15);
        // With T = 2 dt: R(t) = K/2 cos(2 pi t / dt).
        EXPECT_NEAR(ex2.integrated(t), 0.5 * k * std::cos(2 * std::numbers::pi * t / (period / 2)), 1e-15);
    }
    EXPECT_TRUE(build_pulse_family(PulseFamily::exsol3, {0.0, 0.0}, 1.0).is_zero());
    EXPECT_THROW(parse_pulse_family("square"), InvalidArgument);
    EXPECT_THROW(build_pulse_family(PulseFamily::exsol2_n, {1.0}, 1.0, 0), InvalidArgument);
    EXPECT_THROW(build_pulse_family(PulseFamily::exsol1, {1.0}, 0.0), InvalidArgument);
}

TEST(PulseShapeTest, RateIsDerivativeOfIntegratedPulse) {
    std::mt19937_64 rng(30);
    for (const auto& p : random_theorem_pulses(rng, 12)) {
        for (const double frac : {0.11, 0.37, 0.71}) {
            const double t = frac * p.period();
            const double h = 1e-6 * p.period();
            const double fd = (p.integrated(t + h) - p.integrated(t - h)) / (2 * h);
            EXPECT_NEAR(p.rate(t), fd, 1e-6 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST(PulseShapeTest, PeriodicAndSymmetric) {
    std::mt19937_64 rng(31);
    for (const auto& p : random_theorem_pulses(rng, 20)) {
        EXPECT_NEAR(p.integrated(p.period()), p.integrated(0.0), 1e-12);
        for (int k = 0; k < 1024; ++k) {
            const double t = p.period() * k / 1024.0;
            EXPECT_NEAR(p.u(-t), p.u(t + p.period()), 1e-10);
        }
    }
    const auto sine = build_pulse_family(PulseFamily::cosine_first_order, {1.0}, 1.0);
    EXPECT_NEAR(sine.integrated(0.0), 0.0, 1e-15);
    EXPECT_NEAR(sine.integrated(1.0), 0.0, 1e-12);
}

TEST(MagnusFirstOrderTest, ZeroPulseLeavesHamiltonian) {
    const auto h = QuadraticHamiltonian::harmonic(2, 0.5);
    const auto zero = build_pulse_family(PulseFamily::exsol1, {0.0}, 1.0);
    EXPECT_EQ(magnus_first_order(h, zero).a_matrix(), h.a_matrix());
}

TEST(MagnusFirstOrderTest, BesselLaw) {
    for (const double k : {0.5, 1.0, 2.0}) {
        const double i0 = std::cyl_bessel_i(0.0, k);
        for (const auto& p : {build_pulse_family(PulseFamily::cosine_first_order, {k}, 1.0),
                              build_pulse_family(PulseFamily::exsol2_n, {k}, 0.3, 1)}) {
            const auto s = magnus_scale_factors(p);
            EXPECT_NEAR(s.x_scale, i0, 1e-9);
            EXPECT_NEAR(s.p_scale, i0, 1e-9);
        }
    }
}

TEST(MagnusFirstOrderTest, ScalesBlocksAndRejectsCrossTerms) {
    Matrix wx(2, 2), wp(2, 2);
    wx << 0.4, 0.1, 0.1, 0.2;
    wp << 0.3, -0.2, -0.2, 0.5;
    const auto h = QuadraticHamiltonian::from_xx_pp(wx, wp);
    const auto p = build_pulse_family(PulseFamily::exsol1, {0.7, 0.2}, 1.0);
    const auto s = magnus_scale_factors(p);
    const auto out = magnus_first_order(h, p);
    EXPECT_LT((out.omega_x() - s.x_scale * wx).norm(), 1e-14);
    EXPECT_LT((out.omega_p() - s.p_scale * wp).norm(), 1e-14);
    Matrix cross = Matrix::Zero(2, 2);
    cross(0, 1) = cross(1, 0) = 1.0;
    EXPECT_THROW(magnus_first_order(QuadraticHamiltonian(cross), p), InvalidArgument);
}

TEST(MagnusFirstOrderTest, ScaleFactorsAtLeastOne) {
    std::mt19937_64 rng(32);
    for (const auto& p : random_theorem_pulses(rng, 20)) {
        const auto s = magnus_scale_factors(p);
        EXPECT_GE(s.x_scale, 1.0 - 1e-12);
        EXPECT_GE(s.p_scale, 1.0 - 1e-12);
    }
}

TEST(SecondIntegralsTest, ZeroPulse) {
    const auto ints = magnus_second_integrals(build_pulse_family(PulseFamily::exsol4, {0.0}, 1.0));
    EXPECT_EQ(ints.i1, 0.0);
    EXPECT_EQ(ints.i2, 0.0);
}

TEST(SecondIntegralsTest, SolutionFamiliesVanish) {
    std::mt19937_64 rng(33);
    for (const auto& p : random_theorem_pulses(rng, 50)) {
        const auto ints = magnus_second_integrals(p);
        EXPECT_NEAR(ints.i1, 0.0, 1e-8) << to_string(p.family());
        EXPECT_NEAR(ints.i2, 0.0, 1e-8) << to_string(p.family());
    }
}

TEST(SecondIntegralsTest, SinePulseKeepsSecondOrder) {
    for (const double k : {0.5, 1.0, 1.8}) {
        const auto p = build_pulse_family(PulseFamily::cosine_first_order, {k}, 1.0);
        const auto ints = magnus_second_integrals(p);
        EXPECT_NEAR(ints.i1, 0.0, 1e-12);
        EXPECT_NEAR(ints.i2, separable_i2(p), 1e-9);
        if (k == 1.0) EXPECT_GT(std::abs(ints.i2), 1e-3);
    }
}

TEST(SecondIntegralsTest, AgreesWithSeparableOracle) {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> coef(-1.5, 1.5);
    for (int k = 0; k < 5; ++k) {
        // A generic pulse outside the solution families.
        const auto p = build_pulse_family(PulseFamily::exsol1, {coef(rng)}, 1.0);
        const auto shifted = build_pulse_family(PulseFamily::cosine_first_order, {coef(rng)}, 1.0);
        EXPECT_NEAR(magnus_second_integrals(p).i2, separable_i2(p), 1e-9);
        EXPECT_NEAR(magnus_second_integrals(shifted).i2, separable_i2(shifted), 1e-9);
    }
}

TEST(ControllerFrameTest, ScalesQuadratures) {
    const Matrix a = QuadraticHamiltonian::harmonic(1, 1.0).a_matrix();
    const Matrix f = controller_frame(a, 0.3);
    EXPECT_NEAR(f(0, 0), std::exp(-0.6), 1e-15);
    EXPECT_NEAR(f(1, 1), std::exp(0.6), 1e-15);
}

TEST(PropagateSmoothTest, ZeroPulseIsFreeEvolution) {
    const auto h = QuadraticHamiltonian::harmonic(2, 0.5);
    const auto zero = build_pulse_family(PulseFamily::exsol1, {0.0}, 0.1);
    const auto out = propagate_smooth(h, zero, 10, 32);
    EXPECT_TRUE(out.converged);
    EXPECT_LT((out.propagator.matrix() - sympl_exp(build_generator(h), 1.0).matrix()).norm(), 1e-12);
    EXPECT_THROW(propagate_smooth(h, zero, 1, 8), InvalidArgument);
}

TEST(PropagateSmoothTest, AgreesWithLabFrameIntegration) {
    // Lab frame: dF/dt = Omega (A + r(t) B) F, B = [[0,-1],[-1,0]] per mode, so
    // the controller alone acts as diag(e^-R, e^R). At full periods the lab
    // propagator equals D(R0) F_I D(R0)^-1.
    const auto h = QuadraticHamiltonian::harmonic(1, 0.5);
    const auto pulse = amplifying_pulse(2.0, 0.1);
    const std::size_t cycles = 3;
    const Matrix omega = symplectic_form(1);
    Matrix b(2, 2);
    b << 0.0, -1.0, -1.0, 0.0;
    auto rhs = [&](double t, const Matrix& f) {
        return Matrix(omega * (h.a_matrix() + pulse.rate(t) * b) * f);
    };
    const int steps = 60000;
    const double dt = pulse.period() * cycles / steps;
    Matrix f = Matrix::Identity(2, 2);
    for (int k = 0; k < steps; ++k) {
        const double t = k * dt;
        const Matrix k1 = rhs(t, f);
        const Matrix k2 = rhs(t + dt / 2, f + dt / 2 * k1);
        const Matrix k3 = rhs(t + dt / 2, f + dt / 2 * k2);
        const Matrix k4 = rhs(t + dt, f + dt * k3);
        f += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    const double r0 = pulse.integrated(0.0);
    Matrix d0 = Matrix::Zero(2, 2);
    d0(0, 0) = std::exp(-r0);
    d0(1, 1) = std::exp(r0);
    const Matrix interaction = propagate_smooth(h, pulse, cycles, 1024).propagator.matrix();
    EXPECT_LT((f - d0 * interaction * d0.inverse()).norm(), 1e-6);
}

TEST(PropagateSmoothTest, SecondOrderCancellationBeatsBangBang) {
    const auto h = QuadraticHamiltonian::harmonic(1, 0.5);
    const double lambda = 2.0, t = 1.0;
    const Matrix target = sympl_exp(build_generator(h), lambda * t).matrix();
    const auto ops = build_ha_set(1, all_modes(1), 0.5 * std::acosh(lambda));
    const double k_sine = bessel_gain_parameter(lambda);
    std::vector<double> dts, smooth, sine;
    for (const std::size_t n : {10u, 20u, 40u, 80u, 160u}) {
        const double period = t / static_cast<double>(n);
        const auto exsol2 = propagate_smooth(h, amplifying_pulse(lambda, period), n, 256);
        const auto first = propagate_smooth(
            h, build_pulse_family(PulseFamily::cosine_first_order, {k_sine}, period), n, 256);
        ASSERT_TRUE(exsol2.converged);
        ASSERT_TRUE(first.converged);
        const double e_smooth = hs_norm(exsol2.propagator.matrix() - target);
        const double e_sine = hs_norm(first.propagator.matrix() - target);
        const double e_bang = hs_norm(trotter_sequence(h, ops, t, n).matrix() - target);
        EXPECT_LT(e_smooth, e_sine);
        EXPECT_LT(e_smooth, e_bang);
        EXPECT_LT(exsol2.propagator.symplectic_defect(), 1e-8);
        dts.push_back(period / 2);
        smooth.push_back(e_smooth);
        sine.push_back(e_sine);
    }
    EXPECT_NEAR(testing::loglog_slope(dts, sine), 1.0, 0.3);
    EXPECT_GE(testing::loglog_slope(dts, smooth), 1.7);
}

TEST(PropagatePulseModulatedTest, UnitAmplitudeMatchesSmooth) {
    const auto h = QuadraticHamiltonian::harmonic(1, 0.5);
    const auto pulse = amplifying_pulse(2.0, 0.05);
    const std::vector<double> ones(20 * 64, 1.0);
    const Matrix a = propagate_pulse_modulated(h, pulse, 20, 64, ones).matrix();
    const Matrix b = propagate_smooth(h, pulse, 20, 64).propagator.matrix();
    EXPECT_LT((a - b).norm(), 1e-13);
    EXPECT_THROW(propagate_pulse_modulated(h, pulse, 20, 64, std::vector<double>(5, 1.0)), InvalidArgument);
}

}  // namespace
}  // namespace hamamp
