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

#include "hamamp/pulse.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hamamp/errors.hpp"

namespace hamamp {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr unsigned kQuadDepth = 10;
constexpr double kQuadTolerance = 1e-10;

template <typename F>
double integrate(F&& f, double a, double b) {
    if (b <= a) return 0.0;
    return gauss_kronrod<double, 31>::integrate(f, a, b, kQuadDepth, kQuadTolerance);
}

// Sum of a_n cos(m_n w t) and friends, with m_n = 2n + 1.
double odd_cos_sum(const std::vector<double>& a, double w, double t) {
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * std::cos(static_cast<double>(2 * n + 1) * w * t);
    return s;
}

double odd_cos_sum_derivative(const std::vector<double>& a, double w, double t) {
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const double m = static_cast<double>(2 * n + 1) * w;
        s -= a[n] * m * std::sin(m * t);
    }
    return s;
}

double odd_sin_sum(const std::vector<double>& a, double w, double t) {
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * std::sin(static_cast<double>(2 * n + 1) * w * t);
    return s;
}

double odd_sin_sum_derivative(const std::vector<double>& a, double w, double t) {
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const double m = static_cast<double>(2 * n + 1) * w;
        s += a[n] * m * std::cos(m * t);
    }
    return s;
}

SymplecticMatrix pulse_cycle(const QuadraticHamiltonian& h, const PulseShape& pulse, std::size_t substeps,
                             const double* amplitude) {
    const Matrix omega = symplectic_form(h.n_modes());
    const double step = pulse.period() / static_cast<double>(substeps);
    SymplecticMatrix cycle = SymplecticMatrix::identity(h.n_modes());
    for (std::size_t k = 0; k < substeps; ++k) {
        const double mid = (static_cast<double>(k) + 0.5) * step;
        double big_r = pulse.integrated(mid);
        if (amplitude != nullptr) big_r *= amplitude[k];
        cycle = sympl_exp(omega * controller_frame(h.a_matrix(), big_r), step) * cycle;
    }
    return cycle;
}

SymplecticMatrix repeat(const SymplecticMatrix& cycle, std::size_t n_cycles) {
    SymplecticMatrix total = SymplecticMatrix::identity(cycle.n_modes());
    for (std::size_t k = 0; k < n_cycles; ++k) total = cycle * total;
    return total;
}

}  // namespace

double bessel_i0(double k) {
    const double q = 0.25 * k * k;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 1000; ++n) {
        term *= q / (static_cast<double>(n) * static_cast<double>(n));
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

double bessel_gain_parameter(double lambda) {
    double lo = 0.0;
    double hi = 20.0;
    if (!(lambda >= 1.0) || lambda > bessel_i0(hi)) {
        throw InvalidArgument("bessel_gain_parameter: lambda must lie in [1, I0(20)]");
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (bessel_i0(mid) < lambda ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::string_view to_string(PulseFamily family) {
    switch (family) {
        case PulseFamily::cosine_first_order:
            return "cosine_first_order";
        case PulseFamily::exsol1:
            return "exsol1";
        case PulseFamily::exsol3:
            return "exsol3";
        case PulseFamily::exsol4:
            return "exsol4";
        case PulseFamily::exsol2_n:
            return "exsol2_n";
    }
    return "exsol1";
}

PulseFamily parse_pulse_family(std::string_view name) {
    for (const auto f : {PulseFamily::cosine_first_order, PulseFamily::exsol1, PulseFamily::exsol3,
                         PulseFamily::exsol4, PulseFamily::exsol2_n}) {
        if (to_string(f) == name) return f;
    }
    throw InvalidArgument("unknown pulse family '" + std::string(name) + "'");
}

PulseShape::PulseShape(PulseFamily family, std::vector<double> coefficients, double period, int harmonic)
    : family_(family), coefficients_(std::move(coefficients)), period_(period), harmonic_(harmonic) {
    if (!(period_ > 0.0) || !std::isfinite(period_)) throw InvalidArgument("PulseShape: period must be positive");
    if (family_ == PulseFamily::cosine_first_order || family_ == PulseFamily::exsol2_n) {
        if (coefficients_.size() > 1) {
            throw InvalidArgument(std::string("PulseShape: family ") + std::string(to_string(family_)) +
                                  " takes a single amplitude");
        }
        coefficients_.resize(1, 0.0);
    }
    if (family_ == PulseFamily::exsol2_n && harmonic_ < 1) {
        throw InvalidArgument("PulseShape: exsol2_n needs a harmonic index n >= 1");
    }
}

double PulseShape::u(double t) const {
    const double w = 2.0 * std::numbers::pi / period_;
    const auto& a = coefficients_;
    switch (family_) {
        case PulseFamily::cosine_first_order:
            return a[0] * std::sin(w * t);
        case PulseFamily::exsol1:
            return odd_cos_sum(a, w, t);
        case PulseFamily::exsol3: {
            const double s = std::sin(w * t);
            return s * s * odd_cos_sum(a, w, t);
        }
        case PulseFamily::exsol4:
            return std::sin(2.0 * w * t) * odd_sin_sum(a, w, t);
        case PulseFamily::exsol2_n:
            return a[0] * std::cos(2.0 * harmonic_ * w * t);
    }
    return 0.0;
}

double PulseShape::du(double t) const {
    const double w = 2.0 * std::numbers::pi / period_;
    const auto& a = coefficients_;
    switch (family_) {
        case PulseFamily::cosine_first_order:
            return a[0] * w * std::cos(w * t);
        case PulseFamily::exsol1:
            return odd_cos_sum_derivative(a, w, t);
        case PulseFamily::exsol3: {
            const double s = std::sin(w * t);
            return 2.0 * s * std::cos(w * t) * w * odd_cos_sum(a, w, t) + s * s * odd_cos_sum_derivative(a, w, t);
        }
        case PulseFamily::exsol4:
            return 2.0 * w * std::cos(2.0 * w * t) * odd_sin_sum(a, w, t) +
                   std::sin(2.0 * w * t) * odd_sin_sum_derivative(a, w, t);
        case PulseFamily::exsol2_n: {
            const double m = 2.0 * harmonic_ * w;
            return -a[0] * m * std::sin(m * t);
        }
    }
    return 0.0;
}

double PulseShape::integrated(double t) const { return 0.5 * u(t); }

double PulseShape::rate(double t) const { return 0.5 * du(t); }

bool PulseShape::is_zero() const {
    for (const double c : coefficients_) {
        if (c != 0.0) return false;
    }
    return true;
}

PulseShape build_pulse_family(PulseFamily family, std::vector<double> coefficients, double period, int harmonic) {
    return PulseShape(family, std::move(coefficients), period, harmonic);
}

PulseShape amplifying_pulse(double lambda, double period) {
    return PulseShape(PulseFamily::exsol2_n, {bessel_gain_parameter(lambda)}, period, 1);
}

MagnusScaleFactors magnus_scale_factors(const PulseShape& pulse) {
    if (pulse.is_zero()) return {};
    const double T = pulse.period();
    const double x = integrate([&](double t) { return std::exp(-pulse.u(t)); }, 0.0, T) / T;
    const double p = integrate([&](double t) { return std::exp(pulse.u(t)); }, 0.0, T) / T;
    return {x, p};
}

QuadraticHamiltonian magnus_first_order(const QuadraticHamiltonian& h, const PulseShape& pulse) {
    if (!h.is_xx_pp_form()) {
        throw InvalidArgument("magnus_first_order: Hamiltonian has x-p cross terms");
    }
    const MagnusScaleFactors s = magnus_scale_factors(pulse);
    Matrix a = h.a_matrix();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i % 2 == 0 && j % 2 == 0) a(i, j) *= s.x_scale;
            if (i % 2 == 1 && j % 2 == 1) a(i, j) *= s.p_scale;
        }
    }
    return QuadraticHamiltonian(a);
}

SecondOrderIntegrals magnus_second_integrals(const PulseShape& pulse) {
    if (pulse.is_zero()) return {};
    const double T = pulse.period();
    SecondOrderIntegrals out;
    out.i1 = integrate([&](double t) { return std::sinh(pulse.u(t)); }, 0.0, T);
    out.i2 = integrate(
        [&](double t1) {
            const double u1 = pulse.u(t1);
            return integrate([&](double t2) { return std::sinh(u1 - pulse.u(t2)); }, 0.0, t1);
        },
        0.0, T);
    return out;
}

Matrix controller_frame(const Matrix& a, double integrated_squeezing) {
    const Eigen::Index dim = a.rows();
    Vector d(dim);
    const double down = std::exp(-integrated_squeezing);
    const double up = std::exp(integrated_squeezing);
    for (Eigen::Index k = 0; k < dim; ++k) d(k) = (k % 2 == 0) ? down : up;
    return d.asDiagonal() * a * d.asDiagonal();
}

SmoothPropagation propagate_smooth(const QuadraticHamiltonian& h, const PulseShape& pulse, std::size_t n_cycles,
                                   std::size_t substeps_per_cycle) {
    if (substeps_per_cycle < kMinSubsteps) {
        throw InvalidArgument("propagate_smooth: need at least " + std::to_string(kMinSubsteps) +
                              " substeps per cycle");
    }
    const SymplecticMatrix coarse = repeat(pulse_cycle(h, pulse, substeps_per_cycle, nullptr), n_cycles);
    const SymplecticMatrix fine = repeat(pulse_cycle(h, pulse, 2 * substeps_per_cycle, nullptr), n_cycles);
    const double change = hs_norm(coarse.matrix() - fine.matrix());
    return SmoothPropagation{coarse, change <= kSubstepConvergence, change};
}

SymplecticMatrix propagate_pulse_modulated(const QuadraticHamiltonian& h, const PulseShape& pulse,
                                           std::size_t n_cycles, std::size_t substeps_per_cycle,
                                           std::span<const double> amplitude) {
    if (substeps_per_cycle < kMinSubsteps) {
        throw InvalidArgument("propagate_pulse_modulated: need at least " + std::to_string(kMinSubsteps) +
                              " substeps per cycle");
    }
    if (amplitude.size() != n_cycles * substeps_per_cycle) {
        throw InvalidArgument("propagate_pulse_modulated: need one amplitude factor per substep");
    }
    SymplecticMatrix total = SymplecticMatrix::identity(h.n_modes());
    for (std::size_t c = 0; c < n_cycles; ++c) {
        total = pulse_cycle(h, pulse, substeps_per_cycle, amplitude.data() + c * substeps_per_cycle) * total;
    }
    return total;
}

}  // namespace hamamp
