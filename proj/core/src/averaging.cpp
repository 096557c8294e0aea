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

#include "hamamp/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hamamp/errors.hpp"

namespace hamamp {

namespace {

ModeMask normalized(std::size_t n_modes, ModeMask mask) {
    std::sort(mask.begin(), mask.end());
    mask.erase(std::unique(mask.begin(), mask.end()), mask.end());
    if (!mask.empty() && mask.back() >= n_modes) {
        throw InvalidArgument("mode index " + std::to_string(mask.back()) + " out of range for " +
                              std::to_string(n_modes) + " modes");
    }
    return mask;
}

// Exponentiates the quadratic form 1/2 R^T B R placed on every masked mode,
// returning the Heisenberg action of exp(-i H_B).
SymplecticMatrix local_gaussian(std::size_t n_modes, const ModeMask& mask, const Eigen::Matrix2d& block) {
    Matrix a = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (const std::size_t k : mask) a.block<2, 2>(2 * k, 2 * k) = block;
    return sympl_exp(build_generator(QuadraticHamiltonian(a)), 1.0);
}

void require_ops(std::size_t n_modes, std::span<const GaussianOperation> ops, const char* what) {
    if (ops.empty()) throw InvalidArgument(std::string(what) + ": operation set must not be empty");
    for (const auto& op : ops) {
        if (op.n_modes() != n_modes) throw InvalidArgument(std::string(what) + ": dimension mismatch");
    }
}

}  // namespace

ModeMask all_modes(std::size_t n_modes) {
    ModeMask mask(n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) mask[k] = k;
    return mask;
}

std::string_view to_string(OperationLabel label) {
    switch (label) {
        case OperationLabel::squeeze_plus:
            return "squeeze_plus";
        case OperationLabel::squeeze_minus:
            return "squeeze_minus";
        case OperationLabel::rotate:
            return "rotate";
        case OperationLabel::custom:
            return "custom";
    }
    return "custom";
}

GaussianOperation compose(const GaussianOperation& a, const GaussianOperation& b) {
    if (a.n_modes() != b.n_modes()) throw InvalidArgument("compose: dimension mismatch");
    ModeMask mask = a.mode_mask;
    mask.insert(mask.end(), b.mode_mask.begin(), b.mode_mask.end());
    return GaussianOperation{a.symplectic * b.symplectic, OperationLabel::custom, 0.0, 0.0,
                             normalized(a.n_modes(), std::move(mask))};
}

Bipartition::Bipartition(std::size_t n_modes, ModeMask system_modes)
    : n_modes_(n_modes), system_(normalized(n_modes, std::move(system_modes))) {
    if (n_modes == 0) throw InvalidArgument("Bipartition: n_modes must be positive");
    for (std::size_t k = 0; k < n_modes; ++k) {
        if (!std::binary_search(system_.begin(), system_.end(), k)) environment_.push_back(k);
    }
}

bool Bipartition::is_system(std::size_t mode) const {
    return std::binary_search(system_.begin(), system_.end(), mode);
}

GaussianOperation build_squeeze(std::size_t n_modes, const ModeMask& mask, double r, double theta) {
    if (n_modes == 0) throw InvalidArgument("build_squeeze: n_modes must be positive");
    ModeMask m = normalized(n_modes, mask);
    // exp(i r/2 [...]) = exp(-i 1/2 R^T B R) with this B.
    Eigen::Matrix2d block;
    block << std::sin(theta), -std::cos(theta), -std::cos(theta), -std::sin(theta);
    block *= r;
    OperationLabel label = OperationLabel::custom;
    if (theta == 0.0) label = OperationLabel::squeeze_plus;
    if (theta == std::numbers::pi) label = OperationLabel::squeeze_minus;
    return GaussianOperation{local_gaussian(n_modes, m, block), label, r, theta, std::move(m)};
}

GaussianOperation build_rotation(std::size_t n_modes, const ModeMask& mask, double phi) {
    if (n_modes == 0) throw InvalidArgument("build_rotation: n_modes must be positive");
    ModeMask m = normalized(n_modes, mask);
    const Eigen::Matrix2d block = phi * Eigen::Matrix2d::Identity();
    return GaussianOperation{local_gaussian(n_modes, m, block), OperationLabel::rotate, 0.0, phi, std::move(m)};
}

std::vector<GaussianOperation> build_ha_set(std::size_t n_modes, const ModeMask& mask, double r) {
    return {build_squeeze(n_modes, mask, r, 0.0), build_squeeze(n_modes, mask, r, std::numbers::pi)};
}

std::vector<GaussianOperation> build_ha_dd_set(const Bipartition& partition, double r) {
    const std::size_t n = partition.n_modes();
    const ModeMask& s = partition.system_modes();
    const GaussianOperation plus = build_squeeze(n, s, r, 0.0);
    const GaussianOperation minus = build_squeeze(n, s, r, std::numbers::pi);
    const GaussianOperation flip = build_rotation(n, s, std::numbers::pi);
    return {compose(flip, plus), plus, compose(flip, minus), minus};
}

QuadraticHamiltonian average_map(const QuadraticHamiltonian& h, std::span<const GaussianOperation> ops) {
    require_ops(h.n_modes(), ops, "average_map");
    Matrix sum = Matrix::Zero(h.a_matrix().rows(), h.a_matrix().cols());
    for (const auto& op : ops) {
        const Matrix& f = op.symplectic.matrix();
        sum.noalias() += f.transpose() * h.a_matrix() * f;
    }
    return QuadraticHamiltonian(sum / static_cast<double>(ops.size()));
}

SymplecticMatrix trotter_sequence(const QuadraticHamiltonian& h, std::span<const GaussianOperation> ops,
                                  double t, std::size_t n) {
    require_ops(h.n_modes(), ops, "trotter_sequence");
    if (n == 0) throw InvalidArgument("trotter_sequence: n must be at least 1");
    if (!(t >= 0.0)) throw InvalidArgument("trotter_sequence: t must be non-negative");

    const double slot = t / (static_cast<double>(ops.size()) * static_cast<double>(n));
    const SymplecticMatrix free = sympl_exp(build_generator(h), slot);
    SymplecticMatrix cycle = SymplecticMatrix::identity(h.n_modes());
    for (const auto& op : ops) {
        cycle = op.symplectic.inverse() * free * op.symplectic * cycle;
    }
    SymplecticMatrix total = cycle;
    for (std::size_t k = 1; k < n; ++k) total = cycle * total;
    return total;
}

double amplification_error(const QuadraticHamiltonian& h, std::span<const GaussianOperation> ops, double t,
                           std::size_t n) {
    const SymplecticMatrix target = sympl_exp(build_generator(average_map(h, ops)), t);
    return hs_norm(trotter_sequence(h, ops, t, n).matrix() - target.matrix());
}

double error_bound(double omega_max, std::size_t n_modes, double t, double dt, double r) {
    if (!(omega_max >= 0.0) || !(t >= 0.0) || !(dt >= 0.0)) {
        throw InvalidArgument("error_bound: omega_max, t and dt must be non-negative");
    }
    const double n = static_cast<double>(n_modes);
    const double prefactor = t * dt * omega_max * omega_max * n * n / 4.0 * std::abs(std::sinh(4.0 * r));
    if (prefactor == 0.0) return 0.0;
    const double exponent = t * omega_max * n * std::sqrt(std::cosh(4.0 * r) / 2.0);
    const double value = prefactor * std::exp(exponent);
    return std::isfinite(value) ? value : std::numeric_limits<double>::infinity();
}

}  // namespace hamamp
