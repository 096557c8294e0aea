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

/// Sorted, duplicate-free list of mode indices an operation acts on.
using ModeMask = std::vector<std::size_t>;

ModeMask all_modes(std::size_t n_modes);

enum class OperationLabel { squeeze_plus, squeeze_minus, rotate, custom };

std::string_view to_string(OperationLabel label);

/// A Gaussian control unitary v with its phase-space action v^dagger R v = F R.
struct GaussianOperation {
    SymplecticMatrix symplectic;
    OperationLabel label = OperationLabel::custom;
    double r = 0.0;      ///< squeezing parameter (squeezes)
    double angle = 0.0;  ///< squeezing angle theta, or rotation angle phi
    ModeMask mode_mask;

    std::size_t n_modes() const { return symplectic.n_modes(); }
};

/// Operator product a*b (b acts first on states); Heisenberg action F_a F_b.
GaussianOperation compose(const GaussianOperation& a, const GaussianOperation& b);

/// Splits the modes into a system S and an environment E.
class Bipartition {
   public:
    Bipartition(std::size_t n_modes, ModeMask system_modes);

    std::size_t n_modes() const { return n_modes_; }
    const ModeMask& system_modes() const { return system_; }
    const ModeMask& environment_modes() const { return environment_; }
    bool is_system(std::size_t mode) const;

   private:
    std::size_t n_modes_;
    ModeMask system_;
    ModeMask environment_;
};

/// S(theta) = exp(i r/2 [sin(theta)(p^2 - x^2) + cos(theta)(xp + px)]) on
/// every masked mode. theta = 0 gives S(+) (x -> e^-r x), theta = pi gives S(-).
GaussianOperation build_squeeze(std::size_t n_modes, const ModeMask& mask, double r, double theta);

/// prod_i exp(-i phi/2 (x_i^2 + p_i^2)) over the masked modes.
GaussianOperation build_rotation(std::size_t n_modes, const ModeMask& mask, double phi);

/// {S(+), S(-)} on the masked modes.
std::vector<GaussianOperation> build_ha_set(std::size_t n_modes, const ModeMask& mask, double r);

/// {R_S(pi) S_S(+), S_S(+), R_S(pi) S_S(-), S_S(-)}: amplifies the system
/// and decouples it from the environment.
std::vector<GaussianOperation> build_ha_dd_set(const Bipartition& partition, double r);

/// Average (1/|V|) sum_v v^dagger H v, i.e. A -> (1/|V|) sum_v F_v^T A F_v.
QuadraticHamiltonian average_map(const QuadraticHamiltonian& h, std::span<const GaussianOperation> ops);

/// Heisenberg action of (Lambda_{t/n})^n. Within one cycle every v in `ops`
/// contributes v^dagger exp(-i H t/(|V| n)) v; ops.front() acts first.
SymplecticMatrix trotter_sequence(const QuadraticHamiltonian& h, std::span<const GaussianOperation> ops,
                                  double t, std::size_t n);

/// ||trotter_sequence(h, ops, t, n) - exp(Omega M(A) t)||_HS.
double amplification_error(const QuadraticHamiltonian& h, std::span<const GaussianOperation> ops, double t,
                           std::size_t n);

/// Trotter error bound for the two-element squeeze set:
///   (t dt w^2 N^2 / 4) |sinh 4r| exp(t w N sqrt(cosh(4r)/2)),
/// with dt the cycle length t/n and w = max |A_ij|. Returns +inf on overflow.
double error_bound(double omega_max, std::size_t n_modes, double t, double dt, double r);

}  // namespace hamamp
