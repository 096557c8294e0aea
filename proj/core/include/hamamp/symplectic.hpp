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

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace hamamp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance of the symplectic condition checked on construction, relative
/// to max(1, ||F||^2).
inline constexpr double kSymplecticTolerance = 1e-10;

/// Block-diagonal symplectic form with 2x2 blocks [[0, 1], [-1, 0]] in the
/// ordering (x1, p1, ..., xN, pN).
Matrix symplectic_form(std::size_t n_modes);

/// Hilbert-Schmidt (Frobenius) norm sqrt(tr(M^dagger M)).
template <typename Derived>
double hs_norm(const Eigen::MatrixBase<Derived>& m) {
    return m.norm();
}

/// H = 1/2 R^T A R with R = (x1, p1, ..., xN, pN). A is symmetrized on
/// construction.
class QuadraticHamiltonian {
   public:
    explicit QuadraticHamiltonian(const Matrix& a);

    /// H = sum_ij (wx_ij x_i x_j + wp_ij p_i p_j); wx and wp are symmetrized.
    static QuadraticHamiltonian from_xx_pp(const Matrix& wx, const Matrix& wp);

    /// N uncoupled oscillators (omega/2)(x^2 + p^2).
    static QuadraticHamiltonian harmonic(std::size_t n_modes, double omega);

    std::size_t n_modes() const { return n_modes_; }
    const Matrix& a_matrix() const { return a_; }

    /// True when no entry couples an x-coordinate to a p-coordinate.
    bool is_xx_pp_form() const { return xx_pp_; }

    /// Coefficients wx_ij, wp_ij of the x_i x_j and p_i p_j terms.
    Matrix omega_x() const;
    Matrix omega_p() const;

    /// Largest |A_ij|.
    double max_abs_entry() const;

   private:
    std::size_t n_modes_;
    Matrix a_;
    bool xx_pp_;
};

/// Phase-space matrix of a Gaussian unitary v acting as v^dagger R v = F R.
class SymplecticMatrix {
   public:
    /// Checks F^T Omega F = Omega to `tolerance` (relative to max(1, ||F||^2))
    /// and throws NumericalError otherwise.
    explicit SymplecticMatrix(Matrix f, double tolerance = kSymplecticTolerance);

    static SymplecticMatrix identity(std::size_t n_modes);

    std::size_t n_modes() const { return static_cast<std::size_t>(f_.rows() / 2); }
    const Matrix& matrix() const { return f_; }

    /// F^-1 = -Omega F^T Omega.
    SymplecticMatrix inverse() const;

    /// ||F^T Omega F - Omega||_HS.
    double symplectic_defect() const;

    friend SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b);

   private:
    struct Unchecked {};
    SymplecticMatrix(Matrix f, Unchecked) : f_(std::move(f)) {}

    Matrix f_;
};

/// Mean vector and covariance of an N-mode Gaussian state, with
/// x = (a + a^dagger)/sqrt(2) so that the vacuum covariance is I/2.
class GaussianState {
   public:
    GaussianState(Vector mean, Matrix covariance);

    static GaussianState vacuum(std::size_t n_modes);
    static GaussianState coherent(std::complex<double> alpha);
    static GaussianState coherent(std::span<const std::complex<double>> alphas);

    std::size_t n_modes() const { return static_cast<std::size_t>(mean_.size() / 2); }
    const Vector& mean() const { return mean_; }
    const Matrix& covariance() const { return cov_; }

   private:
    Vector mean_;
    Matrix cov_;
};

/// Generator G = Omega A: exp(G t) is the Heisenberg action of exp(-i H t), so
/// a single oscillator evolves as x(t) = x cos(wt) + p sin(wt).
Matrix build_generator(const QuadraticHamiltonian& h);

/// exp(g t), checked for symplecticity to 1e-8 (throws NumericalError).
SymplecticMatrix sympl_exp(const Matrix& g, double t);

/// mean -> F mean, covariance -> F sigma F^T.
GaussianState evolve_gaussian(const GaussianState& s, const SymplecticMatrix& f);

/// |<psi1|psi2>|^2 for pure Gaussian states.
double gaussian_fidelity(const GaussianState& s1, const GaussianState& s2);

/// Symplectic eigenvalues of a covariance matrix (1/2 for every mode of a
/// pure state), ascending.
Vector symplectic_eigenvalues(const Matrix& covariance);

}  // namespace hamamp
