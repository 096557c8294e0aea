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

#include "hamamp/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "hamamp/errors.hpp"

namespace hamamp {

namespace {

constexpr double kExpTolerance = 1e-8;
constexpr double kUncertaintyTolerance = 1e-10;

double relative_defect(const Matrix& f) {
    const Matrix omega = symplectic_form(static_cast<std::size_t>(f.rows() / 2));
    const double scale = std::max(1.0, f.squaredNorm());
    return hs_norm(f.transpose() * omega * f - omega) / scale;
}

void require_square_even(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
        throw InvalidArgument(std::string(what) + ": expected a non-empty 2N x 2N matrix, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

}  // namespace

Matrix symplectic_form(std::size_t n_modes) {
    Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

QuadraticHamiltonian::QuadraticHamiltonian(const Matrix& a) {
    require_square_even(a, "QuadraticHamiltonian");
    n_modes_ = static_cast<std::size_t>(a.rows() / 2);
    a_ = 0.5 * (a + a.transpose());
    xx_pp_ = true;
    for (Eigen::Index i = 0; i < a_.rows() && xx_pp_; ++i) {
        for (Eigen::Index j = 0; j < a_.cols(); ++j) {
            if ((i % 2) != (j % 2) && a_(i, j) != 0.0) {
                xx_pp_ = false;
                break;
            }
        }
    }
}

QuadraticHamiltonian QuadraticHamiltonian::from_xx_pp(const Matrix& wx, const Matrix& wp) {
    if (wx.rows() != wx.cols() || wp.rows() != wp.cols() || wx.rows() != wp.rows() || wx.rows() == 0) {
        throw InvalidArgument("from_xx_pp: coefficient matrices must be square, equal-sized and non-empty");
    }
    const Eigen::Index n = wx.rows();
    Matrix a = Matrix::Zero(2 * n, 2 * n);
    // sum_ij w_ij x_i x_j = 1/2 R^T A R with A_{x_i x_j} = w_ij + w_ji.
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            a(2 * i, 2 * j) = wx(i, j) + wx(j, i);
            a(2 * i + 1, 2 * j + 1) = wp(i, j) + wp(j, i);
        }
    }
    return QuadraticHamiltonian(a);
}

QuadraticHamiltonian QuadraticHamiltonian::harmonic(std::size_t n_modes, double omega) {
    if (n_modes == 0) throw InvalidArgument("harmonic: n_modes must be positive");
    return QuadraticHamiltonian(omega * Matrix::Identity(2 * n_modes, 2 * n_modes));
}

Matrix QuadraticHamiltonian::omega_x() const {
    Matrix w(n_modes_, n_modes_);
    for (std::size_t i = 0; i < n_modes_; ++i)
        for (std::size_t j = 0; j < n_modes_; ++j) w(i, j) = 0.5 * a_(2 * i, 2 * j);
    return w;
}

Matrix QuadraticHamiltonian::omega_p() const {
    Matrix w(n_modes_, n_modes_);
    for (std::size_t i = 0; i < n_modes_; ++i)
        for (std::size_t j = 0; j < n_modes_; ++j) w(i, j) = 0.5 * a_(2 * i + 1, 2 * j + 1);
    return w;
}

double QuadraticHamiltonian::max_abs_entry() const { return a_.cwiseAbs().maxCoeff(); }

SymplecticMatrix::SymplecticMatrix(Matrix f, double tolerance) : f_(std::move(f)) {
    require_square_even(f_, "SymplecticMatrix");
    const double defect = relative_defect(f_);
    if (!(defect <= tolerance)) {
        throw NumericalError("matrix is not symplectic: relative defect " + std::to_string(defect));
    }
}

SymplecticMatrix SymplecticMatrix::identity(std::size_t n_modes) {
    return SymplecticMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::inverse() const {
    const Matrix omega = symplectic_form(n_modes());
    return SymplecticMatrix(Matrix(-omega * f_.transpose() * omega), Unchecked{});
}

double SymplecticMatrix::symplectic_defect() const {
    const Matrix omega = symplectic_form(n_modes());
    return hs_norm(f_.transpose() * omega * f_ - omega);
}

SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    if (a.f_.rows() != b.f_.rows()) throw InvalidArgument("SymplecticMatrix product: dimension mismatch");
    return SymplecticMatrix(Matrix(a.f_ * b.f_), SymplecticMatrix::Unchecked{});
}

GaussianState::GaussianState(Vector mean, Matrix covariance)
    : mean_(std::move(mean)), cov_(std::move(covariance)) {
    if (mean_.size() == 0 || mean_.size() % 2 != 0 || cov_.rows() != mean_.size() ||
        cov_.cols() != mean_.size()) {
        throw InvalidArgument("GaussianState: mean must have length 2N and covariance be 2N x 2N");
    }
    if (hs_norm(cov_ - cov_.transpose()) > 1e-12 * std::max(1.0, hs_norm(cov_))) {
        throw InvalidArgument("GaussianState: covariance is not symmetric");
    }
    cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
    const Matrix omega = symplectic_form(n_modes());
    const CMatrix bound = cov_.cast<std::complex<double>>() + std::complex<double>(0.0, 0.5) * omega;
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(bound, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kUncertaintyTolerance) {
        throw InvalidArgument("GaussianState: covariance violates the uncertainty relation");
    }
}

GaussianState GaussianState::vacuum(std::size_t n_modes) {
    if (n_modes == 0) throw InvalidArgument("vacuum: n_modes must be positive");
    return GaussianState(Vector::Zero(2 * n_modes), 0.5 * Matrix::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState GaussianState::coherent(std::complex<double> alpha) {
    return coherent(std::span<const std::complex<double>>(&alpha, 1));
}

GaussianState GaussianState::coherent(std::span<const std::complex<double>> alphas) {
    if (alphas.empty()) throw InvalidArgument("coherent: need at least one mode");
    Vector mean(2 * alphas.size());
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        mean(2 * k) = std::sqrt(2.0) * alphas[k].real();
        mean(2 * k + 1) = std::sqrt(2.0) * alphas[k].imag();
    }
    return GaussianState(std::move(mean), 0.5 * Matrix::Identity(2 * alphas.size(), 2 * alphas.size()));
}

Matrix build_generator(const QuadraticHamiltonian& h) {
    return symplectic_form(h.n_modes()) * h.a_matrix();
}

SymplecticMatrix sympl_exp(const Matrix& g, double t) {
    require_square_even(g, "sympl_exp");
    Matrix f = (g * t).exp();
    try {
        return SymplecticMatrix(std::move(f), kExpTolerance);
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("sympl_exp: ") + e.what() + "; reduce t or rescale the generator");
    }
}

GaussianState evolve_gaussian(const GaussianState& s, const SymplecticMatrix& f) {
    if (s.n_modes() != f.n_modes()) throw InvalidArgument("evolve_gaussian: dimension mismatch");
    const Matrix& m = f.matrix();
    return GaussianState(m * s.mean(), m * s.covariance() * m.transpose());
}

double gaussian_fidelity(const GaussianState& s1, const GaussianState& s2) {
    if (s1.n_modes() != s2.n_modes()) throw InvalidArgument("gaussian_fidelity: dimension mismatch");
    const Matrix sum = s1.covariance() + s2.covariance();
    const Eigen::LDLT<Matrix> ldlt(sum);
    const double det = sum.determinant();
    if (ldlt.info() != Eigen::Success || !(det > 0.0)) {
        throw InvalidArgument("gaussian_fidelity: singular covariance sum");
    }
    const Vector delta = s1.mean() - s2.mean();
    const double quad = delta.dot(ldlt.solve(delta));
    return std::clamp(std::exp(-0.5 * quad) / std::sqrt(det), 0.0, 1.0);
}

Vector symplectic_eigenvalues(const Matrix& covariance) {
    require_square_even(covariance, "symplectic_eigenvalues");
    const std::size_t n = static_cast<std::size_t>(covariance.rows() / 2);
    // i Omega sigma has eigenvalues +-nu_k.
    const CMatrix m = std::complex<double>(0.0, 1.0) * (symplectic_form(n) * covariance).cast<std::complex<double>>();
    const Eigen::ComplexEigenSolver<CMatrix> es(m, false);
    std::vector<double> magnitudes;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) magnitudes.push_back(std::abs(es.eigenvalues()(k).real()));
    std::sort(magnitudes.begin(), magnitudes.end());
    std::vector<double> values;
    for (std::size_t k = 0; k < n; ++k) values.push_back(0.5 * (magnitudes[2 * k] + magnitudes[2 * k + 1]));
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace hamamp
