// Copyright 2026 The cvqkd Authors
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

#include "cvqkd/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cvqkd/error.hpp"

namespace cvqkd {
namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kDegenerateVariance = 1e-12;

void check_mode(const CovarianceMatrix& cov, int mode, const char* what) {
    if (mode < 0 || mode >= cov.n_modes()) {
        throw DomainError(std::string(what) + ": mode index " + std::to_string(mode) +
                          " out of range for " + std::to_string(cov.n_modes()) + " modes");
    }
}

std::vector<int> other_quadratures(int n_modes, int mode) {
    std::vector<int> idx;
    idx.reserve(2 * n_modes - 2);
    for (int k = 0; k < n_modes; ++k) {
        if (k == mode) continue;
        idx.push_back(2 * k);
        idx.push_back(2 * k + 1);
    }
    return idx;
}

// Schur complement gamma_rest - S W S^T where S couples the remaining
// quadratures to the measured ones and W is the (pseudo-)inverse weight.
CovarianceMatrix condition(const CovarianceMatrix& cov, int mode,
                           const std::vector<int>& measured, const Matrix& weight) {
    const Matrix& m = cov.matrix();
    const std::vector<int> rest = other_quadratures(cov.n_modes(), mode);
    const auto r = static_cast<Eigen::Index>(rest.size());
    const auto k = static_cast<Eigen::Index>(measured.size());
    Matrix rest_block(r, r);
    Matrix coupling(r, k);
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) rest_block(i, j) = m(rest[i], rest[j]);
        for (Eigen::Index j = 0; j < k; ++j) coupling(i, j) = m(rest[i], measured[j]);
    }
    return CovarianceMatrix(rest_block - coupling * weight * coupling.transpose());
}

int quadrature_index(int mode, Quadrature q) { return 2 * mode + (q == Quadrature::x ? 0 : 1); }

}  // namespace

CovarianceMatrix::CovarianceMatrix(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols() || m_.rows() % 2 != 0) {
        throw DomainError("covariance matrix must be square with even, nonzero dimension");
    }
    if (!m_.allFinite()) throw DomainError("covariance matrix has non-finite entries");
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
        throw DomainError("covariance matrix is not symmetric");
    }
    m_ = 0.5 * (m_ + m_.transpose()).eval();
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
    if (n_modes <= 0) throw DomainError("vacuum: n_modes must be positive");
    return CovarianceMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

CovarianceMatrix CovarianceMatrix::thermal(double variance) {
    if (!(variance >= 1.0)) throw DomainError("thermal: variance must be >= 1");
    return CovarianceMatrix(variance * Matrix::Identity(2, 2));
}

Eigen::Matrix2d CovarianceMatrix::block(int i, int j) const {
    check_mode(*this, i, "block");
    check_mode(*this, j, "block");
    return m_.block<2, 2>(2 * i, 2 * j);
}

CovarianceMatrix CovarianceMatrix::marginal(const std::vector<int>& modes) const {
    if (modes.empty()) throw DomainError("marginal: empty mode list");
    const auto n = static_cast<Eigen::Index>(modes.size());
    Matrix out(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        check_mode(*this, modes[i], "marginal");
        for (Eigen::Index j = 0; j < n; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = m_.block<2, 2>(2 * modes[i], 2 * modes[j]);
        }
    }
    return CovarianceMatrix(std::move(out));
}

bool CovarianceMatrix::is_physical(double tolerance) const {
    const std::vector<double> nu = symplectic_eigenvalues(*this);
    // Positive definiteness is part of physicality; |eig(i Omega g)| alone
    // cannot detect e.g. -I.
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0) return false;
    return nu.back() >= 1.0 - tolerance;
}

CovarianceMatrix direct_sum(const CovarianceMatrix& first, const CovarianceMatrix& second) {
    const Eigen::Index n1 = first.matrix().rows();
    const Eigen::Index n2 = second.matrix().rows();
    Matrix out = Matrix::Zero(n1 + n2, n1 + n2);
    out.topLeftCorner(n1, n1) = first.matrix();
    out.bottomRightCorner(n2, n2) = second.matrix();
    return CovarianceMatrix(std::move(out));
}

Matrix symplectic_form(int n_modes) {
    if (n_modes <= 0) throw DomainError("symplectic_form: n_modes must be positive");
    Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

void ChannelParams::validate() const {
    if (!(transmittance > 0.0 && transmittance <= 1.0)) {
        throw DomainError("channel transmittance must lie in (0, 1], got " +
                          std::to_string(transmittance));
    }
    if (!(excess_noise >= 0.0) || !std::isfinite(excess_noise)) {
        throw DomainError("channel excess noise must be >= 0, got " +
                          std::to_string(excess_noise));
    }
}

CovarianceMatrix tmsv_covariance(double variance) {
    if (!(variance >= 1.0) || !std::isfinite(variance)) {
        throw DomainError("tmsv_covariance: variance must be >= 1, got " + std::to_string(variance));
    }
    const double c = std::sqrt(variance * variance - 1.0);
    Matrix m(4, 4);
    m << variance, 0, c, 0,
         0, variance, 0, -c,
         c, 0, variance, 0,
         0, -c, 0, variance;
    return CovarianceMatrix(std::move(m));
}

CovarianceMatrix entangling_cloner_channel(const CovarianceMatrix& cov, int mode,
                                           const ChannelParams& channel) {
    check_mode(cov, mode, "entangling_cloner_channel");
    channel.validate();
    const double t = channel.transmittance;
    const double root_t = std::sqrt(t);
    Matrix m = cov.matrix();
    const Eigen::Index q = 2 * mode;
    m.middleRows(q, 2) *= root_t;
    m.middleCols(q, 2) *= root_t;
    // The two scalings above multiplied the diagonal block by T already.
    m.block<2, 2>(q, q) = cov.matrix().block<2, 2>(q, q) * t +
                          (1.0 - t + t * channel.excess_noise) * Eigen::Matrix2d::Identity();
    return CovarianceMatrix(std::move(m));
}

CovarianceMatrix beamsplitter(const CovarianceMatrix& cov, int i, int j, double tau) {
    check_mode(cov, i, "beamsplitter");
    check_mode(cov, j, "beamsplitter");
    if (i == j) throw DomainError("beamsplitter: modes must differ");
    if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("beamsplitter: tau must lie in [0, 1]");
    const double t = std::sqrt(tau);
    const double r = std::sqrt(1.0 - tau);
    const Eigen::Index dim = cov.matrix().rows();
    Matrix s = Matrix::Identity(dim, dim);
    for (int q = 0; q < 2; ++q) {
        s(2 * i + q, 2 * i + q) = t;
        s(2 * i + q, 2 * j + q) = r;
        s(2 * j + q, 2 * i + q) = -r;
        s(2 * j + q, 2 * j + q) = t;
    }
    return CovarianceMatrix(s * cov.matrix() * s.transpose());
}

CovarianceMatrix homodyne_condition(const CovarianceMatrix& cov, int mode, Quadrature quadrature) {
    check_mode(cov, mode, "homodyne_condition");
    if (cov.n_modes() < 2) throw DomainError("homodyne_condition: need at least two modes");
    const int q = quadrature_index(mode, quadrature);
    const double v = cov(q, q);
    if (!(v >= kDegenerateVariance)) {
        throw DegenerateMeasurementError("homodyne_condition: measured variance is singular");
    }
    // Pseudo-inverse of Pi gamma_mode Pi restricted to the measured quadrature.
    return condition(cov, mode, {q}, Matrix::Constant(1, 1, 1.0 / v));
}

CovarianceMatrix heterodyne_condition(const CovarianceMatrix& cov, int mode) {
    check_mode(cov, mode, "heterodyne_condition");
    if (cov.n_modes() < 2) throw DomainError("heterodyne_condition: need at least two modes");
    const Eigen::Matrix2d shifted = cov.block(mode, mode) + Eigen::Matrix2d::Identity();
    const Matrix weight = shifted.inverse();
    return condition(cov, mode, {2 * mode, 2 * mode + 1}, weight);
}

CovarianceMatrix heterodyne_quadrature_condition(const CovarianceMatrix& cov, int mode,
                                                 Quadrature quadrature) {
    check_mode(cov, mode, "heterodyne_quadrature_condition");
    if (cov.n_modes() < 2) {
        throw DomainError("heterodyne_quadrature_condition: need at least two modes");
    }
    const int q = quadrature_index(mode, quadrature);
    return condition(cov, mode, {q}, Matrix::Constant(1, 1, 1.0 / (cov(q, q) + 1.0)));
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cov) {
    using Complex = std::complex<double>;
    const int n = cov.n_modes();
    const Eigen::MatrixXcd a =
        Complex(0.0, 1.0) * (symplectic_form(n) * cov.matrix()).cast<Complex>();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
    if (solver.info() != Eigen::Success) {
        throw Error("symplectic_eigenvalues: eigenvalue solver did not converge");
    }
    std::vector<double> mags;
    mags.reserve(2 * n);
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        mags.push_back(std::abs(solver.eigenvalues()(k)));
    }
    std::sort(mags.begin(), mags.end(), std::greater<>());
    std::vector<double> nu;
    nu.reserve(n);
    for (int k = 0; k < n; ++k) {
        double v = 0.5 * (mags[2 * k] + mags[2 * k + 1]);
        if (v < 1.0 && v >= 1.0 - kPhysicalityTolerance) v = 1.0;
        nu.push_back(v);
    }
    return nu;
}

double entropy_g(double x) {
    if (x <= 0.0) return 0.0;
    return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

double von_neumann_entropy(const CovarianceMatrix& cov) {
    double s = 0.0;
    for (double nu : symplectic_eigenvalues(cov)) {
        if (nu < 1.0 - kPhysicalityTolerance) {
            throw PhysicalityError("von_neumann_entropy: symplectic eigenvalue " +
                                   std::to_string(nu) + " < 1");
        }
        s += entropy_g((std::max(nu, 1.0) - 1.0) / 2.0);
    }
    return s;
}

CovarianceMatrix NormalForm::covariance() const {
    Matrix m(4, 4);
    m << a, 0, c, 0,
         0, a, 0, -c,
         c, 0, b, 0,
         0, -c, 0, b;
    return CovarianceMatrix(std::move(m));
}

std::optional<NormalForm> normal_form(const CovarianceMatrix& cov, double tolerance) {
    if (cov.n_modes() != 2) return std::nullopt;
    const Matrix& m = cov.matrix();
    const NormalForm nf{m(0, 0), m(2, 2), m(0, 2)};
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - nf.covariance().matrix()).cwiseAbs().maxCoeff() > tolerance * scale) {
        return std::nullopt;
    }
    return nf;
}

}  // namespace cvqkd
