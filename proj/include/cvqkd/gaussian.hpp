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

// Gaussian-state linear algebra in shot-noise units (vacuum covariance = I).
//
// Quadratures are ordered (x1, p1, x2, p2, ..., xn, pn). Every function here is
// a pure function of its arguments.

#ifndef CVQKD_GAUSSIAN_HPP
#define CVQKD_GAUSSIAN_HPP

#include <optional>
#include <vector>

#include <Eigen/Core>

namespace cvqkd {

using Matrix = Eigen::MatrixXd;

enum class Quadrature { x, p };

/// Lower tolerance on symplectic eigenvalues below which a state is unphysical.
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Real symmetric 2n x 2n matrix of quadrature second moments.
///
/// Construction rejects odd dimensions and matrices that are not symmetric to
/// 1e-12 relative tolerance; the stored matrix is exactly symmetrized.
/// Physicality is not enforced at construction, see `is_physical()`.
class CovarianceMatrix {
 public:
    explicit CovarianceMatrix(Matrix entries);

    static CovarianceMatrix vacuum(int n_modes);
    static CovarianceMatrix thermal(double variance);

    int n_modes() const noexcept { return static_cast<int>(m_.rows() / 2); }
    const Matrix& matrix() const noexcept { return m_; }
    double operator()(int row, int col) const { return m_(row, col); }

    /// 2x2 block coupling mode i to mode j.
    Eigen::Matrix2d block(int i, int j) const;

    /// Reduced state on `modes`, in the given order.
    CovarianceMatrix marginal(const std::vector<int>& modes) const;

    bool is_physical(double tolerance = kPhysicalityTolerance) const;

 private:
    Matrix m_;
};

/// Block-diagonal composition of two independent systems.
CovarianceMatrix direct_sum(const CovarianceMatrix& first, const CovarianceMatrix& second);

/// Block-diagonal form with [[0, 1], [-1, 0]] blocks.
Matrix symplectic_form(int n_modes);

/// One Gaussian channel: transmittance in (0, 1], excess noise referred to the input.
struct ChannelParams {
    double transmittance = 1.0;
    double excess_noise = 0.0;

    void validate() const;
    bool operator==(const ChannelParams&) const = default;
};

/// Two-mode squeezed vacuum of variance V >= 1.
CovarianceMatrix tmsv_covariance(double variance);

/// Entangling-cloner attack on `mode`: diagonal block D -> T (D - I) + T eps I + I,
/// couplings to other modes scaled by sqrt(T).
CovarianceMatrix entangling_cloner_channel(const CovarianceMatrix& cov, int mode,
                                           const ChannelParams& channel);

/// Beamsplitter of transmittance tau acting on modes (i, j):
///   x_i' =  sqrt(tau) x_i + sqrt(1 - tau) x_j
///   x_j' = -sqrt(1 - tau) x_i + sqrt(tau) x_j   (same for p)
CovarianceMatrix beamsplitter(const CovarianceMatrix& cov, int i, int j, double tau);

/// Conditional covariance of the other modes after homodyning `quadrature` of `mode`.
CovarianceMatrix homodyne_condition(const CovarianceMatrix& cov, int mode,
                                    Quadrature quadrature);

/// Conditional covariance of the other modes after heterodyning `mode`
/// (both quadratures, one added vacuum unit).
CovarianceMatrix heterodyne_condition(const CovarianceMatrix& cov, int mode);

/// Conditional covariance of the other modes given only one quadrature of a
/// heterodyne record on `mode`. This is the conditioning that applies after
/// sifting when the peer measured a single quadrature.
CovarianceMatrix heterodyne_quadrature_condition(const CovarianceMatrix& cov, int mode,
                                                 Quadrature quadrature);

/// Symplectic spectrum, n values in descending order.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cov);

/// G(x) = (x + 1) log2(x + 1) - x log2 x, with G(0) = 0.
double entropy_g(double x);

/// Von Neumann entropy in bits. Throws PhysicalityError for unphysical input.
double von_neumann_entropy(const CovarianceMatrix& cov);

/// Parameters of a two-mode matrix [[a I, c Z], [c Z, b I]], Z = diag(1, -1).
struct NormalForm {
    double a = 1.0;
    double b = 1.0;
    double c = 0.0;

    CovarianceMatrix covariance() const;
};

/// Extracts (a, b, c) when `cov` is a two-mode normal form within `tolerance`.
std::optional<NormalForm> normal_form(const CovarianceMatrix& cov, double tolerance = 1e-9);

}  // namespace cvqkd

#endif  // CVQKD_GAUSSIAN_HPP
