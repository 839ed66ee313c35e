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

#include "cvqkd/nla.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "cvqkd/error.hpp"

namespace cvqkd {
namespace {

constexpr double kNormalFormTolerance = 1e-9;
constexpr double kBoundarySlack = 1e-12;

Eigen::Matrix4d normal_form_matrix(double a, double b, double c) {
    Eigen::Matrix4d m;
    m << a, 0, c, 0,
         0, a, 0, -c,
         c, 0, b, 0,
         0, -c, 0, b;
    return m;
}

// One side's factors of the equivalent-system formulas. `k` is g^2 - 1.
struct SideTerms {
    double numerator;    // k (eps - 2) T - 2
    double denominator;  // k eps T - 2
    double eta;
    double eps;
};

SideTerms side_terms(const ChannelParams& ch, double gain) {
    const double t = ch.transmittance;
    const double e = ch.excess_noise;
    const double k = gain * gain - 1.0;
    SideTerms s{};
    s.numerator = k * (e - 2.0) * t - 2.0;
    s.denominator = k * e * t - 2.0;
    s.eta = 4.0 * t * gain * gain / (t * k * (k * (e - 2.0) * e * t - 4.0 * (e - 1.0)) + 4.0);
    s.eps = e - 0.5 * k * (e - 2.0) * e * t;
    return s;
}

}  // namespace

void NlaConfig::validate() const {
    if (!(g1 >= 1.0) || !std::isfinite(g1) || !(g2 >= 1.0) || !std::isfinite(g2)) {
        throw DomainError("NLA gains must be finite and >= 1 (g1=" + std::to_string(g1) +
                          ", g2=" + std::to_string(g2) + ")");
    }
}

double EquivalentSystem::variance() const {
    return (1.0 + varsigma * varsigma) / (1.0 - varsigma * varsigma);
}

double epr_parameter(double variance) {
    if (!(variance >= 1.0)) throw DomainError("epr_parameter: variance must be >= 1");
    return std::sqrt((variance - 1.0) / (variance + 1.0));
}

double epr_variance(double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) throw DomainError("epr_variance: lambda must lie in [0, 1)");
    return (1.0 + lambda * lambda) / (1.0 - lambda * lambda);
}

Eigen::Matrix4d husimi_gamma(const CovarianceMatrix& cov) {
    if (cov.n_modes() != 2) throw DomainError("husimi_gamma: expected a two-mode state");
    const Eigen::Matrix4d shifted = cov.matrix() + Eigen::Matrix4d::Identity();
    return shifted.inverse();
}

Eigen::Matrix4d apply_nla_gamma(const Eigen::Matrix4d& gamma, const NlaConfig& nla) {
    nla.validate();
    const double a = gamma(0, 0);
    const double b = gamma(2, 2);
    const double c = gamma(0, 2);
    const double scale = std::max(1.0, gamma.cwiseAbs().maxCoeff());
    if ((gamma - normal_form_matrix(a, b, c)).cwiseAbs().maxCoeff() > kNormalFormTolerance * scale) {
        throw NormalFormError("apply_nla_gamma: Husimi matrix is not in normal form");
    }
    const double g1s = nla.g1 * nla.g1;
    const double g2s = nla.g2 * nla.g2;
    return normal_form_matrix(g1s * (a - 0.5) + 0.5, g2s * (b - 0.5) + 0.5, nla.g1 * nla.g2 * c);
}

CovarianceMatrix cov_after_nla(const CovarianceMatrix& cov, const NlaConfig& nla) {
    if (!normal_form(cov)) throw NormalFormError("cov_after_nla: covariance is not in normal form");
    const Eigen::Matrix4d amplified = apply_nla_gamma(husimi_gamma(cov), nla);
    Eigen::LLT<Eigen::Matrix4d> llt(amplified);
    if (llt.info() != Eigen::Success) {
        throw UnphysicalAmplificationError(
            "cov_after_nla: gains (" + std::to_string(nla.g1) + ", " + std::to_string(nla.g2) +
            ") leave no valid amplified state; see the g_max bound");
    }
    CovarianceMatrix out(Matrix(llt.solve(Eigen::Matrix4d::Identity()) - Eigen::Matrix4d::Identity()));
    if (!out.is_physical()) {
        throw UnphysicalAmplificationError(
            "cov_after_nla: amplified covariance violates the uncertainty relation; see the g_max "
            "bound");
    }
    return out;
}

EquivalentSystem equivalent_params(double lambda, const ChannelParams& channel,
                                   const NlaConfig& nla) {
    return equivalent_params(lambda, channel, channel, nla);
}

EquivalentSystem equivalent_params(double lambda, const ChannelParams& channel_alice,
                                   const ChannelParams& channel_bob, const NlaConfig& nla) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw DomainError("equivalent_params: lambda must lie in [0, 1)");
    }
    channel_alice.validate();
    channel_bob.validate();
    nla.validate();
    const SideTerms alice = side_terms(channel_alice, nla.g1);
    const SideTerms bob = side_terms(channel_bob, nla.g2);

    EquivalentSystem eq;
    const double ratio =
        (alice.numerator * bob.numerator) / (alice.denominator * bob.denominator);
    eq.varsigma = ratio >= 0.0 ? lambda * std::sqrt(ratio) : std::numeric_limits<double>::quiet_NaN();
    eq.eta1 = alice.eta;
    eq.eta2 = bob.eta;
    eq.eps1 = alice.eps;
    eq.eps2 = bob.eps;
    eq.generalized = !(channel_alice == channel_bob);
    eq.physical = eq.varsigma >= 0.0 && eq.varsigma < 1.0 &&
                  eq.eta1 >= 0.0 && eq.eta1 <= 1.0 + kBoundarySlack &&
                  eq.eta2 >= 0.0 && eq.eta2 <= 1.0 + kBoundarySlack &&
                  eq.eps1 >= -kBoundarySlack && eq.eps2 >= -kBoundarySlack;
    return eq;
}

double lambda_bound(const ChannelParams& channel, const NlaConfig& nla) {
    return lambda_bound(channel, channel, nla);
}

double lambda_bound(const ChannelParams& channel_alice, const ChannelParams& channel_bob,
                    const NlaConfig& nla) {
    channel_alice.validate();
    channel_bob.validate();
    nla.validate();
    const SideTerms alice = side_terms(channel_alice, nla.g1);
    const SideTerms bob = side_terms(channel_bob, nla.g2);
    const double ra = alice.denominator / alice.numerator;
    const double rb = bob.denominator / bob.numerator;
    if (!(ra >= 0.0) || !(rb >= 0.0)) return 0.0;
    return std::sqrt(ra) * std::sqrt(rb);
}

double g_max(const ChannelParams& channel) {
    channel.validate();
    const double t = channel.transmittance;
    const double e = channel.excess_noise;
    if (e <= 0.0 || e >= 2.0) return std::numeric_limits<double>::infinity();
    const double u = e * (t * (e - 2.0) + 2.0);
    const double g2 = (u - 2.0 * std::sqrt(u)) / (t * e * (e - 2.0));
    return std::sqrt(g2);
}

SuccessProbability success_probability(const NlaConfig& nla, double n_alice,
                                       double n_bob_given_alice) {
    nla.validate();
    if (!(n_alice >= 0.0) || !(n_bob_given_alice >= 0.0)) {
        throw DomainError("success_probability: photon numbers must be >= 0");
    }
    SuccessProbability p;
    p.p_alice = std::pow(nla.g1, -2.0 * n_alice);
    p.p_bob_given_alice = std::pow(nla.g2, -2.0 * n_bob_given_alice);
    p.p_total = p.p_alice * p.p_bob_given_alice;
    return p;
}

}  // namespace cvqkd
