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

// Noiseless linear amplification of two-mode Gaussian states.
//
// An ideal NLA of gain g acting on each arm of a normal-form state is modelled
// through the Husimi matrix Gamma = (gamma + I)^-1, whose blocks transform as
//
//   A -> g1^2 (A - 1/2) + 1/2,   B -> g2^2 (B - 1/2) + 1/2,   C -> g1 g2 C.
//
// For an EPR source sent through two entangling-cloner channels the amplified
// state coincides with an unamplified one with an equivalent EPR parameter,
// equivalent transmittances and equivalent excess noises; `equivalent_params`
// returns those in closed form.

#ifndef CVQKD_NLA_HPP
#define CVQKD_NLA_HPP

#include <Eigen/Core>

#include "cvqkd/gaussian.hpp"

namespace cvqkd {

/// Amplifier gains on Alice's (g1) and Bob's (g2) side. g = 1 means no amplifier.
struct NlaConfig {
    double g1 = 1.0;
    double g2 = 1.0;

    void validate() const;
    bool active() const noexcept { return g1 > 1.0 || g2 > 1.0; }
    bool operator==(const NlaConfig&) const = default;
};

/// Unamplified system reproducing the post-NLA covariance.
struct EquivalentSystem {
    double varsigma = 0.0;  // equivalent EPR parameter
    double eta1 = 1.0;
    double eta2 = 1.0;
    double eps1 = 0.0;
    double eps2 = 0.0;
    bool physical = true;
    bool generalized = false;  // asymmetric channels: per-side generalization

    /// V' = (1 + s^2) / (1 - s^2).
    double variance() const;
};

struct SuccessProbability {
    double p_alice = 1.0;
    double p_bob_given_alice = 1.0;
    double p_total = 1.0;
};

/// EPR parameter lambda of a TMSV with variance V = (1 + l^2) / (1 - l^2).
double epr_parameter(double variance);
double epr_variance(double lambda);

/// Gamma = (gamma + I)^-1 of a two-mode state.
Eigen::Matrix4d husimi_gamma(const CovarianceMatrix& cov);

/// Block map of the two amplifiers on a normal-form Husimi matrix.
/// Throws NormalFormError when `gamma` is not in normal form to 1e-9.
Eigen::Matrix4d apply_nla_gamma(const Eigen::Matrix4d& gamma, const NlaConfig& nla);

/// Covariance after successful amplification, (Gamma_NLA)^-1 - I.
///
/// Throws NormalFormError for non-normal-form input and
/// UnphysicalAmplificationError when the gains leave the set of valid states.
CovarianceMatrix cov_after_nla(const CovarianceMatrix& cov, const NlaConfig& nla);

/// Closed-form equivalent system for symmetric channels.
EquivalentSystem equivalent_params(double lambda, const ChannelParams& channel,
                                   const NlaConfig& nla);

/// Per-side generalization for distinct channels. `generalized` is set when the
/// channels differ.
EquivalentSystem equivalent_params(double lambda, const ChannelParams& channel_alice,
                                   const ChannelParams& channel_bob, const NlaConfig& nla);

/// Largest admissible EPR parameter (exclusive). Returns 0 when a radicand is negative.
double lambda_bound(const ChannelParams& channel, const NlaConfig& nla);
double lambda_bound(const ChannelParams& channel_alice, const ChannelParams& channel_bob,
                    const NlaConfig& nla);

/// Maximal gain keeping the equivalent transmittance <= 1. +inf when the bound
/// is void (excess noise 0 or >= 2).
double g_max(const ChannelParams& channel);

/// P = g1^(-2 N_A) * g2^(-2 N_B|A).
SuccessProbability success_probability(const NlaConfig& nla, double n_alice,
                                       double n_bob_given_alice);

}  // namespace cvqkd

#endif  // CVQKD_NLA_HPP
