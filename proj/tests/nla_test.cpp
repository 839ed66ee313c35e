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

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "cvqkd/error.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace cvqkd {
namespace {

using testing::max_abs_diff;
using testing::uniform;

Eigen::Matrix4d normal_form_gamma(double a, double b, double c) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = m(1, 1) = a;
    m(2, 2) = m(3, 3) = b;
    m(0, 2) = m(2, 0) = c;
    m(1, 3) = m(3, 1) = -c;
    return m;
}

CovarianceMatrix epr_through_channels(double lambda, const ChannelParams& alice,
                                      const ChannelParams& bob) {
    CovarianceMatrix cov = tmsv_covariance(epr_variance(lambda));
    cov = entangling_cloner_channel(cov, 0, alice);
    return entangling_cloner_channel(cov, 1, bob);
}

// Closed-form equivalent system written out independently of the library.
struct Reference {
    double varsigma, eta1, eta2, eps1, eps2;
};

Reference reference_params(double lambda, double t1, double e1, double g1, double t2, double e2,
                           double g2) {
    const auto ratio = [](double t, double e, double g) {
        const double k = g * g - 1.0;
        return (k * (e - 2.0) * t - 2.0) / (k * e * t - 2.0);
    };
    const auto eta = [](double t, double e, double g) {
        const double k = g * g - 1.0;
        return 4.0 * t * g * g / (t * k * (k * (e - 2.0) * e * t - 4.0 * (e - 1.0)) + 4.0);
    };
    const auto eps = [](double t, double e, double g) {
        const double k = g * g - 1.0;
        return e - 0.5 * k * (e - 2.0) * e * t;
    };
    return {lambda * std::sqrt(ratio(t1, e1, g1) * ratio(t2, e2, g2)), eta(t1, e1, g1),
            eta(t2, e2, g2), eps(t1, e1, g1), eps(t2, e2, g2)};
}

TEST(EprParameter, Conversions) {
    EXPECT_NEAR(epr_parameter(1.7), std::sqrt(0.7 / 2.7), 1e-15);
    EXPECT_NEAR(epr_variance(epr_parameter(1.7)), 1.7, 1e-14);
    EXPECT_EQ(epr_parameter(1.0), 0.0);
    EXPECT_THROW(epr_parameter(0.5), DomainError);
}

TEST(Husimi, VacuumIsHalfIdentity) {
    EXPECT_LT((husimi_gamma(CovarianceMatrix::vacuum(2)) - 0.5 * Eigen::Matrix4d::Identity())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
}

TEST(Husimi, BlockInversionOracle) {
    const double a = 1.7, b = 1.7, c = 1.3;
    const Eigen::Matrix4d gamma = husimi_gamma(NormalForm{a, b, c}.covariance());
    const double det = (a + 1.0) * (b + 1.0) - c * c;
    EXPECT_NEAR(gamma(0, 0), (b + 1.0) / det, 1e-15);
    EXPECT_NEAR(gamma(2, 2), (a + 1.0) / det, 1e-15);
    EXPECT_NEAR(gamma(0, 2), -c / det, 1e-15);
    EXPECT_NEAR(gamma(1, 3), c / det, 1e-15);
    EXPECT_NEAR(gamma(0, 0), gamma(2, 2), 1e-15);
}

TEST(ApplyNlaGamma, UnitGainIsIdentity) {
    const Eigen::Matrix4d gamma = normal_form_gamma(0.4, 0.45, 0.1);
    EXPECT_EQ(apply_nla_gamma(gamma, {1.0, 1.0}), gamma);
}

TEST(ApplyNlaGamma, HalfIsFixedPoint) {
    const Eigen::Matrix4d out = apply_nla_gamma(normal_form_gamma(0.5, 0.5, 0.2), {2.0, 3.0});
    EXPECT_NEAR(out(0, 0), 0.5, 1e-15);
    EXPECT_NEAR(out(2, 2), 0.5, 1e-15);
    EXPECT_NEAR(out(0, 2), 1.2, 1e-15);
}

TEST(ApplyNlaGamma, Arithmetic) {
    const Eigen::Matrix4d out = apply_nla_gamma(normal_form_gamma(0.4, 0.45, 0.1), {1.4, 1.4});
    EXPECT_NEAR(out(0, 0), 0.304, 1e-15);
    EXPECT_NEAR(out(1, 1), 0.304, 1e-15);
    EXPECT_NEAR(out(2, 2), 0.402, 1e-15);
    EXPECT_NEAR(out(0, 2), 0.196, 1e-15);
    EXPECT_NEAR(out(1, 3), -0.196, 1e-15);
}

TEST(ApplyNlaGamma, RejectsNonNormalForm) {
    Eigen::Matrix4d gamma = normal_form_gamma(0.4, 0.45, 0.1);
    gamma(0, 1) = gamma(1, 0) = 0.01;
    EXPECT_THROW(apply_nla_gamma(gamma, {1.4, 1.0}), NormalFormError);
}

TEST(CovAfterNla, UnitGainIsIdentity) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = uniform(rng, 1.0, 10.0);
        const double b = uniform(rng, 1.0, 10.0);
        // |c| <= sqrt((a - 1)(b - 1)) keeps the state physical.
        const double c = uniform(rng, -1.0, 1.0) * std::sqrt((a - 1.0) * (b - 1.0));
        const CovarianceMatrix cov = NormalForm{a, b, c}.covariance();
        ASSERT_TRUE(cov.is_physical());
        EXPECT_LT(max_abs_diff(cov_after_nla(cov, {1.0, 1.0}).matrix(), cov.matrix()), 1e-10);
    }
}

TEST(CovAfterNla, VacuumIsPreserved) {
    for (double g : {1.2, 2.0, 5.0}) {
        const CovarianceMatrix out = cov_after_nla(CovarianceMatrix::vacuum(2), {g, g});
        EXPECT_LT(max_abs_diff(out.matrix(), Matrix::Identity(4, 4)), 1e-12);
    }
}

TEST(CovAfterNla, ExcessiveGainIsRejected) {
    // A strongly correlated state has no valid image under a large gain.
    EXPECT_THROW(cov_after_nla(tmsv_covariance(5.0), {3.0, 3.0}), UnphysicalAmplificationError);
    Matrix not_normal = tmsv_covariance(1.7).matrix();
    not_normal(0, 0) = 2.0;
    EXPECT_THROW(cov_after_nla(CovarianceMatrix(not_normal), {1.4, 1.0}), NormalFormError);
}

TEST(CovAfterNla, MatchesEquivalentSystemAtOperatingPoint) {
    const double lambda = epr_parameter(1.7);
    const ChannelParams ch{std::pow(10.0, -0.5), 0.002};
    const EquivalentSystem eq = equivalent_params(lambda, ch, {1.4, 1.4});
    ASSERT_TRUE(eq.physical);
    const CovarianceMatrix amplified = cov_after_nla(epr_through_channels(lambda, ch, ch), {1.4, 1.4});
    const CovarianceMatrix equivalent =
        epr_through_channels(eq.varsigma, {eq.eta1, eq.eps1}, {eq.eta2, eq.eps2});
    EXPECT_LT(max_abs_diff(amplified.matrix(), equivalent.matrix()), 1e-10);
}

TEST(EquivalentParams, UnitGainIsIdentity) {
    const ChannelParams ch{0.4, 0.01};
    const EquivalentSystem eq = equivalent_params(0.5, ch, {1.0, 1.0});
    EXPECT_NEAR(eq.varsigma, 0.5, 1e-15);
    EXPECT_NEAR(eq.eta1, 0.4, 1e-15);
    EXPECT_NEAR(eq.eta2, 0.4, 1e-15);
    EXPECT_NEAR(eq.eps1, 0.01, 1e-15);
    EXPECT_NEAR(eq.eps2, 0.01, 1e-15);
    EXPECT_TRUE(eq.physical);
    EXPECT_FALSE(eq.generalized);
}

TEST(EquivalentParams, NoiselessChannelStaysNoiseless) {
    for (double g : {1.1, 1.5, 3.0}) {
        const EquivalentSystem eq = equivalent_params(0.3, {0.2, 0.0}, {g, g});
        EXPECT_EQ(eq.eps1, 0.0);
        EXPECT_EQ(eq.eps2, 0.0);
        const double k = g * g - 1.0;
        EXPECT_NEAR(eq.varsigma, 0.3 * (k * 0.2 + 1.0), 1e-14);
    }
}

TEST(EquivalentParams, ArithmeticOracle) {
    const double lambda = epr_parameter(1.7);
    const double t = std::pow(10.0, -0.02 * 25.0);
    const EquivalentSystem eq = equivalent_params(lambda, {t, 0.002}, {1.4, 1.4});
    const Reference ref = reference_params(lambda, t, 0.002, 1.4, t, 0.002, 1.4);
    EXPECT_NEAR(eq.varsigma, ref.varsigma, 1e-15);
    EXPECT_NEAR(eq.eta1, ref.eta1, 1e-15);
    EXPECT_NEAR(eq.eta2, ref.eta2, 1e-15);
    EXPECT_NEAR(eq.eps1, ref.eps1, 1e-15);
    EXPECT_NEAR(eq.eps2, ref.eps2, 1e-15);
    EXPECT_GT(eq.varsigma, lambda);
    EXPECT_GT(eq.eta1, t);
}

TEST(EquivalentParams, RandomAdmissibleOracle) {
    std::mt19937_64 rng(29);
    int checked = 0;
    while (checked < 200) {
        const ChannelParams ca{uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 0.1)};
        const ChannelParams cb = checked % 2 == 0
                                     ? ca
                                     : ChannelParams{uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 0.1)};
        const double g1 = uniform(rng, 1.0, std::min(3.0, g_max(ca)));
        const double g2 = uniform(rng, 1.0, std::min(3.0, g_max(cb)));
        const double bound = lambda_bound(ca, cb, {g1, g2});
        if (!(bound > 0.0)) continue;
        const double lambda = uniform(rng, 0.0, 0.98 * std::min(1.0, bound));
        const EquivalentSystem eq = equivalent_params(lambda, ca, cb, {g1, g2});
        ASSERT_TRUE(eq.physical);
        EXPECT_EQ(eq.generalized, !(ca == cb));
        const CovarianceMatrix amplified = cov_after_nla(epr_through_channels(lambda, ca, cb), {g1, g2});
        const CovarianceMatrix equivalent =
            epr_through_channels(eq.varsigma, {eq.eta1, eq.eps1}, {eq.eta2, eq.eps2});
        const double scale = std::max(1.0, amplified.matrix().cwiseAbs().maxCoeff());
        EXPECT_LT(max_abs_diff(amplified.matrix(), equivalent.matrix()) / scale, 1e-8)
            << "lambda=" << lambda << " T=" << ca.transmittance << "," << cb.transmittance
            << " eps=" << ca.excess_noise << "," << cb.excess_noise << " g=" << g1 << "," << g2;
        ++checked;
    }
}

TEST(EquivalentParams, MonotoneInLambda) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const ChannelParams ch{uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 0.1)};
        const NlaConfig nla{uniform(rng, 1.0, std::min(3.0, g_max(ch))), 1.0};
        const double bound = std::min(1.0, lambda_bound(ch, nla));
        double previous = -1.0;
        for (double lambda = 0.0; lambda < bound; lambda += bound / 40.0) {
            const double s = equivalent_params(lambda, ch, nla).varsigma;
            EXPECT_GE(s, previous);
            previous = s;
        }
    }
}

TEST(LambdaBound, UnitGainAndNoiselessChannel) {
    EXPECT_NEAR(lambda_bound({0.3, 0.01}, {1.0, 1.0}), 1.0, 1e-15);
    for (double g : {1.2, 1.4, 2.0}) {
        const double t = 0.3;
        EXPECT_NEAR(lambda_bound({t, 0.0}, {g, g}), 1.0 / (1.0 + (g * g - 1.0) * t), 1e-14);
    }
}

TEST(LambdaBound, EquivalentParameterReachesOneAtBound) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const ChannelParams ch{uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 0.2)};
        const NlaConfig nla{uniform(rng, 1.0, 2.5), uniform(rng, 1.0, 2.5)};
        const double bound = lambda_bound(ch, nla);
        if (!(bound > 0.0 && bound < 1.0)) continue;
        EXPECT_NEAR(equivalent_params(bound, ch, nla).varsigma, 1.0, 1e-9);
    }
}

TEST(LambdaBound, OperatingPoint) {
    const double bound = lambda_bound({0.316, 0.002}, {1.4, 1.4});
    const Reference at = reference_params(bound, 0.316, 0.002, 1.4, 0.316, 0.002, 1.4);
    EXPECT_NEAR(at.varsigma, 1.0, 1e-12);
    EXPECT_GT(bound, epr_parameter(1.7));
}

TEST(GMax, Limits) {
    EXPECT_EQ(g_max({0.5, 0.0}), std::numeric_limits<double>::infinity());
    EXPECT_EQ(g_max({0.5, 2.5}), std::numeric_limits<double>::infinity());
    EXPECT_GT(g_max({0.5, 1e-8}), 100.0);
    EXPECT_NEAR(g_max({1.0, 0.002}), 1.0, 1e-9);
    const double g = g_max({0.316, 0.002});
    EXPECT_GT(g, 1.4);
    EXPECT_NEAR(g, 8.98, 0.01);
}

TEST(GMax, EquivalentTransmittanceReachesOne) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const ChannelParams ch{uniform(rng, 0.01, 1.0), uniform(rng, 1e-4, 1.99)};
        const double g = g_max(ch);
        const EquivalentSystem eq = equivalent_params(0.1, ch, {g, g});
        EXPECT_NEAR(eq.eta1, 1.0, 1e-9);
        EXPECT_GT(eq.eps1, 0.0);
    }
}

TEST(GMax, AboveBoundIsNotPhysical) {
    const ChannelParams ch{0.316, 0.002};
    const double g = g_max(ch);
    EXPECT_TRUE(equivalent_params(0.01, ch, {0.99 * g, 1.0}).physical);
    EXPECT_FALSE(equivalent_params(0.01, ch, {1.01 * g, 1.0}).physical);
}

TEST(SuccessProbability, Values) {
    EXPECT_EQ(success_probability({1.0, 1.0}, 3.0, 2.0).p_total, 1.0);
    const SuccessProbability p = success_probability({1.4, 1.0}, 1.35, 0.7);
    EXPECT_NEAR(p.p_alice, std::pow(1.4, -2.7), 1e-15);
    EXPECT_EQ(p.p_bob_given_alice, 1.0);
    EXPECT_NEAR(p.p_total, std::pow(1.4, -2.7), 1e-15);
    EXPECT_THROW(success_probability({1.4, 1.0}, -0.1, 0.0), DomainError);
}

TEST(SuccessProbability, BoundedAndDecreasing) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const double na = uniform(rng, 0.01, 5.0);
        const double nb = uniform(rng, 0.01, 5.0);
        const double g1 = uniform(rng, 1.0, 3.0);
        const double g2 = uniform(rng, 1.0, 3.0);
        const double p = success_probability({g1, g2}, na, nb).p_total;
        EXPECT_GT(p, 0.0);
        EXPECT_LE(p, 1.0);
        EXPECT_LT(success_probability({g1 + 0.1, g2}, na, nb).p_total, p);
        EXPECT_LT(success_probability({g1, g2 + 0.1}, na, nb).p_total, p);
    }
}

TEST(NlaConfig, Validation) {
    EXPECT_THROW(NlaConfig({0.9, 1.0}).validate(), DomainError);
    EXPECT_THROW(NlaConfig({1.0, std::nan("")}).validate(), DomainError);
    EXPECT_FALSE(NlaConfig{}.active());
    EXPECT_TRUE(NlaConfig({1.0, 1.2}).active());
}

}  // namespace
}  // namespace cvqkd
