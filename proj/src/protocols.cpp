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

#include "cvqkd/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cvqkd/error.hpp"

namespace cvqkd {
namespace {

constexpr int kAlice = 0;
constexpr int kBob = 1;

// Mean photon number of a single-mode marginal in shot-noise units.
double photon_number(const Eigen::Matrix2d& block) { return (block.trace() / 2.0 - 1.0) / 2.0; }

double log2_ratio(double total, double conditional) {
    if (!(conditional > 0.0) || !(total > 0.0)) {
        throw PhysicalityError("mutual_information: non-positive conditional variance");
    }
    return std::log2(total / conditional);
}

}  // namespace

std::string_view to_string(ProtocolKind kind) {
    return kind == ProtocolKind::entanglement_in_middle ? "eim" : "relay";
}

std::string_view to_string(Detection detection) {
    return detection == Detection::homodyne ? "hom" : "het";
}

std::string_view to_string(Reconciliation reconciliation) {
    return reconciliation == Reconciliation::direct ? "DR" : "RR";
}

void ProtocolSpec::validate() const {
    if (!(variance_alice >= 1.0) || !std::isfinite(variance_alice)) {
        throw DomainError("source variance must be >= 1");
    }
    if (kind == ProtocolKind::untrusted_relay && (!(variance_bob >= 1.0) || !std::isfinite(variance_bob))) {
        throw DomainError("Bob's source variance must be >= 1");
    }
    if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
    channel_alice.validate();
    channel_bob.validate();
    nla.validate();
    if (kind == ProtocolKind::untrusted_relay) {
        if (detection_alice != Detection::heterodyne || detection_bob != Detection::heterodyne) {
            throw DomainError("the relay protocol uses heterodyne detection on both sides");
        }
        if (relay_gains && (!std::isfinite(relay_gains->alice) || !std::isfinite(relay_gains->bob))) {
            throw DomainError("relay gains must be finite");
        }
    }
}

CovarianceMatrix eim_covariance(double variance, const ChannelParams& channel_alice,
                                const ChannelParams& channel_bob) {
    CovarianceMatrix cov = tmsv_covariance(variance);
    cov = entangling_cloner_channel(cov, kAlice, channel_alice);
    return entangling_cloner_channel(cov, kBob, channel_bob);
}

CovarianceMatrix relay_covariance(double variance_alice, double variance_bob,
                                  const ChannelParams& channel_alice,
                                  const ChannelParams& channel_bob, const RelayGains& gains) {
    if (!std::isfinite(gains.alice) || !std::isfinite(gains.bob)) {
        throw DomainError("relay_covariance: gains must be finite");
    }
    // Modes: 0 = A2 (kept), 1 = A1' (at relay), 2 = B1' (at relay), 3 = B2 (kept).
    CovarianceMatrix cov = direct_sum(tmsv_covariance(variance_alice), tmsv_covariance(variance_bob));
    cov = entangling_cloner_channel(cov, 1, channel_alice);
    cov = entangling_cloner_channel(cov, 2, channel_bob);
    // After this 50:50 mixing, mode 1 carries x_C = (x_A1' - x_B1')/sqrt2 and
    // mode 2 carries p_D = (p_A1' + p_B1')/sqrt2.
    cov = beamsplitter(cov, 2, 1, 0.5);

    // Displacement alpha = -g (X_C - i P_D)/2 written with vacuum-1/2
    // quadratures shifts a shot-noise-unit quadrature by (g / sqrt2) x_C.
    const double ka = gains.alice / std::numbers::sqrt2;
    const double kb = gains.bob / std::numbers::sqrt2;
    Matrix map = Matrix::Zero(4, 8);
    map(0, 0) = 1.0;  // x_A3 = x_A2 - ka x_C
    map(0, 2) = -ka;
    map(1, 1) = 1.0;  // p_A3 = p_A2 + ka p_D
    map(1, 5) = ka;
    map(2, 6) = 1.0;  // x_B3 = x_B2 + kb x_C
    map(2, 2) = kb;
    map(3, 7) = 1.0;  // p_B3 = p_B2 + kb p_D
    map(3, 5) = kb;
    return CovarianceMatrix(map * cov.matrix() * map.transpose());
}

RelayGains default_relay_gains(double variance_alice, double variance_bob,
                               const ChannelParams& channel_alice,
                               const ChannelParams& channel_bob) {
    channel_alice.validate();
    channel_bob.validate();
    const auto gain = [](double v, const ChannelParams& ch) {
        if (!(v >= 1.0)) throw DomainError("default_relay_gains: variance must be >= 1");
        const double t = ch.transmittance;
        return std::sqrt((v * v - 1.0) / (2.0 * t * (v + ch.excess_noise) + 2.0 * (1.0 - t)));
    };
    return {gain(variance_alice, channel_alice), gain(variance_bob, channel_bob)};
}

double mutual_information(const NormalForm& s, Detection alice, Detection bob) {
    const double c2 = s.c * s.c;
    const bool het_a = alice == Detection::heterodyne;
    const bool het_b = bob == Detection::heterodyne;
    if (!het_a && !het_b) return 0.5 * log2_ratio(s.a, s.a - c2 / s.b);
    if (het_a && !het_b) return 0.5 * log2_ratio(s.b, s.b - c2 / (s.a + 1.0));
    if (!het_a && het_b) return 0.5 * log2_ratio(s.a, s.a - c2 / (s.b + 1.0));
    return log2_ratio(s.a + 1.0, s.a + 1.0 - c2 / (s.b + 1.0));
}

HolevoTerms holevo_terms(const CovarianceMatrix& cov, Detection alice, Detection bob,
                         Reconciliation direction) {
    if (cov.n_modes() != 2) throw DomainError("holevo_terms: expected a two-mode state");
    const bool direct = direction == Reconciliation::direct;
    const int reference = direct ? kAlice : kBob;
    const Detection ref_detection = direct ? alice : bob;
    const Detection peer_detection = direct ? bob : alice;

    CovarianceMatrix conditioned = [&] {
        if (ref_detection == Detection::homodyne) {
            return homodyne_condition(cov, reference, Quadrature::x);
        }
        // Against a homodyne peer only the sifted quadrature of the
        // heterodyne record is kept.
        if (peer_detection == Detection::homodyne) {
            return heterodyne_quadrature_condition(cov, reference, Quadrature::x);
        }
        return heterodyne_condition(cov, reference);
    }();

    HolevoTerms terms;
    terms.joint_spectrum = symplectic_eigenvalues(cov);
    terms.conditional_spectrum = symplectic_eigenvalues(conditioned);
    terms.joint_entropy = von_neumann_entropy(cov);
    terms.conditional_entropy = von_neumann_entropy(conditioned);
    terms.chi = std::max(0.0, terms.joint_entropy - terms.conditional_entropy);
    return terms;
}

double holevo_bound(const CovarianceMatrix& cov, Detection alice, Detection bob,
                    Reconciliation direction) {
    return holevo_terms(cov, alice, bob, direction).chi;
}

namespace {

CovarianceMatrix build_state(const ProtocolSpec& spec, KeyRateResult& result) {
    if (spec.kind == ProtocolKind::entanglement_in_middle) {
        return eim_covariance(spec.variance_alice, spec.channel_alice, spec.channel_bob);
    }
    const RelayGains gains = spec.relay_gains.value_or(default_relay_gains(
        spec.variance_alice, spec.variance_bob, spec.channel_alice, spec.channel_bob));
    result.relay_gains_used = gains;
    return relay_covariance(spec.variance_alice, spec.variance_bob, spec.channel_alice,
                            spec.channel_bob, gains);
}

// Amplifier success probability with the sequential rule: Bob's photon number
// is evaluated on the state conditioned on Alice's amplifier having fired.
SuccessProbability amplifier_success(const ProtocolSpec& spec, const CovarianceMatrix& cov,
                                     KeyRateResult& result) {
    if (spec.kind == ProtocolKind::entanglement_in_middle) {
        const double v = spec.variance_alice;
        const double lambda = epr_parameter(v);
        const ChannelParams& ca = spec.channel_alice;
        const ChannelParams& cb = spec.channel_bob;
        result.equivalent = equivalent_params(lambda, ca, cb, spec.nla);
        result.equivalent_admissible = result.equivalent->physical;
        const EquivalentSystem after_alice = equivalent_params(lambda, ca, cb, {spec.nla.g1, 1.0});
        if (!(after_alice.varsigma < 1.0)) {
            throw UnphysicalAmplificationError("amplifier_success: Alice's gain exceeds the source bound");
        }
        const double n_alice = ca.transmittance * (v - 1.0 + ca.excess_noise) + 1.0;
        const double n_bob =
            cb.transmittance * (after_alice.variance() - 1.0 + cb.excess_noise) + 1.0;
        return success_probability(spec.nla, n_alice, n_bob);
    }
    const double n_alice = photon_number(cov.block(kAlice, kAlice));
    const CovarianceMatrix after_alice =
        spec.nla.g1 > 1.0 ? cov_after_nla(cov, {spec.nla.g1, 1.0}) : cov;
    const double n_bob = photon_number(after_alice.block(kBob, kBob));
    return success_probability(spec.nla, n_alice, n_bob);
}

KeyRateResult unphysical(KeyRateResult result) {
    result.physical = false;
    result.key_rate_signed = std::numeric_limits<double>::quiet_NaN();
    result.key_rate_raw = 0.0;
    result.key_rate_effective = 0.0;
    return result;
}

}  // namespace

KeyRateResult key_rate(const ProtocolSpec& spec) {
    spec.validate();
    KeyRateResult result;
    CovarianceMatrix cov = build_state(spec, result);
    try {
        if (spec.nla.active()) {
            result.success = amplifier_success(spec, cov, result);
            result.p_total = result.success.p_total;
            cov = cov_after_nla(cov, spec.nla);
        }
        if (!cov.is_physical()) return unphysical(std::move(result));
        const std::optional<NormalForm> nf = normal_form(cov);
        if (!nf) throw NormalFormError("key_rate: state is not in normal form");
        result.mutual_info = mutual_information(*nf, spec.detection_alice, spec.detection_bob);
        const HolevoTerms terms =
            holevo_terms(cov, spec.detection_alice, spec.detection_bob, spec.reconciliation);
        result.holevo = terms.chi;
        result.symplectic = terms.joint_spectrum;
        result.symplectic.insert(result.symplectic.end(), terms.conditional_spectrum.begin(),
                                 terms.conditional_spectrum.end());
    } catch (const PhysicalityError&) {
        return unphysical(std::move(result));
    } catch (const DegenerateMeasurementError&) {
        return unphysical(std::move(result));
    } catch (const NormalFormError&) {
        return unphysical(std::move(result));
    }
    result.key_rate_signed = spec.beta * result.mutual_info - result.holevo;
    result.key_rate_raw = std::max(0.0, result.key_rate_signed);
    result.key_rate_effective = result.p_total * result.key_rate_raw;
    return result;
}

}  // namespace cvqkd
