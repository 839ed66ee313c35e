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

// Asymptotic key rates of the two entanglement-based protocols:
//
//  * entanglement in the middle: an untrusted source sends the two arms of a
//    TMSV to Alice and Bob through independent entangling-cloner channels;
//  * untrusted relay: Alice and Bob each keep one arm of their own TMSV, the
//    relay performs a Bell-type measurement on the other arms and both sides
//    displace their kept mode by the broadcast outcomes.
//
// K = beta I(A:B) - chi, with chi taken against Alice's data (direct
// reconciliation) or Bob's data (reverse reconciliation).

#ifndef CVQKD_PROTOCOLS_HPP
#define CVQKD_PROTOCOLS_HPP

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "cvqkd/gaussian.hpp"
#include "cvqkd/nla.hpp"

namespace cvqkd {

enum class ProtocolKind { entanglement_in_middle, untrusted_relay };
enum class Detection { homodyne, heterodyne };
enum class Reconciliation { direct, reverse };

std::string_view to_string(ProtocolKind kind);
std::string_view to_string(Detection detection);
std::string_view to_string(Reconciliation reconciliation);

/// Displacement gains of the relay feedforward.
struct RelayGains {
    double alice = 0.0;
    double bob = 0.0;

    bool operator==(const RelayGains&) const = default;
};

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::entanglement_in_middle;
    Detection detection_alice = Detection::heterodyne;
    Detection detection_bob = Detection::homodyne;
    Reconciliation reconciliation = Reconciliation::direct;
    double variance_alice = 1.7;  // V for the middle source, V_A for the relay
    double variance_bob = 1.7;    // V_B; relay only
    double beta = 0.948;
    ChannelParams channel_alice{1.0, 0.002};  // source/relay -> Alice
    ChannelParams channel_bob{1.0, 0.002};    // source/relay -> Bob
    NlaConfig nla;
    std::optional<RelayGains> relay_gains;  // relay only; default_relay_gains when empty

    /// Throws DomainError on out-of-range values and on a relay spec asking
    /// for homodyne detection.
    void validate() const;
};

struct KeyRateResult {
    double mutual_info = 0.0;         // bits
    double holevo = 0.0;              // bits
    double key_rate_signed = 0.0;     // beta I - chi before clamping; NaN when unphysical
    double key_rate_raw = 0.0;        // bits per successful use, clamped to >= 0
    double p_total = 1.0;
    double key_rate_effective = 0.0;  // p_total * key_rate_raw
    bool physical = true;
    /// lambda_1, lambda_2 of the joint state, then the conditioned eigenvalue(s).
    std::vector<double> symplectic;
    SuccessProbability success;
    std::optional<RelayGains> relay_gains_used;
    /// Middle-source protocol with amplifiers: equivalent system of the
    /// amplified state and whether it is admissible (equivalent EPR < 1,
    /// eta <= 1, eps >= 0).
    std::optional<EquivalentSystem> equivalent;
    bool equivalent_admissible = true;
};

/// Middle source: TMSV(V) with each arm through its entangling cloner.
CovarianceMatrix eim_covariance(double variance, const ChannelParams& channel_alice,
                                const ChannelParams& channel_bob);

/// Relay: two-mode covariance of (A3, B3) after the relay measurement and the
/// displacement feedforward.
CovarianceMatrix relay_covariance(double variance_alice, double variance_bob,
                                  const ChannelParams& channel_alice,
                                  const ChannelParams& channel_bob, const RelayGains& gains);

/// g = sqrt((V^2 - 1) / (2 T (V + eps) + 2 (1 - T))) per side.
RelayGains default_relay_gains(double variance_alice, double variance_bob,
                               const ChannelParams& channel_alice,
                               const ChannelParams& channel_bob);

/// Classical mutual information between Alice's and Bob's records, bits.
/// Throws PhysicalityError when a conditional variance is not positive.
double mutual_information(const NormalForm& state, Detection alice, Detection bob);

/// Holevo information of Eve on the reference side's key records.
struct HolevoTerms {
    double joint_entropy = 0.0;
    double conditional_entropy = 0.0;
    double chi = 0.0;  // clamped to >= 0
    std::vector<double> joint_spectrum;
    std::vector<double> conditional_spectrum;
};

HolevoTerms holevo_terms(const CovarianceMatrix& cov, Detection alice, Detection bob,
                         Reconciliation direction);

double holevo_bound(const CovarianceMatrix& cov, Detection alice, Detection bob,
                    Reconciliation direction);

/// Full pipeline. Never throws for a valid spec: failure modes are reported
/// through `physical` with zero rates.
KeyRateResult key_rate(const ProtocolSpec& spec);

}  // namespace cvqkd

#endif  // CVQKD_PROTOCOLS_HPP
