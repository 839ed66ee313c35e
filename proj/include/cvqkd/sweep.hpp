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

#ifndef CVQKD_SWEEP_HPP
#define CVQKD_SWEEP_HPP

#include <string>
#include <vector>

#include "cvqkd/protocols.hpp"

namespace cvqkd {

inline constexpr double kDefaultLossDbPerKm = 0.2;

/// T = 10^(-a d / 10).
double distance_to_transmittance(double distance_km, double loss_db_per_km = kDefaultLossDbPerKm);

/// Evenly spaced distances start, start + step, ... <= stop. A grid with
/// stop < start is empty; stop == start has a single point.
struct DistanceGrid {
    double start_km = 0.0;
    double stop_km = 40.0;
    double step_km = 0.1;
    double loss_db_per_km = kDefaultLossDbPerKm;

    void validate() const;
    std::vector<double> points() const;
};

/// A protocol whose channel transmittances follow from a total Alice-Bob
/// distance. `split` is the fraction of the distance on Alice's channel
/// (source/relay position); excess noises of `spec` are kept as given.
/// When `spec.relay_gains` is empty the relay gains are recomputed at every
/// distance.
struct LinkTemplate {
    ProtocolSpec spec;
    double split = 0.5;

    void validate() const;
    ProtocolSpec at(double distance_km, double loss_db_per_km = kDefaultLossDbPerKm) const;
};

struct SweepRow {
    double distance_km = 0.0;
    double l1_km = 0.0;  // Alice's channel
    double l2_km = 0.0;  // Bob's channel
    double key_rate_raw = 0.0;
    double key_rate_effective = 0.0;
    double p_total = 1.0;
    bool physical = true;
};

/// One row per grid point, ordered by distance.
std::vector<SweepRow> sweep(const LinkTemplate& link, const DistanceGrid& grid);

/// One curve of a multi-curve sweep: the template with these amplifier gains.
struct Curve {
    NlaConfig nla;

    /// "no_nla", "nla_alice", "nla_bob" or "nla_both".
    std::string label() const;
};

/// CSV with header, `%.9g` numbers and one row per (curve, distance), curves
/// in the given order.
std::string sweep_csv(const LinkTemplate& link, const DistanceGrid& grid,
                      const std::vector<Curve>& curves);

struct MaxDistanceOptions {
    double tol_km = 0.05;
    double scan_step_km = 1.0;
    double scan_max_km = 200.0;

    void validate() const;
};

struct MaxDistanceResult {
    double distance_km = 0.0;
    bool found = false;              // some positive rate exists
    bool reached_scan_limit = false; // still positive at scan_max_km
    double lower_km = 0.0;           // last distance with positive rate
    double upper_km = 0.0;           // first distance past it without
    double rate_lower = 0.0;         // effective rates at the bracket ends
    double rate_upper = 0.0;
    int evaluations = 0;
};

/// Largest distance with a positive effective rate: coarse scan for the last
/// sign change, then bisection down to `tol_km`. Returns 0 (found = false)
/// when the rate at d = 0 is not positive.
MaxDistanceResult max_distance(const LinkTemplate& link, double loss_db_per_km,
                               const MaxDistanceOptions& options = {});

struct GainSearch {
    double step = 0.05;
    double cap = 4.0;  // upper limit when g_max is unbounded or huge

    void validate() const;
};

struct OptimizeResult {
    double g1 = 1.0;
    double g2 = 1.0;
    double key_rate_effective = 0.0;
    double g1_max = 1.0;  // search limits actually used
    double g2_max = 1.0;
    double g_max_alice = 1.0;  // unclipped bounds, may be +inf
    double g_max_bob = 1.0;
    int evaluations = 0;
};

/// Grid search over g1, g2 in [1, min(g_max, cap)] maximizing the effective
/// rate at `distance_km`. Ties go to the smaller gains.
OptimizeResult optimize_gain(const LinkTemplate& link, double distance_km, double loss_db_per_km,
                             const GainSearch& search = {});

}  // namespace cvqkd

#endif  // CVQKD_SWEEP_HPP
