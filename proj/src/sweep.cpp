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

#include "cvqkd/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "cvqkd/error.hpp"

namespace cvqkd {
namespace {

// Guards the last grid point against accumulated round-off in start + k step.
constexpr double kGridSlack = 1e-9;

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double effective_rate(const LinkTemplate& link, double d, double loss) {
    return key_rate(link.at(d, loss)).key_rate_effective;
}

}  // namespace

double distance_to_transmittance(double distance_km, double loss_db_per_km) {
    if (!(distance_km >= 0.0)) throw DomainError("distance must be >= 0");
    if (!(loss_db_per_km > 0.0)) throw DomainError("loss coefficient must be > 0");
    return std::pow(10.0, -loss_db_per_km * distance_km / 10.0);
}

void DistanceGrid::validate() const {
    if (!(start_km >= 0.0) || !(stop_km >= 0.0)) throw DomainError("grid distances must be >= 0");
    if (!(step_km > 0.0)) throw DomainError("grid step must be > 0");
    if (!(loss_db_per_km > 0.0)) throw DomainError("loss coefficient must be > 0");
}

std::vector<double> DistanceGrid::points() const {
    validate();
    std::vector<double> out;
    if (stop_km < start_km) return out;
    const auto n = static_cast<long>(std::floor((stop_km - start_km) / step_km + kGridSlack));
    out.reserve(n + 1);
    for (long k = 0; k <= n; ++k) out.push_back(start_km + static_cast<double>(k) * step_km);
    return out;
}

void LinkTemplate::validate() const {
    if (!(split >= 0.0 && split <= 1.0)) throw DomainError("split must lie in [0, 1]");
}

ProtocolSpec LinkTemplate::at(double distance_km, double loss_db_per_km) const {
    validate();
    ProtocolSpec s = spec;
    s.channel_alice.transmittance = distance_to_transmittance(split * distance_km, loss_db_per_km);
    s.channel_bob.transmittance =
        distance_to_transmittance((1.0 - split) * distance_km, loss_db_per_km);
    return s;
}

std::vector<SweepRow> sweep(const LinkTemplate& link, const DistanceGrid& grid) {
    link.validate();
    std::vector<SweepRow> rows;
    for (double d : grid.points()) {
        const KeyRateResult r = key_rate(link.at(d, grid.loss_db_per_km));
        SweepRow row;
        row.distance_km = d;
        row.l1_km = link.split * d;
        row.l2_km = (1.0 - link.split) * d;
        row.key_rate_raw = r.key_rate_raw;
        row.key_rate_effective = r.key_rate_effective;
        row.p_total = r.p_total;
        row.physical = r.physical;
        rows.push_back(row);
    }
    return rows;
}

std::string Curve::label() const {
    const bool alice = nla.g1 > 1.0;
    const bool bob = nla.g2 > 1.0;
    if (alice && bob) return "nla_both";
    if (alice) return "nla_alice";
    if (bob) return "nla_bob";
    return "no_nla";
}

std::string sweep_csv(const LinkTemplate& link, const DistanceGrid& grid,
                      const std::vector<Curve>& curves) {
    std::string out =
        "curve,g1,g2,distance_km,l1_km,l2_km,key_rate_raw,key_rate_effective,p_total,physical\n";
    for (const Curve& curve : curves) {
        LinkTemplate l = link;
        l.spec.nla = curve.nla;
        const std::string prefix = curve.label() + "," + fmt9(curve.nla.g1) + "," + fmt9(curve.nla.g2);
        for (const SweepRow& row : sweep(l, grid)) {
            out += prefix;
            for (double v : {row.distance_km, row.l1_km, row.l2_km, row.key_rate_raw,
                             row.key_rate_effective, row.p_total}) {
                out += ',';
                out += fmt9(v);
            }
            out += row.physical ? ",1\n" : ",0\n";
        }
    }
    return out;
}

void MaxDistanceOptions::validate() const {
    if (!(tol_km > 0.0)) throw DomainError("tol_km must be > 0");
    if (!(scan_step_km > 0.0)) throw DomainError("scan_step_km must be > 0");
    if (!(scan_max_km > 0.0)) throw DomainError("scan_max_km must be > 0");
}

MaxDistanceResult max_distance(const LinkTemplate& link, double loss_db_per_km,
                               const MaxDistanceOptions& options) {
    options.validate();
    MaxDistanceResult res;
    auto rate = [&](double d) {
        ++res.evaluations;
        return effective_rate(link, d, loss_db_per_km);
    };

    const double at_zero = rate(0.0);
    if (!(at_zero > 0.0)) return res;
    res.found = true;

    // K(d) need not be monotone, so scan the whole range for the last positive point.
    DistanceGrid scan{0.0, options.scan_max_km, options.scan_step_km, loss_db_per_km};
    std::vector<double> pts = scan.points();
    if (pts.back() < options.scan_max_km) pts.push_back(options.scan_max_km);
    std::size_t last = 0;
    double last_rate = at_zero;
    std::vector<double> rates(pts.size(), 0.0);
    rates[0] = at_zero;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        rates[k] = rate(pts[k]);
        if (rates[k] > 0.0) {
            last = k;
            last_rate = rates[k];
        }
    }
    if (last + 1 == pts.size()) {
        res.reached_scan_limit = true;
        res.distance_km = res.lower_km = res.upper_km = pts.back();
        res.rate_lower = res.rate_upper = last_rate;
        return res;
    }

    double lo = pts[last];
    double hi = pts[last + 1];
    double rate_lo = last_rate;
    double rate_hi = rates[last + 1];
    while (hi - lo > options.tol_km) {
        const double mid = 0.5 * (lo + hi);
        const double r = rate(mid);
        if (r > 0.0) {
            lo = mid;
            rate_lo = r;
        } else {
            hi = mid;
            rate_hi = r;
        }
    }
    res.lower_km = lo;
    res.upper_km = hi;
    res.rate_lower = rate_lo;
    res.rate_upper = rate_hi;
    res.distance_km = 0.5 * (lo + hi);
    return res;
}

void GainSearch::validate() const {
    if (!(step > 0.0)) throw DomainError("gain step must be > 0");
    if (!(cap >= 1.0)) throw DomainError("gain cap must be >= 1");
}

OptimizeResult optimize_gain(const LinkTemplate& link, double distance_km, double loss_db_per_km,
                             const GainSearch& search) {
    search.validate();
    const ProtocolSpec base = link.at(distance_km, loss_db_per_km);
    OptimizeResult res;
    res.g_max_alice = g_max(base.channel_alice);
    res.g_max_bob = g_max(base.channel_bob);
    res.g1_max = std::max(1.0, std::min(res.g_max_alice, search.cap));
    res.g2_max = std::max(1.0, std::min(res.g_max_bob, search.cap));

    const auto gains = [&](double limit) {
        std::vector<double> g;
        for (long k = 0;; ++k) {
            const double v = 1.0 + static_cast<double>(k) * search.step;
            if (v > limit) break;
            g.push_back(v);
        }
        return g;
    };
    const std::vector<double> g1s = gains(res.g1_max);
    const std::vector<double> g2s = gains(res.g2_max);

    res.key_rate_effective = -1.0;
    for (double g1 : g1s) {
        for (double g2 : g2s) {
            ProtocolSpec s = base;
            s.nla = {g1, g2};
            const double k = key_rate(s).key_rate_effective;
            ++res.evaluations;
            if (k > res.key_rate_effective) {
                res.key_rate_effective = k;
                res.g1 = g1;
                res.g2 = g2;
            }
        }
    }
    return res;
}

}  // namespace cvqkd
