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

// Run configuration for the command-line front end.
//
// Format: one `key = value` per line, `#` starts a comment, blank lines are
// ignored. Unknown and repeated keys are rejected with the offending line
// number. See `dump_config` for the full key list.

#ifndef CVQKD_CONFIG_HPP
#define CVQKD_CONFIG_HPP

#include <string>
#include <string_view>
#include <vector>

#include "cvqkd/sweep.hpp"

namespace cvqkd {

struct RunConfig {
    LinkTemplate link;  // channel transmittances are filled in from distances
    double distance_km = 25.0;
    DistanceGrid grid;
    std::vector<Curve> curves;  // empty: a single curve with link.spec.nla
    MaxDistanceOptions max_distance;
    GainSearch gain_search;
    std::string output;  // empty: standard output

    double loss_db_per_km() const noexcept { return grid.loss_db_per_km; }
    /// `curves`, or the single configured gain pair.
    std::vector<Curve> effective_curves() const;
    /// Throws ConfigError when a library range check fails.
    void validate() const;
};

/// Defaults: V = 1.7, beta = 0.948, eps = 0.002,
/// 0.2 dB/km, middle source, het/hom, direct reconciliation.
RunConfig default_config();

/// Applies `text` on top of `base`. Throws ConfigError.
RunConfig parse_config(std::string_view text, const RunConfig& base = default_config());

/// Canonical text form; `parse_config(dump_config(c))` reproduces `c` exactly.
std::string dump_config(const RunConfig& config);

const std::vector<std::string>& figure_names();

/// Throws ConfigError for an unknown name.
RunConfig figure_preset(std::string_view name);

/// Human-readable reports used by the CLI subcommands.
std::string rate_report(const RunConfig& config);
std::string max_distance_report(const RunConfig& config);
std::string optimize_report(const RunConfig& config);
std::string sweep_report(const RunConfig& config);  // CSV

}  // namespace cvqkd

#endif  // CVQKD_CONFIG_HPP
