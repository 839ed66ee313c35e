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

#include "cvqkd/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <string>

#include "cvqkd/error.hpp"

namespace cvqkd {
namespace {

// Application order: generic keys before the per-side keys they default.
constexpr std::array<std::string_view, 28> kKeys = {
    "protocol",      "detection_alice", "detection_bob", "reconciliation", "V",
    "V_A",           "V_B",             "beta",          "eps",            "eps1",
    "eps2",          "loss_db_per_km",  "distance_km",   "split",          "g1",
    "g2",            "relay_gA",        "relay_gB",      "curves",         "grid_start_km",
    "grid_stop_km",  "grid_step_km",    "tol_km",        "scan_step_km",   "scan_max_km",
    "gain_step",     "gain_cap",        "output",
};

struct Entry {
    std::string value;
    int line;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const Entry& e, std::string_view key) {
    const std::string_view v = trim(e.value);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
        throw ConfigError(e.line, "invalid number '" + e.value + "' for key '" + std::string(key) + "'");
    }
    return out;
}

Detection parse_detection(const Entry& e) {
    if (e.value == "hom" || e.value == "homodyne") return Detection::homodyne;
    if (e.value == "het" || e.value == "heterodyne") return Detection::heterodyne;
    throw ConfigError(e.line, "detection must be 'hom' or 'het', got '" + e.value + "'");
}

std::vector<Curve> parse_curves(const Entry& e) {
    std::vector<Curve> curves;
    std::string item;
    auto flush = [&] {
        const std::string_view s = trim(item);
        if (s.empty()) return;
        const auto colon = s.find(':');
        if (colon == std::string_view::npos) {
            throw ConfigError(e.line, "curve '" + std::string(s) + "' must look like g1:g2");
        }
        const Entry g1{std::string(trim(s.substr(0, colon))), e.line};
        const Entry g2{std::string(trim(s.substr(colon + 1))), e.line};
        curves.push_back({NlaConfig{parse_number(g1, "curves"), parse_number(g2, "curves")}});
        item.clear();
    };
    for (char ch : e.value) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            flush();
        } else {
            item += ch;
        }
    }
    flush();
    return curves;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::map<std::string, Entry, std::less<>> tokenize(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) throw ConfigError(line_no, "missing key before '='");
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ConfigError(line_no, "unknown key '" + key + "'");
        }
        if (entries.count(key) != 0) {
            throw ConfigError(line_no, "key '" + key + "' repeated (first on line " +
                                           std::to_string(entries.at(key).line) + ")");
        }
        entries.emplace(key, Entry{std::string(trim(line.substr(eq + 1))), line_no});
    }
    return entries;
}

const std::vector<std::string> kFigureNames = {"fig4-left", "fig4-right", "fig5-left",
                                               "fig5-right", "fig7-a",    "fig7-b"};

}  // namespace

std::vector<Curve> RunConfig::effective_curves() const {
    if (!curves.empty()) return curves;
    return {Curve{link.spec.nla}};
}

void RunConfig::validate() const {
    try {
        link.validate();
        link.at(distance_km, grid.loss_db_per_km).validate();
        grid.validate();
        max_distance.validate();
        gain_search.validate();
        for (const Curve& c : curves) c.nla.validate();
        if (!(distance_km >= 0.0)) throw DomainError("distance_km must be >= 0");
    } catch (const DomainError& e) {
        throw ConfigError(0, e.what());
    }
}

RunConfig default_config() {
    RunConfig c;
    c.link.spec = ProtocolSpec{};
    c.link.split = 0.5;
    return c;
}

RunConfig parse_config(std::string_view text, const RunConfig& base) {
    const auto entries = tokenize(text);
    RunConfig cfg = base;
    ProtocolSpec& spec = cfg.link.spec;
    const auto get = [&](std::string_view key) -> const Entry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    const auto require_value = [](const Entry& e, std::string_view key) {
        if (e.value.empty()) throw ConfigError(e.line, "missing value for '" + std::string(key) + "'");
    };

    for (std::string_view key : kKeys) {
        const Entry* e = get(key);
        if (e == nullptr) continue;
        const bool optional_value = key == "relay_gA" || key == "relay_gB" || key == "curves" ||
                                    key == "output";
        if (!optional_value) require_value(*e, key);

        if (key == "protocol") {
            if (e->value == "eim") {
                spec.kind = ProtocolKind::entanglement_in_middle;
            } else if (e->value == "relay") {
                spec.kind = ProtocolKind::untrusted_relay;
            } else {
                throw ConfigError(e->line, "protocol must be 'eim' or 'relay', got '" + e->value + "'");
            }
        } else if (key == "detection_alice") {
            spec.detection_alice = parse_detection(*e);
        } else if (key == "detection_bob") {
            spec.detection_bob = parse_detection(*e);
        } else if (key == "reconciliation") {
            if (e->value == "DR") {
                spec.reconciliation = Reconciliation::direct;
            } else if (e->value == "RR") {
                spec.reconciliation = Reconciliation::reverse;
            } else {
                throw ConfigError(e->line, "reconciliation must be 'DR' or 'RR', got '" + e->value + "'");
            }
        } else if (key == "V") {
            spec.variance_alice = spec.variance_bob = parse_number(*e, key);
        } else if (key == "V_A" || key == "V_B") {
            if (spec.kind != ProtocolKind::untrusted_relay) {
                throw ConfigError(e->line, "'" + std::string(key) + "' applies to the relay protocol; use 'V'");
            }
            (key == "V_A" ? spec.variance_alice : spec.variance_bob) = parse_number(*e, key);
        } else if (key == "beta") {
            spec.beta = parse_number(*e, key);
        } else if (key == "eps") {
            spec.channel_alice.excess_noise = spec.channel_bob.excess_noise = parse_number(*e, key);
        } else if (key == "eps1") {
            spec.channel_alice.excess_noise = parse_number(*e, key);
        } else if (key == "eps2") {
            spec.channel_bob.excess_noise = parse_number(*e, key);
        } else if (key == "loss_db_per_km") {
            cfg.grid.loss_db_per_km = parse_number(*e, key);
        } else if (key == "distance_km") {
            cfg.distance_km = parse_number(*e, key);
        } else if (key == "split") {
            cfg.link.split = parse_number(*e, key);
        } else if (key == "g1") {
            spec.nla.g1 = parse_number(*e, key);
        } else if (key == "g2") {
            spec.nla.g2 = parse_number(*e, key);
        } else if (key == "relay_gA" || key == "relay_gB") {
            if (key == "relay_gB") continue;  // handled together with relay_gA below
        } else if (key == "curves") {
            cfg.curves = parse_curves(*e);
        } else if (key == "grid_start_km") {
            cfg.grid.start_km = parse_number(*e, key);
        } else if (key == "grid_stop_km") {
            cfg.grid.stop_km = parse_number(*e, key);
        } else if (key == "grid_step_km") {
            cfg.grid.step_km = parse_number(*e, key);
        } else if (key == "tol_km") {
            cfg.max_distance.tol_km = parse_number(*e, key);
        } else if (key == "scan_step_km") {
            cfg.max_distance.scan_step_km = parse_number(*e, key);
        } else if (key == "scan_max_km") {
            cfg.max_distance.scan_max_km = parse_number(*e, key);
        } else if (key == "gain_step") {
            cfg.gain_search.step = parse_number(*e, key);
        } else if (key == "gain_cap") {
            cfg.gain_search.cap = parse_number(*e, key);
        } else if (key == "output") {
            cfg.output = e->value;
        }
    }

    // Relay gains come as a pair; an empty value on both clears them.
    const Entry* ga = get("relay_gA");
    const Entry* gb = get("relay_gB");
    if (ga != nullptr || gb != nullptr) {
        const Entry& any = ga != nullptr ? *ga : *gb;
        const bool clear = (ga == nullptr || ga->value.empty()) && (gb == nullptr || gb->value.empty());
        if (clear) {
            spec.relay_gains.reset();
        } else {
            if (ga == nullptr || gb == nullptr || ga->value.empty() || gb->value.empty()) {
                throw ConfigError(any.line, "relay_gA and relay_gB must be given together");
            }
            spec.relay_gains = RelayGains{parse_number(*ga, "relay_gA"), parse_number(*gb, "relay_gB")};
        }
    }

    if (spec.kind == ProtocolKind::untrusted_relay) {
        for (std::string_view key : {"detection_alice", "detection_bob"}) {
            const Entry* e = get(key);
            if (e != nullptr && parse_detection(*e) != Detection::heterodyne) {
                throw ConfigError(e->line, "the relay protocol uses heterodyne detection on both sides");
            }
        }
        spec.detection_alice = spec.detection_bob = Detection::heterodyne;
    } else if (spec.relay_gains) {
        const Entry& e = ga != nullptr ? *ga : *gb;
        throw ConfigError(e.line, "relay gains apply to the relay protocol only");
    }

    cfg.validate();
    return cfg;
}

std::string dump_config(const RunConfig& c) {
    const ProtocolSpec& s = c.link.spec;
    const bool relay = s.kind == ProtocolKind::untrusted_relay;
    std::string out = "# cvqkd run configuration\n";
    const auto put = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    put("protocol", std::string(to_string(s.kind)));
    put("detection_alice", std::string(to_string(s.detection_alice)));
    put("detection_bob", std::string(to_string(s.detection_bob)));
    put("reconciliation", std::string(to_string(s.reconciliation)));
    if (relay) {
        put("V_A", num(s.variance_alice));
        put("V_B", num(s.variance_bob));
    } else {
        put("V", num(s.variance_alice));
    }
    put("beta", num(s.beta));
    put("eps1", num(s.channel_alice.excess_noise));
    put("eps2", num(s.channel_bob.excess_noise));
    put("loss_db_per_km", num(c.grid.loss_db_per_km));
    put("distance_km", num(c.distance_km));
    put("split", num(c.link.split));
    put("g1", num(s.nla.g1));
    put("g2", num(s.nla.g2));
    if (s.relay_gains) {
        put("relay_gA", num(s.relay_gains->alice));
        put("relay_gB", num(s.relay_gains->bob));
    }
    if (!c.curves.empty()) {
        std::string list;
        for (const Curve& curve : c.curves) {
            if (!list.empty()) list += ", ";
            list += num(curve.nla.g1) + ":" + num(curve.nla.g2);
        }
        put("curves", list);
    }
    put("grid_start_km", num(c.grid.start_km));
    put("grid_stop_km", num(c.grid.stop_km));
    put("grid_step_km", num(c.grid.step_km));
    put("tol_km", num(c.max_distance.tol_km));
    put("scan_step_km", num(c.max_distance.scan_step_km));
    put("scan_max_km", num(c.max_distance.scan_max_km));
    put("gain_step", num(c.gain_search.step));
    put("gain_cap", num(c.gain_search.cap));
    if (!c.output.empty()) put("output", c.output);
    return out;
}

const std::vector<std::string>& figure_names() { return kFigureNames; }

RunConfig figure_preset(std::string_view name) {
    RunConfig c = default_config();
    ProtocolSpec& s = c.link.spec;
    const auto four_curves = [&c](double g) {
        c.curves = {Curve{{1.0, 1.0}}, Curve{{g, 1.0}}, Curve{{1.0, g}}, Curve{{g, g}}};
    };
    if (name.substr(0, 4) == "fig4" || name.substr(0, 4) == "fig5") {
        s.kind = ProtocolKind::entanglement_in_middle;
        s.reconciliation = Reconciliation::direct;
        if (name == "fig4-left") {
            s.detection_alice = Detection::homodyne;
            s.detection_bob = Detection::homodyne;
        } else if (name == "fig4-right") {
            s.detection_alice = Detection::heterodyne;
            s.detection_bob = Detection::homodyne;
        } else if (name == "fig5-left") {
            s.detection_alice = Detection::homodyne;
            s.detection_bob = Detection::heterodyne;
        } else if (name == "fig5-right") {
            s.detection_alice = Detection::heterodyne;
            s.detection_bob = Detection::heterodyne;
        } else {
            throw ConfigError(0, "unknown figure '" + std::string(name) + "'");
        }
        c.link.split = 0.5;
        c.grid = DistanceGrid{0.0, 40.0, 0.1, kDefaultLossDbPerKm};
        four_curves(1.4);
        return c;
    }
    if (name == "fig7-a" || name == "fig7-b") {
        s.kind = ProtocolKind::untrusted_relay;
        s.detection_alice = s.detection_bob = Detection::heterodyne;
        s.reconciliation = Reconciliation::direct;
        if (name == "fig7-a") {
            c.link.split = 0.5;
            c.grid = DistanceGrid{0.0, 8.0, 0.05, kDefaultLossDbPerKm};
        } else {
            // Relay next to Alice: lossless first channel that keeps its excess noise.
            c.link.split = 0.0;
            c.grid = DistanceGrid{0.0, 70.0, 0.1, kDefaultLossDbPerKm};
        }
        four_curves(1.8);
        return c;
    }
    throw ConfigError(0, "unknown figure '" + std::string(name) + "'");
}

std::string rate_report(const RunConfig& c) {
    const ProtocolSpec spec = c.link.at(c.distance_km, c.loss_db_per_km());
    const KeyRateResult r = key_rate(spec);
    std::string out;
    const auto row = [&out](std::string_view name, const std::string& value) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-22s", std::string(name).c_str());
        out += buf;
        out += value;
        out += '\n';
    };
    row("protocol", std::string(to_string(spec.kind)));
    row("detection", std::string(to_string(spec.detection_alice)) + "/" +
                         std::string(to_string(spec.detection_bob)));
    row("reconciliation", std::string(to_string(spec.reconciliation)));
    row("distance_km", num9(c.distance_km));
    row("transmittance", num9(spec.channel_alice.transmittance) + " " +
                             num9(spec.channel_bob.transmittance));
    row("nla_gains", num9(spec.nla.g1) + " " + num9(spec.nla.g2));
    if (r.relay_gains_used) {
        row("relay_gains", num9(r.relay_gains_used->alice) + " " + num9(r.relay_gains_used->bob) +
                               (spec.relay_gains ? " (configured)" : " (default)"));
    }
    row("mutual_info_bits", num9(r.mutual_info));
    row("holevo_bits", num9(r.holevo));
    row("key_rate_raw", num9(r.key_rate_raw));
    row("p_total", num9(r.p_total));
    row("key_rate_effective", num9(r.key_rate_effective));
    row("physical", r.physical ? "yes" : "no");
    if (r.equivalent) row("equivalent_admissible", r.equivalent_admissible ? "yes" : "no");
    return out;
}

std::string max_distance_report(const RunConfig& c) {
    std::string out = "curve,g1,g2,max_distance_km,lower_km,upper_km,rate_lower,rate_upper,status\n";
    for (const Curve& curve : c.effective_curves()) {
        LinkTemplate link = c.link;
        link.spec.nla = curve.nla;
        const MaxDistanceResult r = max_distance(link, c.loss_db_per_km(), c.max_distance);
        const char* status = !r.found ? "no_key" : (r.reached_scan_limit ? "scan_limit" : "ok");
        out += curve.label() + "," + num9(curve.nla.g1) + "," + num9(curve.nla.g2) + "," +
               num9(r.distance_km) + "," + num9(r.lower_km) + "," + num9(r.upper_km) + "," +
               num9(r.rate_lower) + "," + num9(r.rate_upper) + "," + status + "\n";
    }
    return out;
}

std::string optimize_report(const RunConfig& c) {
    const OptimizeResult r = optimize_gain(c.link, c.distance_km, c.loss_db_per_km(), c.gain_search);
    std::string out;
    const auto row = [&out](std::string_view name, const std::string& value) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-22s", std::string(name).c_str());
        out += buf;
        out += value;
        out += '\n';
    };
    row("distance_km", num9(c.distance_km));
    row("g1_opt", num9(r.g1));
    row("g2_opt", num9(r.g2));
    row("key_rate_effective", num9(r.key_rate_effective));
    row("g_max_alice", num9(r.g_max_alice));
    row("g_max_bob", num9(r.g_max_bob));
    row("search_limit", num9(r.g1_max) + " " + num9(r.g2_max));
    row("evaluations", std::to_string(r.evaluations));
    return out;
}

std::string sweep_report(const RunConfig& c) {
    return sweep_csv(c.link, c.grid, c.effective_curves());
}

}  // namespace cvqkd
