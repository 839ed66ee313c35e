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


#include "cvqkd/cvqkd.h"

#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "cvqkd/config.hpp"
#include "cvqkd/error.hpp"

struct cvqkd_config {
    cvqkd::RunConfig run;
};

struct cvqkd_text {
    std::string data;
};

namespace {

thread_local std::string g_error;
thread_local int g_error_line = 0;

cvqkd_status fail(cvqkd_status status, const std::string& message, int line = 0) {
    g_error = message;
    g_error_line = line;
    return status;
}

// Maps library exceptions onto status codes.
template <typename F>
cvqkd_status guarded(F&& f) {
    g_error.clear();
    g_error_line = 0;
    try {
        f();
        return CVQKD_OK;
    } catch (const cvqkd::ConfigError& e) {
        return fail(CVQKD_CONFIG, e.what(), e.line());
    } catch (const cvqkd::PhysicalityError& e) {
        return fail(CVQKD_UNPHYSICAL, e.what());
    } catch (const cvqkd::DegenerateMeasurementError& e) {
        return fail(CVQKD_UNPHYSICAL, e.what());
    } catch (const cvqkd::NormalFormError& e) {
        return fail(CVQKD_UNPHYSICAL, e.what());
    } catch (const cvqkd::Error& e) {
        return fail(CVQKD_DOMAIN, e.what());
    } catch (const std::bad_alloc&) {
        return fail(CVQKD_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(CVQKD_INTERNAL, e.what());
    } catch (...) {
        return fail(CVQKD_INTERNAL, "unknown error");
    }
}

cvqkd_status text_out(cvqkd_text** out, std::string s) {
    *out = new cvqkd_text{std::move(s)};
    return CVQKD_OK;
}

}  // namespace

extern "C" {

const char* cvqkd_version(void) { return "1.0.0"; }

const char* cvqkd_last_error(void) { return g_error.c_str(); }

int cvqkd_last_error_line(void) { return g_error_line; }

const char* cvqkd_status_string(cvqkd_status status) {
    switch (status) {
        case CVQKD_OK: return "ok";
        case CVQKD_INVALID_ARGUMENT: return "invalid argument";
        case CVQKD_CONFIG: return "config error";
        case CVQKD_DOMAIN: return "domain error";
        case CVQKD_UNPHYSICAL: return "unphysical state";
        case CVQKD_INTERNAL: return "internal error";
    }
    return "unknown status";
}

cvqkd_status cvqkd_config_new(cvqkd_config** out) {
    if (out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "out is null");
    return guarded([&] { *out = new cvqkd_config{cvqkd::default_config()}; });
}

cvqkd_status cvqkd_config_parse(const char* text, cvqkd_config** out) {
    if (text == nullptr || out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new cvqkd_config{cvqkd::parse_config(text)}; });
}

cvqkd_status cvqkd_config_preset(const char* name, cvqkd_config** out) {
    if (name == nullptr || out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new cvqkd_config{cvqkd::figure_preset(name)}; });
}

cvqkd_status cvqkd_config_merge_text(cvqkd_config* config, const char* text) {
    if (config == nullptr || text == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    return guarded([&] { config->run = cvqkd::parse_config(text, config->run); });
}

cvqkd_status cvqkd_config_set(cvqkd_config* config, const char* key, const char* value) {
    if (config == nullptr || key == nullptr || value == nullptr) {
        return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    }
    const std::string line = std::string(key) + " = " + value;
    if (line.find('\n') != std::string::npos || line.find('#') != std::string::npos) {
        return fail(CVQKD_INVALID_ARGUMENT, "key and value must be a single line without '#'");
    }
    return guarded([&] { config->run = cvqkd::parse_config(line, config->run); });
}

cvqkd_status cvqkd_config_dump(const cvqkd_config* config, cvqkd_text** out) {
    if (config == nullptr || out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    return guarded([&] { text_out(out, cvqkd::dump_config(config->run)); });
}

const char* cvqkd_config_output(const cvqkd_config* config) {
    return config == nullptr ? "" : config->run.output.c_str();
}

void cvqkd_config_free(cvqkd_config* config) { delete config; }

size_t cvqkd_preset_count(void) { return cvqkd::figure_names().size(); }

const char* cvqkd_preset_name(size_t index) {
    const auto& names = cvqkd::figure_names();
    return index < names.size() ? names[index].c_str() : nullptr;
}

const char* cvqkd_text_data(const cvqkd_text* text) {
    return text == nullptr ? "" : text->data.c_str();
}

size_t cvqkd_text_size(const cvqkd_text* text) { return text == nullptr ? 0 : text->data.size(); }

void cvqkd_text_free(cvqkd_text* text) { delete text; }

cvqkd_status cvqkd_rate(const cvqkd_config* config, cvqkd_rate_result* out) {
    if (config == nullptr || out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const cvqkd::RunConfig& c = config->run;
        const cvqkd::KeyRateResult r = cvqkd::key_rate(c.link.at(c.distance_km, c.loss_db_per_km()));
        const double nan = std::numeric_limits<double>::quiet_NaN();
        *out = cvqkd_rate_result{r.mutual_info,
                                 r.holevo,
                                 r.key_rate_raw,
                                 r.p_total,
                                 r.key_rate_effective,
                                 r.relay_gains_used ? r.relay_gains_used->alice : nan,
                                 r.relay_gains_used ? r.relay_gains_used->bob : nan,
                                 r.physical ? 1 : 0};
    });
}

cvqkd_status cvqkd_rate_report(const cvqkd_config* config, cvqkd_text** out) {
    if (config == nullptr || out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    return guarded([&] { text_out(out, cvqkd::rate_report(config->run)); });
}

cvqkd_status cvqkd_sweep_csv(const cvqkd_config* config, cvqkd_text** out) {
    if (config == nullptr || out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    return guarded([&] { text_out(out, cvqkd::sweep_report(config->run)); });
}

cvqkd_status cvqkd_max_distance(const cvqkd_config* config, cvqkd_max_distance_result* out) {
    if (config == nullptr || out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const cvqkd::RunConfig& c = config->run;
        const cvqkd::MaxDistanceResult r =
            cvqkd::max_distance(c.link, c.loss_db_per_km(), c.max_distance);
        *out = cvqkd_max_distance_result{r.distance_km, r.lower_km,  r.upper_km,
                                         r.rate_lower,  r.rate_upper, r.found ? 1 : 0,
                                         r.reached_scan_limit ? 1 : 0, r.evaluations};
    });
}

cvqkd_status cvqkd_max_distance_report(const cvqkd_config* config, cvqkd_text** out) {
    if (config == nullptr || out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    return guarded([&] { text_out(out, cvqkd::max_distance_report(config->run)); });
}

cvqkd_status cvqkd_optimize(const cvqkd_config* config, cvqkd_optimize_result* out) {
    if (config == nullptr || out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const cvqkd::RunConfig& c = config->run;
        const cvqkd::OptimizeResult r =
            cvqkd::optimize_gain(c.link, c.distance_km, c.loss_db_per_km(), c.gain_search);
        *out = cvqkd_optimize_result{r.g1,          r.g2,        r.key_rate_effective,
                                     r.g_max_alice, r.g_max_bob, r.evaluations};
    });
}

cvqkd_status cvqkd_optimize_report(const cvqkd_config* config, cvqkd_text** out) {
    if (config == nullptr || out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "null argument");
    return guarded([&] { text_out(out, cvqkd::optimize_report(config->run)); });
}

cvqkd_status cvqkd_g_max(double transmittance, double excess_noise, double* out) {
    if (out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "out is null");
    return guarded([&] { *out = cvqkd::g_max(cvqkd::ChannelParams{transmittance, excess_noise}); });
}

cvqkd_status cvqkd_distance_to_transmittance(double distance_km, double loss_db_per_km,
                                             double* out) {
    if (out == nullptr) return fail(CVQKD_INVALID_ARGUMENT, "out is null");
    return guarded([&] { *out = cvqkd::distance_to_transmittance(distance_km, loss_db_per_km); });
}

}  // extern "C"
