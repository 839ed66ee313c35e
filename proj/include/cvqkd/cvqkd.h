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


/* C interface of the cvqkd engine.
 *
 * Every function returns a cvqkd_status. On failure the thread-local
 * message from cvqkd_last_error() describes the problem; config errors also
 * set cvqkd_last_error_line() (0 when no line applies). Text results are
 * returned as cvqkd_text handles owned by the caller. */

#ifndef CVQKD_CVQKD_H
#define CVQKD_CVQKD_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(CVQKD_BUILDING)
#define CVQKD_API __declspec(dllexport)
#else
#define CVQKD_API __declspec(dllimport)
#endif
#else
#define CVQKD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cvqkd_status {
    CVQKD_OK = 0,
    CVQKD_INVALID_ARGUMENT = 1,
    CVQKD_CONFIG = 2,
    CVQKD_DOMAIN = 3,
    CVQKD_UNPHYSICAL = 4,
    CVQKD_INTERNAL = 5
} cvqkd_status;

typedef struct cvqkd_config cvqkd_config;
typedef struct cvqkd_text cvqkd_text;

typedef struct cvqkd_rate_result {
    double mutual_info;
    double holevo;
    double key_rate_raw;
    double p_total;
    double key_rate_effective;
    double relay_gain_alice; /* NaN for the middle-source protocol */
    double relay_gain_bob;
    int physical;
} cvqkd_rate_result;

typedef struct cvqkd_max_distance_result {
    double distance_km;
    double lower_km;
    double upper_km;
    double rate_lower;
    double rate_upper;
    int found;
    int reached_scan_limit;
    int evaluations;
} cvqkd_max_distance_result;

typedef struct cvqkd_optimize_result {
    double g1;
    double g2;
    double key_rate_effective;
    double g_max_alice; /* may be +inf */
    double g_max_bob;
    int evaluations;
} cvqkd_optimize_result;

CVQKD_API const char* cvqkd_version(void);
CVQKD_API const char* cvqkd_last_error(void);
CVQKD_API int cvqkd_last_error_line(void);
CVQKD_API const char* cvqkd_status_string(cvqkd_status status);

/* Configurations. */
CVQKD_API cvqkd_status cvqkd_config_new(cvqkd_config** out);
CVQKD_API cvqkd_status cvqkd_config_parse(const char* text, cvqkd_config** out);
CVQKD_API cvqkd_status cvqkd_config_preset(const char* name, cvqkd_config** out);
/* Applies key = value text on top of an existing configuration. */
CVQKD_API cvqkd_status cvqkd_config_merge_text(cvqkd_config* config, const char* text);
CVQKD_API cvqkd_status cvqkd_config_set(cvqkd_config* config, const char* key, const char* value);
CVQKD_API cvqkd_status cvqkd_config_dump(const cvqkd_config* config, cvqkd_text** out);
/* Output path from the config, "" when unset. Valid until the config changes. */
CVQKD_API const char* cvqkd_config_output(const cvqkd_config* config);
CVQKD_API void cvqkd_config_free(cvqkd_config* config);

CVQKD_API size_t cvqkd_preset_count(void);
CVQKD_API const char* cvqkd_preset_name(size_t index);

CVQKD_API const char* cvqkd_text_data(const cvqkd_text* text);
CVQKD_API size_t cvqkd_text_size(const cvqkd_text* text);
CVQKD_API void cvqkd_text_free(cvqkd_text* text);

/* Computations on a configuration. */
CVQKD_API cvqkd_status cvqkd_rate(const cvqkd_config* config, cvqkd_rate_result* out);
CVQKD_API cvqkd_status cvqkd_rate_report(const cvqkd_config* config, cvqkd_text** out);
CVQKD_API cvqkd_status cvqkd_sweep_csv(const cvqkd_config* config, cvqkd_text** out);
CVQKD_API cvqkd_status cvqkd_max_distance(const cvqkd_config* config,
                                          cvqkd_max_distance_result* out);
CVQKD_API cvqkd_status cvqkd_max_distance_report(const cvqkd_config* config, cvqkd_text** out);
CVQKD_API cvqkd_status cvqkd_optimize(const cvqkd_config* config, cvqkd_optimize_result* out);
CVQKD_API cvqkd_status cvqkd_optimize_report(const cvqkd_config* config, cvqkd_text** out);

/* Direct numerical helpers. */
CVQKD_API cvqkd_status cvqkd_g_max(double transmittance, double excess_noise, double* out);
CVQKD_API cvqkd_status cvqkd_distance_to_transmittance(double distance_km, double loss_db_per_km,
                                                       double* out);

#ifdef __cplusplus
}
#endif

#endif /* CVQKD_CVQKD_H */
