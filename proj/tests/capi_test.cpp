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

#include <algorithm>
#include <cmath>
#include <string>

#include "gtest/gtest.h"

namespace {

std::string take(cvqkd_text* text) {
    std::string out(cvqkd_text_data(text), cvqkd_text_size(text));
    cvqkd_text_free(text);
    return out;
}

TEST(CApi, ConfigLifecycleAndRate) {
    cvqkd_config* config = nullptr;
    ASSERT_EQ(cvqkd_config_new(&config), CVQKD_OK);
    ASSERT_EQ(cvqkd_config_set(config, "distance_km", "10"), CVQKD_OK);
    cvqkd_rate_result r{};
    ASSERT_EQ(cvqkd_rate(config, &r), CVQKD_OK);
    EXPECT_EQ(r.physical, 1);
    EXPECT_GT(r.key_rate_raw, 0.0);
    EXPECT_EQ(r.p_total, 1.0);
    EXPECT_TRUE(std::isnan(r.relay_gain_alice));
    cvqkd_config_free(config);
}

TEST(CApi, RelayGainsAreReported) {
    cvqkd_config* config = nullptr;
    ASSERT_EQ(cvqkd_config_parse("protocol = relay\ndistance_km = 1\n", &config), CVQKD_OK);
    cvqkd_rate_result r{};
    ASSERT_EQ(cvqkd_rate(config, &r), CVQKD_OK);
    EXPECT_GT(r.relay_gain_alice, 0.0);
    EXPECT_EQ(r.relay_gain_alice, r.relay_gain_bob);
    cvqkd_config_free(config);
}

TEST(CApi, ConfigErrorsCarryLines) {
    cvqkd_config* config = nullptr;
    EXPECT_EQ(cvqkd_config_parse("V = 1.7\nnope = 2\n", &config), CVQKD_CONFIG);
    EXPECT_EQ(config, nullptr);
    EXPECT_EQ(cvqkd_last_error_line(), 2);
    EXPECT_NE(std::string(cvqkd_last_error()).find("nope"), std::string::npos);

    ASSERT_EQ(cvqkd_config_new(&config), CVQKD_OK);
    EXPECT_EQ(cvqkd_config_set(config, "beta", "2"), CVQKD_CONFIG);
    EXPECT_EQ(cvqkd_config_set(config, "beta", "0.9\nV = 3"), CVQKD_INVALID_ARGUMENT);
    EXPECT_EQ(cvqkd_config_merge_text(config, "beta = 0.9\n"), CVQKD_OK);
    cvqkd_config_free(config);
}

TEST(CApi, NullArguments) {
    EXPECT_EQ(cvqkd_config_new(nullptr), CVQKD_INVALID_ARGUMENT);
    EXPECT_EQ(cvqkd_rate(nullptr, nullptr), CVQKD_INVALID_ARGUMENT);
    EXPECT_EQ(cvqkd_g_max(0.5, 0.01, nullptr), CVQKD_INVALID_ARGUMENT);
    EXPECT_STREQ(cvqkd_text_data(nullptr), "");
    EXPECT_EQ(cvqkd_text_size(nullptr), 0u);
    cvqkd_config_free(nullptr);
    cvqkd_text_free(nullptr);
}

TEST(CApi, PresetsAndDumpRoundTrip) {
    ASSERT_EQ(cvqkd_preset_count(), 6u);
    EXPECT_EQ(cvqkd_preset_name(6), nullptr);
    for (size_t i = 0; i < cvqkd_preset_count(); ++i) {
        cvqkd_config* preset = nullptr;
        ASSERT_EQ(cvqkd_config_preset(cvqkd_preset_name(i), &preset), CVQKD_OK);
        cvqkd_text* text = nullptr;
        ASSERT_EQ(cvqkd_config_dump(preset, &text), CVQKD_OK);
        const std::string dumped = take(text);
        cvqkd_config* back = nullptr;
        ASSERT_EQ(cvqkd_config_parse(dumped.c_str(), &back), CVQKD_OK);
        ASSERT_EQ(cvqkd_config_dump(back, &text), CVQKD_OK);
        EXPECT_EQ(take(text), dumped);
        cvqkd_config_free(back);
        cvqkd_config_free(preset);
    }
    cvqkd_config* bad = nullptr;
    EXPECT_EQ(cvqkd_config_preset("fig1", &bad), CVQKD_CONFIG);
}

TEST(CApi, SweepMaxDistanceOptimize) {
    cvqkd_config* config = nullptr;
    ASSERT_EQ(cvqkd_config_parse("grid_stop_km = 2\ngrid_step_km = 1\ndistance_km = 3\n", &config),
              CVQKD_OK);
    cvqkd_text* text = nullptr;
    ASSERT_EQ(cvqkd_sweep_csv(config, &text), CVQKD_OK);
    const std::string csv = take(text);
    EXPECT_EQ(csv.rfind("curve,g1,g2,distance_km", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);

    cvqkd_max_distance_result md{};
    ASSERT_EQ(cvqkd_max_distance(config, &md), CVQKD_OK);
    EXPECT_EQ(md.found, 1);
    EXPECT_GT(md.distance_km, 10.0);
    EXPECT_LE(md.upper_km - md.lower_km, 0.05);

    cvqkd_optimize_result opt{};
    ASSERT_EQ(cvqkd_optimize(config, &opt), CVQKD_OK);
    EXPECT_GE(opt.g1, 1.0);
    EXPECT_LE(opt.g2, opt.g_max_bob);
    EXPECT_GT(opt.evaluations, 0);

    for (auto fn : {cvqkd_rate_report, cvqkd_max_distance_report, cvqkd_optimize_report}) {
        ASSERT_EQ(fn(config, &text), CVQKD_OK);
        EXPECT_GT(cvqkd_text_size(text), 0u);
        cvqkd_text_free(text);
    }
    cvqkd_config_free(config);
}

TEST(CApi, NumericHelpers) {
    double out = 0.0;
    ASSERT_EQ(cvqkd_distance_to_transmittance(50.0, 0.2, &out), CVQKD_OK);
    EXPECT_NEAR(out, 0.1, 1e-15);
    EXPECT_EQ(cvqkd_distance_to_transmittance(-1.0, 0.2, &out), CVQKD_DOMAIN);
    ASSERT_EQ(cvqkd_g_max(0.5, 0.0, &out), CVQKD_OK);
    EXPECT_TRUE(std::isinf(out));
    EXPECT_EQ(cvqkd_g_max(0.0, 0.01, &out), CVQKD_DOMAIN);
    EXPECT_STREQ(cvqkd_status_string(CVQKD_UNPHYSICAL), "unphysical state");
    EXPECT_STRNE(cvqkd_version(), "");
}

}  // namespace
