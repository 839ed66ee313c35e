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


// cvqkd command-line tool.
//
//   cvqkd rate|sweep|max-distance|optimize [--figure NAME] [--config PATH]
//                                          [--output PATH] [--dump-config]
//
// The preset is applied first, then the config file on top of it.
// Exit codes: 0 success, 1 computation failure, 2 config error, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "cvqkd/cvqkd.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct ConfigDeleter {
    void operator()(cvqkd_config* c) const { cvqkd_config_free(c); }
};
struct TextDeleter {
    void operator()(cvqkd_text* t) const { cvqkd_text_free(t); }
};
using ConfigPtr = std::unique_ptr<cvqkd_config, ConfigDeleter>;
using TextPtr = std::unique_ptr<cvqkd_text, TextDeleter>;

int report_status(cvqkd_status status, const std::string& context) {
    std::cerr << "cvqkd: " << context << ": " << cvqkd_last_error() << "\n";
    return status == CVQKD_CONFIG ? kExitConfig : kExitFailure;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return !in.bad();
}

// Writes through a sibling temporary file so readers never see partial output.
bool write_atomic(const std::string& path, const std::string& data) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            return false;
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        return false;
    }
    return true;
}

int emit(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        std::cout.flush();
        return std::cout ? 0 : kExitIo;
    }
    if (!write_atomic(path, data)) {
        std::cerr << "cvqkd: cannot write '" << path << "'\n";
        return kExitIo;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymptotic CV-QKD key rates with noiseless linear amplifiers"};
    app.require_subcommand(1, 1);

    std::string figure;
    std::string config_path;
    std::string output;
    bool dump = false;

    std::vector<std::string> presets;
    for (size_t i = 0; i < cvqkd_preset_count(); ++i) presets.emplace_back(cvqkd_preset_name(i));

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--figure", figure, "Start from a figure preset")
            ->check(CLI::IsMember(presets));
        sub->add_option("--config", config_path, "key = value configuration file");
        sub->add_option("--output", output, "Write the result here instead of standard output");
        sub->add_flag("--dump-config", dump, "Print the effective configuration and exit");
    };
    CLI::App* rate = app.add_subcommand("rate", "Key rate at distance_km");
    CLI::App* sweep = app.add_subcommand("sweep", "CSV of key rates over the distance grid");
    CLI::App* maxd = app.add_subcommand("max-distance", "Largest distance with a positive key rate");
    CLI::App* opt = app.add_subcommand("optimize", "Best amplifier gains at distance_km");
    for (CLI::App* sub : {rate, sweep, maxd, opt}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    cvqkd_config* raw = nullptr;
    cvqkd_status st = figure.empty() ? cvqkd_config_new(&raw) : cvqkd_config_preset(figure.c_str(), &raw);
    if (st != CVQKD_OK) return report_status(st, "preset");
    ConfigPtr config(raw);

    if (!config_path.empty()) {
        std::string text;
        if (!read_file(config_path, text)) {
            std::cerr << "cvqkd: cannot read '" << config_path << "'\n";
            return kExitIo;
        }
        st = cvqkd_config_merge_text(config.get(), text.c_str());
        if (st != CVQKD_OK) return report_status(st, config_path);
    }
    if (output.empty()) output = cvqkd_config_output(config.get());

    cvqkd_text* text = nullptr;
    if (dump) {
        st = cvqkd_config_dump(config.get(), &text);
    } else if (*rate) {
        st = cvqkd_rate_report(config.get(), &text);
    } else if (*sweep) {
        st = cvqkd_sweep_csv(config.get(), &text);
    } else if (*maxd) {
        st = cvqkd_max_distance_report(config.get(), &text);
    } else {
        st = cvqkd_optimize_report(config.get(), &text);
    }
    if (st != CVQKD_OK) return report_status(st, app.get_subcommands().front()->get_name());
    TextPtr result(text);
    return emit(output, std::string(cvqkd_text_data(result.get()), cvqkd_text_size(result.get())));
}
