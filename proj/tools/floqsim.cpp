// Copyright 2026 The floqsim Authors
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


// floqsim: runs one configured experiment and writes JSON (and optionally CSV).

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "floq/harness/config.hpp"
#include "floq/harness/runners.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kSimulationError = 3;

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path);
    if (!f) {
        throw floq::harness::SimulationError("cannot write '" + path + "'");
    }
    f << text;
}

}  // namespace

int main(int argc, char **argv) {
    using namespace floq::harness;
    CLI::App app{"Floquet-Bacon-Shor code simulator"};
    std::string kind, config_path, out_path;
    uint64_t seed = 0, shots = 0;
    bool csv = false;
    std::string kinds;
    for (const auto &k : experiment_kinds()) kinds += (kinds.empty() ? "" : ", ") + k;
    app.add_option("experiment", kind, "Experiment kind: " + kinds)->required();
    app.add_option("--config", config_path, "Config file (key = value lines)")->required();
    auto *seed_opt = app.add_option("--seed", seed, "Override the seed");
    auto *shots_opt = app.add_option("--shots", shots, "Override the shot count");
    app.add_option("--out", out_path, "Write JSON here instead of stdout");
    app.add_flag("--csv", csv, "Also write CSV (next to --out, or after the JSON on stdout)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }
    Config cfg;
    try {
        cfg = Config::load(config_path, kind);
        if (*seed_opt) cfg.set("seed", std::to_string(seed));
        if (*shots_opt) cfg.set("shots", std::to_string(shots));
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    RunOutput out;
    try {
        out = run_experiment(cfg);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception &e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return kSimulationError;
    }
    try {
        std::string text = out.json.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
            if (csv) std::cout << "\n" << to_csv(out.csv);
        } else {
            write_file(out_path, text);
            if (csv) {
                write_file(std::filesystem::path(out_path).replace_extension(".csv").string(), to_csv(out.csv));
            }
        }
    } catch (const std::exception &e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kSimulationError;
    }
    return 0;
}
