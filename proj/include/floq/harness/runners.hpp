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


#ifndef FLOQ_HARNESS_RUNNERS_HPP
#define FLOQ_HARNESS_RUNNERS_HPP

#include <string>
#include <vector>

#include "floq/harness/config.hpp"
#include "json.hpp"

namespace floq::harness {

/// Rows for optional CSV export.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
std::string to_csv(const CsvTable &table);

struct RunOutput {
    nlohmann::ordered_json json;
    CsvTable csv;
};

/// Runs the configured experiment. Throws ConfigError for specifications the
/// code cannot build and SimulationError when simulation fails.
RunOutput run_experiment(const Config &config);

}  // namespace floq::harness

#endif
