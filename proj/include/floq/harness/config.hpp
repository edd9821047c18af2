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


#ifndef FLOQ_HARNESS_CONFIG_HPP
#define FLOQ_HARNESS_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "floq/fbs/experiment.hpp"
#include "floq/harness/sampling.hpp"
#include "floq/noise/noise.hpp"

namespace floq::harness {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Post { Raw, Detect, Correct };
Post parse_post(std::string_view text);
const char *post_name(Post p);

/// Experiment kinds the runner knows.
const std::vector<std::string> &experiment_kinds();

/// Parsed run configuration. Flat `key = value` lines, `#` starts a comment.
struct Config {
    std::string experiment;
    std::vector<std::string> states;
    int rounds = 0;
    uint64_t shots = 10000;
    uint64_t seed = 1;
    Backend backend = Backend::Auto;
    Post post = Post::Detect;
    NoiseModel noise;
    LoweringOptions lowering;
    std::size_t vector_qubit_budget = 24;

    /// Parses text for the given experiment kind (or the `experiment` key when
    /// `kind` is empty), filling defaults for that kind.
    static Config parse(std::string_view text, std::string_view kind = {});
    static Config load(const std::string &path, std::string_view kind = {});
    /// Defaults only.
    static Config defaults(std::string_view kind);

    bool has(const std::string &key) const { return values_.count(key) > 0; }
    std::string get_string(const std::string &key, const std::string &fallback) const;
    int get_int(const std::string &key, int fallback) const;
    double get_double(const std::string &key, double fallback) const;
    bool get_bool(const std::string &key, bool fallback) const;
    /// Every key as given, for echoing into results.
    const std::map<std::string, std::string> &values() const { return values_; }
    /// Sets a key as if it appeared in the file (revalidated).
    void set(const std::string &key, const std::string &value);

   private:
    void apply(const std::string &key, const std::string &value);
    std::map<std::string, std::string> values_;
};

}  // namespace floq::harness

#endif
