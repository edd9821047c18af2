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


#include "floq/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "floq/fbs/bs.hpp"

namespace floq::harness {

namespace {

struct KindInfo {
    std::string name;
    std::string states;
    int rounds;
    Post post;
    std::set<std::string> extras;
};

const std::vector<KindInfo> &kinds() {
    static const std::vector<KindInfo> k = {
        {"encode-fidelity", "all", 0, Post::Detect, {}},
        {"fbs-memory", "+,0", 16, Post::Detect, {"basis"}},
        {"pauli-gates", "0,0 +,+", 2, Post::Detect, {"gates", "gate_round"}},
        {"rotation-sweep", "0,+", 2, Post::Detect, {"axis", "angles", "gate_round"}},
        {"cnot-bell", "+,0 +,1 -,0 -,1", 3, Post::Detect, {"gate_round"}},
        {"lqpt-cnot", "0 1 - -i", 3, Post::Detect, {"gate_round", "cptp"}},
        {"bs-memory", "0 1 + -", 8, Post::Correct, {}},
        {"bs-gates", "0 +", 4, Post::Correct, {"bs_gates"}},
        {"error-budget", "+,0", 3, Post::Detect, {"gate_round", "relative_step"}},
    };
    return k;
}

const KindInfo &kind_info(std::string_view kind) {
    for (const auto &k : kinds()) {
        if (k.name == kind) return k;
    }
    throw ConfigError("unknown experiment kind '" + std::string(kind) + "'");
}

const std::set<std::string> kCommon = {"experiment", "states", "rounds", "shots", "seed", "backend",
                                       "post", "noise", "p_1q", "p_cz", "p_m", "p_dd", "lowering",
                                       "native_cz", "reset_ancillas", "vector_qubit_budget"};

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string &s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

template <class T>
T parse_number(const std::string &key, const std::string &v) {
    T out{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) {
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a number");
    }
    return out;
}

bool parse_bool(const std::string &key, const std::string &v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

bool is_bs(const std::string &kind) { return kind.rfind("bs-", 0) == 0; }

}  // namespace

Post parse_post(std::string_view text) {
    if (text == "raw") return Post::Raw;
    if (text == "detect") return Post::Detect;
    if (text == "correct") return Post::Correct;
    throw ConfigError("unknown post-processing '" + std::string(text) + "'");
}

const char *post_name(Post p) {
    switch (p) {
        case Post::Raw: return "raw";
        case Post::Detect: return "detect";
        default: return "correct";
    }
}

const std::vector<std::string> &experiment_kinds() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto &k : kinds()) v.push_back(k.name);
        return v;
    }();
    return names;
}

Config Config::defaults(std::string_view kind) {
    const auto &info = kind_info(kind);
    Config c;
    c.experiment = info.name;
    c.states = words(info.states);
    c.rounds = info.rounds;
    c.post = info.post;
    // Hardware entangling gate is CZ; CNOTs carry two Hadamards.
    c.lowering.native_cz = true;
    return c;
}

Config Config::parse(std::string_view text, std::string_view kind) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(std::string_view(t).substr(0, eq));
        std::string value = trim(std::string_view(t).substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        }
        if (!seen.insert(key).second) {
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
        entries.emplace_back(key, value);
    }
    std::string k(kind);
    for (const auto &[key, value] : entries) {
        if (key == "experiment") {
            if (!k.empty() && value != k) {
                throw ConfigError("config is for experiment '" + value + "', not '" + k + "'");
            }
            k = value;
        }
    }
    if (k.empty()) {
        throw ConfigError("no experiment kind given");
    }
    Config c = defaults(k);
    // The noise base must be in place before per-component overrides.
    std::stable_partition(entries.begin(), entries.end(), [](const auto &e) { return e.first == "noise"; });
    for (const auto &[key, value] : entries) {
        c.apply(key, value);
    }
    return c;
}

Config Config::load(const std::string &path, std::string_view kind) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), kind);
}

void Config::set(const std::string &key, const std::string &value) { apply(key, value); }

void Config::apply(const std::string &key, const std::string &value) {
    const auto &info = kind_info(experiment);
    if (!kCommon.count(key) && !info.extras.count(key)) {
        throw ConfigError("unknown key '" + key + "' for experiment '" + experiment + "'");
    }
    values_[key] = value;
    if (key == "experiment") {
        return;
    } else if (key == "states") {
        states = value == "all" && !is_bs(experiment) ? std::vector<std::string>{"all"} : words(value);
        if (states.empty()) throw ConfigError("key 'states' is empty");
        if (states.size() == 1 && states[0] == "all") return;
        for (const auto &s : states) {
            try {
                if (is_bs(experiment) || experiment == "lqpt-cnot") {
                    Eigenstate::parse(s);
                } else {
                    StateLabel::parse(s);
                }
            } catch (const std::invalid_argument &e) {
                throw ConfigError("key 'states': " + std::string(e.what()));
            }
        }
    } else if (key == "rounds") {
        rounds = parse_number<int>(key, value);
        if (rounds < 0) throw ConfigError("key 'rounds' must be non-negative");
    } else if (key == "shots") {
        shots = parse_number<uint64_t>(key, value);
        if (shots == 0) throw ConfigError("key 'shots' must be positive");
    } else if (key == "seed") {
        seed = parse_number<uint64_t>(key, value);
    } else if (key == "backend") {
        try {
            backend = parse_backend(value);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }
    } else if (key == "post") {
        post = parse_post(value);
        if (post == Post::Correct && !is_bs(experiment)) {
            throw ConfigError("post = correct is only available for bs-* experiments");
        }
    } else if (key == "noise") {
        if (value == "default") {
            noise = NoiseModel{};
        } else if (value == "none") {
            noise = NoiseModel::noiseless();
        } else {
            throw ConfigError("key 'noise': expected default or none");
        }
    } else if (key == "p_1q" || key == "p_cz" || key == "p_m" || key == "p_dd") {
        double p = parse_number<double>(key, value);
        if (!(p >= 0 && p <= 1)) throw ConfigError("key '" + key + "' must lie in [0, 1]");
        (key == "p_1q" ? noise.p_1q : key == "p_cz" ? noise.p_cz : key == "p_m" ? noise.p_m : noise.p_dd) = p;
    } else if (key == "lowering") {
        if (value == "direct") {
            lowering.kind = Lowering::Direct;
        } else if (value == "ancilla") {
            lowering.kind = Lowering::Ancilla;
        } else {
            throw ConfigError("key 'lowering': expected direct or ancilla");
        }
    } else if (key == "native_cz") {
        lowering.native_cz = parse_bool(key, value);
    } else if (key == "reset_ancillas") {
        lowering.reset_ancillas = parse_bool(key, value);
    } else if (key == "vector_qubit_budget") {
        vector_qubit_budget = parse_number<std::size_t>(key, value);
    }
}

std::string Config::get_string(const std::string &key, const std::string &fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

int Config::get_int(const std::string &key, int fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_number<int>(key, it->second);
}

double Config::get_double(const std::string &key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_number<double>(key, it->second);
}

bool Config::get_bool(const std::string &key, bool fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_bool(key, it->second);
}

}  // namespace floq::harness
