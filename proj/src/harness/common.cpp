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


#include <cmath>
#include <limits>
#include <sstream>

#include "common.hpp"

namespace floq::harness {

namespace detail {

const FbsCode &code() {
    static const FbsCode c = build_code();
    return c;
}

RunOptions run_options(const Config &cfg, uint64_t seed, const NoiseModel *ceiling) {
    RunOptions o;
    o.backend = cfg.backend;
    o.shots = cfg.shots;
    o.seed = seed;
    o.vector_qubit_budget = cfg.vector_qubit_budget;
    o.ceiling = ceiling;
    return o;
}

Measured measure(const Config &cfg, const ExperimentSpec &spec, uint64_t seed, const NoiseModel &noise,
                 const NoiseModel *ceiling) {
    CompiledExperiment exp = compile_experiment(code(), spec);
    std::vector<Parity> det;
    det.reserve(exp.detectors.size());
    for (const auto &d : exp.detectors) {
        det.push_back(d.parity);
    }
    std::vector<Parity> obs = {exp.logical_s.value, exp.logical_d.value, exp.joint_value()};
    Measured m;
    m.tally = run_tally(exp.circuit, noise, det, obs, run_options(cfg, seed, ceiling));
    m.ft_encoding = exp.ft_encoding;
    m.ft_readout = exp.ft_readout;
    m.ambiguous = exp.ambiguous_s || exp.ambiguous_d;
    return m;
}

Tomography tomography(const Config &cfg, ExperimentSpec spec, uint64_t seed, const NoiseModel &noise,
                      const NoiseModel *ceiling) {
    Tomography t;
    t.min_kept = std::numeric_limits<double>::infinity();
    const std::string letters = "XYZ";
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            spec.basis_s = letters[a];
            spec.basis_d = letters[b];
            Measured m = measure(cfg, spec, sub_seed(seed, 3 * a + b), noise, ceiling);
            std::string key{letters[a], letters[b]};
            t.raw[key] = m.tally.hist_raw;
            t.kept[key] = m.tally.hist_kept;
            t.retention += m.tally.retention() / 9;
            t.min_kept = std::min(t.min_kept, m.tally.kept);
            t.exact = m.tally.exact;
            t.ft_encoding = m.ft_encoding;
            t.ambiguous = t.ambiguous || m.ambiguous;
        }
    }
    return t;
}

tomo::DensityMatrix reconstruct(const tomo::Counts &counts) {
    for (const auto &[basis, h] : counts) {
        if (!(h[0] + h[1] + h[2] + h[3] > 0)) {
            throw SimulationError("no shots survived post-selection in basis " + basis);
        }
    }
    return tomo::lqst(counts);
}

Eigen::Vector2cd eigenstate_vector(const Eigenstate &e) {
    const double r = 1 / std::sqrt(2.0);
    using c = std::complex<double>;
    switch (e.basis) {
        case 'X': return Eigen::Vector2cd(r, e.sign * r);
        case 'Y': return Eigen::Vector2cd(r, c(0, e.sign * r));
        default: return e.sign > 0 ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1);
    }
}

Eigen::Vector4cd product_state(const StateLabel &label) {
    Eigen::Vector2cd s = eigenstate_vector(label.s), d = eigenstate_vector(label.d);
    Eigen::Vector4cd v;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            v(2 * i + j) = s(i) * d(j);
        }
    }
    return v;
}

Eigen::Matrix4cd cnot_matrix() {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1;
    return u;
}

std::vector<StateLabel> labels(const Config &cfg) {
    if (cfg.states.size() == 1 && cfg.states[0] == "all") {
        return all_labels();
    }
    std::vector<StateLabel> out;
    for (const auto &s : cfg.states) {
        out.push_back(StateLabel::parse(s));
    }
    return out;
}

std::vector<Eigenstate> eigenstates(const Config &cfg) {
    std::vector<Eigenstate> out;
    for (const auto &s : cfg.states) {
        out.push_back(Eigenstate::parse(s));
    }
    return out;
}

json estimate(double value, double error) { return json{{"value", value}, {"error", error}}; }

json fit_json(const FitResult &f) {
    json j;
    j["model"] = f.model;
    for (const auto &p : f.parameters) {
        j["parameters"][p.name] = estimate(p.value, p.error);
    }
    j["residual_norm"] = f.residual_norm;
    j["points"] = f.points;
    j["degenerate"] = f.degenerate;
    return j;
}

json noise_json(const NoiseModel &m) {
    return json{{"p_1q", m.p_1q}, {"p_cz", m.p_cz}, {"p_m", m.p_m}, {"p_dd", m.p_dd}};
}

json matrix_json(const tomo::DensityMatrix &rho) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < 4; i++) {
        json a = json::array(), b = json::array();
        for (int j = 0; j < 4; j++) {
            a.push_back(rho(i, j).real());
            b.push_back(rho(i, j).imag());
        }
        re.push_back(a);
        im.push_back(b);
    }
    return json{{"real", re}, {"imag", im}};
}

std::string num(double v) {
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
}

}  // namespace detail

std::string to_csv(const CsvTable &table) {
    auto cell = [](const std::string &s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        }
        return q + "\"";
    };
    std::string out;
    auto line = [&](const std::vector<std::string> &row) {
        for (std::size_t k = 0; k < row.size(); k++) {
            out += (k ? "," : "") + cell(row[k]);
        }
        out += "\n";
    };
    line(table.header);
    for (const auto &r : table.rows) line(r);
    return out;
}

RunOutput run_experiment(const Config &cfg) {
    using namespace detail;
    static const std::map<std::string, RunOutput (*)(const Config &)> table = {
        {"encode-fidelity", run_encode_fidelity}, {"fbs-memory", run_fbs_memory},
        {"pauli-gates", run_pauli_gates},         {"rotation-sweep", run_rotation_sweep},
        {"cnot-bell", run_cnot_bell},             {"lqpt-cnot", run_lqpt_cnot},
        {"bs-memory", run_bs_memory},             {"bs-gates", run_bs_gates},
        {"error-budget", run_error_budget},
    };
    auto it = table.find(cfg.experiment);
    if (it == table.end()) {
        throw ConfigError("unknown experiment kind '" + cfg.experiment + "'");
    }
    RunOutput out;
    try {
        cfg.noise.validate();
        out = it->second(cfg);
    } catch (const ConfigError &) {
        throw;
    } catch (const SimulationError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        // Specifications the compiler rejects (gate after the readout round, etc.).
        throw ConfigError(e.what());
    } catch (const std::exception &e) {
        throw SimulationError(e.what());
    }
    json head;
    head["experiment"] = cfg.experiment;
    head["config"] = cfg.values();
    head["effective"] = {{"shots", cfg.shots},     {"seed", cfg.seed},
                         {"rounds", cfg.rounds},   {"backend", backend_name(cfg.backend)},
                         {"post", post_name(cfg.post)}, {"noise", noise_json(cfg.noise)}};
    head["results"] = std::move(out.json);
    out.json = std::move(head);
    return out;
}

}  // namespace floq::harness
