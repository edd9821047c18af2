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

#include "common.hpp"

namespace floq::harness::detail {

RunOutput run_error_budget(const Config &cfg) {
    int gate_round = cfg.get_int("gate_round", 2);
    auto ls = labels(cfg);
    if (ls.size() != 1) {
        throw ConfigError("error-budget takes exactly one state");
    }
    StateLabel label = ls[0];
    ExperimentSpec spec;
    spec.state = label;
    spec.rounds = cfg.rounds;
    spec.gates = {GateSpec::parse("CNOT", gate_round)};
    spec.lowering = cfg.lowering;
    Eigen::Vector4cd target = cnot_matrix() * product_state(label);
    tomo::DensityMatrix trho = target * target.adjoint();
    tomo::PauliVector tp = tomo::pauli_vector(trho);
    Config c = cfg;
    if (c.backend == Backend::Auto) c.backend = Backend::Tableau;
    double retention = -1;
    FidelityFunctional f = [&](const NoiseModel &eval, const NoiseModel &ceiling, uint64_t seed) {
        Tomography t = tomography(c, spec, seed, eval, &ceiling);
        const tomo::Counts &counts = t.counts(cfg.post);
        double fid = tomo::state_fidelity(reconstruct(counts), target);
        // Error bar from the linear estimator on the two-qubit correlators.
        double var = 0;
        const std::string letters = "XYZ";
        for (int a = 0; a < 3; a++) {
            for (int b = 0; b < 3; b++) {
                const auto &h = counts.at(std::string{letters[a], letters[b]});
                double n = h[0] + h[1] + h[2] + h[3];
                double m = (h[0] - h[1] - h[2] + h[3]) / n;
                double w = tp[4 * (a + 1) + (b + 1)] / 4;
                var += w * w * std::max(0.0, 1 - m * m) / n;
            }
        }
        if (retention < 0) retention = t.retention;  // the full-rate evaluation comes first
        return std::pair<double, double>(fid, t.exact ? 0.0 : std::sqrt(var));
    };
    BudgetOptions opt;
    opt.relative_step = cfg.get_double("relative_step", 0.25);
    opt.seed = cfg.seed;
    ErrorBudget b = error_budget(f, cfg.noise, opt);
    RunOutput out;
    out.csv.header = {"component", "rate", "weight", "weight_error", "contribution"};
    json comps = json::array();
    double total = 0;
    for (std::size_t k = 0; k < kBudgetClasses.size(); k++) {
        const char *name = budget_class_label(kBudgetClasses[k]);
        comps.push_back({{"component", name},
                         {"rate", b.rates[k]},
                         {"weight", estimate(b.weights[k], b.weight_errors[k])},
                         {"contribution", b.contributions[k]}});
        total += b.contributions[k];
        out.csv.rows.push_back({name, num(b.rates[k]), num(b.weights[k]), num(b.weight_errors[k]),
                                num(b.contributions[k])});
    }
    out.json["state"] = label.str();
    out.json["fidelity"] = b.fidelity;
    out.json["infidelity"] = 1 - b.fidelity;
    out.json["retention"] = retention;
    out.json["components"] = comps;
    out.json["sum_of_contributions"] = total;
    out.json["residual"] = (1 - b.fidelity) - total;
    return out;
}

}  // namespace floq::harness::detail
