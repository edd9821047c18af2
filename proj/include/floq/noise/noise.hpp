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

#ifndef FLOQ_NOISE_NOISE_HPP
#define FLOQ_NOISE_NOISE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "floq/core/circuit.hpp"

namespace floq {

/// Pauli noise rates per component.
struct NoiseModel {
    double p_1q = 0.0007;
    double p_cz = 0.0097;
    double p_m = 0.0158;
    double p_dd = 0.0143;

    static NoiseModel noiseless() { return {0, 0, 0, 0}; }
    bool is_noiseless() const { return p_1q == 0 && p_cz == 0 && p_m == 0 && p_dd == 0; }
    double rate(NoiseClass c) const;
    void set_rate(NoiseClass c, double p);
    void validate() const;
};

/// Inserts concrete channels according to the placement rules:
/// depolarize1(p_1q) after every single-qubit gate, depolarize2(p_cz) after every
/// two-qubit gate, a classical flip(p_m) on every measurement, and
/// depolarize1(p_dd) in place of every IdleDD window. Zero-rate sites are omitted.
Circuit instrument(const Circuit &circuit, const NoiseModel &model);

/// Average single-qubit idle error over a window of length tau.
double physical_baseline(double tau_us, double t1_us, double t2e_us);

/// The four budget components in reporting order.
constexpr std::array<NoiseClass, 4> kBudgetClasses = {NoiseClass::OneQubit, NoiseClass::TwoQubit,
                                                      NoiseClass::Measurement, NoiseClass::Idle};
const char *budget_class_label(NoiseClass c);

struct ErrorBudget {
    double fidelity = 0;                    // target functional at the full rates
    std::array<double, 4> rates{};          // p_k
    std::array<double, 4> weights{};        // d(infidelity)/dp_k
    std::array<double, 4> weight_errors{};  // one-sigma statistical error of the weights
    std::array<double, 4> contributions{};  // p_k * weight_k
};

struct BudgetOptions {
    double relative_step = 0.25;
    uint64_t seed = 1;
};

/// Fidelity estimate at `eval`, drawing error events at the `ceiling` rates and
/// thinning them, so calls sharing a seed and ceiling use common random numbers.
/// Returns (fidelity, one-sigma error).
using FidelityFunctional =
    std::function<std::pair<double, double>(const NoiseModel &eval, const NoiseModel &ceiling, uint64_t seed)>;

/// Central finite differences of the infidelity around p_k / 2 for each component.
ErrorBudget error_budget(const FidelityFunctional &fidelity, const NoiseModel &model, const BudgetOptions &options);

}  // namespace floq

#endif
