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

#include "floq/noise/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace floq {

double NoiseModel::rate(NoiseClass c) const {
    switch (c) {
        case NoiseClass::OneQubit:
            return p_1q;
        case NoiseClass::TwoQubit:
            return p_cz;
        case NoiseClass::Measurement:
            return p_m;
        case NoiseClass::Idle:
            return p_dd;
        default:
            return 0;
    }
}

void NoiseModel::set_rate(NoiseClass c, double p) {
    switch (c) {
        case NoiseClass::OneQubit:
            p_1q = p;
            break;
        case NoiseClass::TwoQubit:
            p_cz = p;
            break;
        case NoiseClass::Measurement:
            p_m = p;
            break;
        case NoiseClass::Idle:
            p_dd = p;
            break;
        default:
            throw std::invalid_argument("no rate for this noise class");
    }
}

void NoiseModel::validate() const {
    for (double p : {p_1q, p_cz, p_m, p_dd}) {
        if (!(p >= 0 && p <= 1)) {
            throw std::invalid_argument("noise rate outside [0, 1]");
        }
    }
}

Circuit instrument(const Circuit &circuit, const NoiseModel &model) {
    model.validate();
    Circuit out(circuit.num_qubits());
    for (const auto &ins : circuit.instructions()) {
        switch (ins.op) {
            case Op::IdleDD:
                if (model.p_dd > 0 && !ins.qubits.empty()) {
                    out.noise(NoiseKind::Depolarize1, ins.qubits, model.p_dd, NoiseClass::Idle);
                }
                continue;
            case Op::MeasurePauli: {
                Instruction m = ins;
                if (model.p_m > 0) {
                    m.p = model.p_m;
                    m.cls = NoiseClass::Measurement;
                }
                out.append(m);
                continue;
            }
            case Op::Noise:
            case Op::ResetZ:
                out.append(ins);
                continue;
            default:
                break;
        }
        out.append(ins);
        if (is_single_qubit_gate(ins.op)) {
            if (model.p_1q > 0) {
                out.noise(NoiseKind::Depolarize1, ins.qubits, model.p_1q, NoiseClass::OneQubit);
            }
        } else if (is_two_qubit_gate(ins.op)) {
            if (model.p_cz > 0) {
                out.noise(NoiseKind::Depolarize2, ins.qubits, model.p_cz, NoiseClass::TwoQubit);
            }
        } else {
            throw std::invalid_argument(std::string("no noise placement rule for ") + op_name(ins.op));
        }
    }
    return out;
}

double physical_baseline(double tau_us, double t1_us, double t2e_us) {
    if (!(tau_us >= 0) || !(t1_us > 0) || !(t2e_us > 0)) {
        throw std::invalid_argument("physical_baseline needs tau >= 0 and positive T1, T2e");
    }
    return 1 - std::exp(-tau_us / t2e_us) / 2 - std::exp(-tau_us / t1_us) / 2;
}

const char *budget_class_label(NoiseClass c) {
    switch (c) {
        case NoiseClass::OneQubit:
            return "1Q";
        case NoiseClass::TwoQubit:
            return "CZ";
        case NoiseClass::Measurement:
            return "M";
        case NoiseClass::Idle:
            return "DD";
        default:
            return "?";
    }
}

ErrorBudget error_budget(const FidelityFunctional &fidelity, const NoiseModel &model, const BudgetOptions &options) {
    model.validate();
    if (!(options.relative_step > 0 && options.relative_step < 1)) {
        throw std::invalid_argument("relative_step must be in (0, 1)");
    }
    ErrorBudget b;
    b.fidelity = fidelity(model, model, options.seed).first;
    for (std::size_t k = 0; k < kBudgetClasses.size(); k++) {
        NoiseClass c = kBudgetClasses[k];
        double p = model.rate(c);
        b.rates[k] = p;
        if (p == 0) {
            continue;
        }
        double center = p / 2;
        double h = center * options.relative_step;
        NoiseModel lo = model, hi = model;
        lo.set_rate(c, center - h);
        hi.set_rate(c, center + h);
        auto [f_lo, e_lo] = fidelity(lo, model, options.seed);
        auto [f_hi, e_hi] = fidelity(hi, model, options.seed);
        // Infidelity slope; the sign flips because F decreases with p.
        b.weights[k] = (f_lo - f_hi) / (2 * h);
        // Common random numbers make the two points strongly correlated, so the
        // independent-error bound below is conservative.
        b.weight_errors[k] = std::sqrt(e_lo * e_lo + e_hi * e_hi) / (2 * h);
        b.contributions[k] = p * b.weights[k];
    }
    return b;
}

}  // namespace floq
