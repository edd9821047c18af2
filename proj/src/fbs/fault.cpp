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

#include "floq/fbs/fault.hpp"

#include <set>

namespace floq {

std::vector<Fault> single_fault_locations(const Circuit &circuit, const Region &region) {
    const auto &ins = circuit.instructions();
    std::vector<Fault> out;
    std::set<uint32_t> touched;
    for (std::size_t k = region.begin; k < region.end; k++) {
        for (auto q : ins[k].qubits) {
            touched.insert(q);
        }
        if (ins[k].op == Op::MeasurePauli) {
            for (auto q : ins[k].pauli.support()) {
                touched.insert((uint32_t)q);
            }
        }
    }
    auto add_paulis = [&](std::size_t before, uint32_t q) {
        for (char p : {'X', 'Y', 'Z'}) {
            out.push_back({before, q, p});
        }
    };
    if (region.begin == 0) {
        // Data preparation faults. An ancilla preparation fault is a flip of
        // its first readout and belongs to the round that reads it.
        for (uint32_t q = 0; q < kNumData; q++) {
            touched.insert(q);
        }
    }
    for (auto q : touched) {
        add_paulis(region.begin, q);
    }
    for (std::size_t k = region.begin; k < region.end; k++) {
        const auto &in = ins[k];
        if (in.op == Op::Noise) {
            continue;
        }
        if (in.op == Op::MeasurePauli) {
            // A Pauli after a readout acts as a preparation fault of the
            // qubit's next use, so it is counted with that later region.
            out.push_back({k, 0, 'M'});
            continue;
        }
        for (auto q : in.qubits) {
            add_paulis(k + 1, q);
        }
    }
    return out;
}

FaultReport analyze_single_faults(const CompiledExperiment &exp, const Region &region, bool check_s,
                                  bool check_d) {
    FaultReport rep;
    auto faults = single_fault_locations(exp.circuit, region);
    std::vector<Parity> parities;
    for (const auto &d : exp.detectors) {
        parities.push_back(d.parity);
    }
    std::size_t nd = parities.size();
    parities.push_back(exp.logical_s.value);
    parities.push_back(exp.logical_d.value);
    auto flips = propagate_faults(exp.circuit, faults, parities);
    rep.num_faults = faults.size();
    for (std::size_t f = 0; f < faults.size(); f++) {
        bool fired = false;
        for (std::size_t k = 0; k < nd; k++) {
            fired |= flips[f][k];
        }
        bool logical = (check_s && flips[f][nd]) || (check_d && flips[f][nd + 1]);
        if (fired) {
            rep.detected++;
        } else if (!logical) {
            rep.harmless++;
        } else {
            rep.undetected_logical++;
            if (rep.examples.size() < 8) {
                rep.examples.push_back(faults[f]);
            }
        }
    }
    return rep;
}

}  // namespace floq
