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

#ifndef FLOQ_FBS_FAULT_HPP
#define FLOQ_FBS_FAULT_HPP

#include <cstddef>
#include <vector>

#include "floq/fbs/experiment.hpp"
#include "floq/tableau/simulator.hpp"

namespace floq {

/// Every single-qubit fault location inside [region.begin, region.end): X, Y
/// and Z on each qubit an instruction touches (after it), on each qubit at the
/// region entry (data preparation when the region starts the circuit), and a
/// flip of each measurement.
std::vector<Fault> single_fault_locations(const Circuit &circuit, const Region &region);

struct FaultReport {
    std::size_t num_faults = 0;
    std::size_t detected = 0;   // some detector fires
    std::size_t harmless = 0;   // undetected, logical values unchanged
    std::size_t undetected_logical = 0;
    std::vector<Fault> examples;  // first few undetected logical faults

    bool fault_tolerant() const { return undetected_logical == 0; }
};

/// Exhaustive single-fault injection over one region of a compiled Clifford
/// experiment. Only the logical values selected by `check_s`/`check_d`
/// (those deterministic for the encoded state) count as logical failures.
FaultReport analyze_single_faults(const CompiledExperiment &exp, const Region &region, bool check_s = true,
                                  bool check_d = true);

}  // namespace floq

#endif
