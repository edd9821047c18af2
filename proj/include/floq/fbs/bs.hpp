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

#ifndef FLOQ_FBS_BS_HPP
#define FLOQ_FBS_BS_HPP

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "floq/core/circuit.hpp"
#include "floq/core/record.hpp"
#include "floq/fbs/code.hpp"
#include "floq/fbs/experiment.hpp"

namespace floq {

/// Distance-3 Bacon-Shor mode of the same lattice: only the static qubit is
/// used, and each round measures all four weight-6 stabilizers at once.
enum class BsGate { X, Y, Z, Y90 };

BsGate parse_bs_gate(std::string_view text);
std::string bs_gate_name(BsGate g);

struct BsSpec {
    Eigenstate state;
    int rounds = 4;
    std::vector<std::pair<int, BsGate>> gates;  // (after round, gate)
    char basis = 'Z';
    LoweringOptions lowering;
};

/// A detector on one of the two repetition lines. Line 0 holds the Z-type
/// stabilizers of the code's initial frame, line 1 the X-type ones; check 0 is
/// the stabilizer on rows/columns 1-2, check 1 the one on rows/columns 2-3.
struct BsDetector {
    Parity parity;
    int slice;  // 0 for encoding flags, 1..rounds, rounds + 1 for the readout
    int line;   // -1 for encoding flags
    int check;
};

struct BsExperiment {
    Circuit circuit;
    std::vector<BsDetector> detectors;
    Parity logical;  // measured static logical in `basis`
    char basis = 'Z';
    bool ft_encoding = false;
    int rounds = 0;
    int decode_line = -1;  // line protecting the measured logical, -1 when none
    Region encode, body;   // encoding; everything after it
    std::array<uint32_t, 9> final_positions{};  // physical data qubit of each lattice position at readout
};

BsExperiment compile_bs(const FbsCode &code, const BsSpec &spec);

/// MWPM correction of the measured logical from detector values (+1/-1, in
/// detector order). Returns -1 when the logical should be flipped.
int bs_correction(const BsExperiment &exp, const std::vector<int> &detector_values);

}  // namespace floq

#endif
