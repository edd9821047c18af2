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

#ifndef FLOQ_FBS_CODE_HPP
#define FLOQ_FBS_CODE_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "floq/core/pauli.hpp"

namespace floq {

/// Round types of the four-round measurement cycle.
enum class Round : int { A = 0, B = 1, C = 2, D = 3 };

/// Type of round i >= 1 (i mod 4 = 1, 2, 3, 0 maps to A, B, C, D). Round 0 reports A.
Round round_of(int i);
char round_letter(Round r);

enum class CheckType { X, Z };

/// A weight-2 gauge check and the ancilla that measures it.
struct Check {
    std::string name;  // e.g. "x47" for X4 X7
    CheckType type;
    PauliString op;  // on the 9 data qubits
    std::array<uint32_t, 2> data;
    uint32_t ancilla;
};

/// A weight-6 stabilizer, measured as the product of three checks of one round.
struct Stabilizer {
    std::string name;  // "SXA", "SZB", "SXC", "SZD"
    CheckType type;
    PauliString op;
    Round round;
    std::array<std::string, 3> checks;
};

/// A factor of a sign update: a check outcome from the current round
/// (offset 0) or the previous round (offset -1).
struct GammaTerm {
    std::string check;
    int offset;
};

struct GammaRule {
    std::vector<GammaTerm> terms;
    std::vector<int> stabilizers;  // indices into FbsCode::stabilizers
};

/// Check names per round type.
struct Schedule {
    std::array<std::vector<std::string>, 4> rounds;
};
Schedule default_schedule();

constexpr std::size_t kNumData = 9;
constexpr std::size_t kNumChecks = 12;
constexpr std::size_t kNumQubits = 21;

/// The 9-data-qubit floquetified Bacon-Shor code with its measurement schedule.
struct FbsCode {
    std::vector<Check> checks;
    std::array<std::vector<int>, 4> schedule;  // check indices per round type
    std::array<Stabilizer, 4> stabilizers;     // index k is measured in round type k
    PauliString x_s, z_s, y_s;                 // static logicals
    std::array<PauliString, 4> x_d, z_d, y_d;  // dynamical logicals per round type
    std::array<GammaRule, 4> gamma_x, gamma_z; // indexed by the round type of i

    int check_index(std::string_view name) const;
    const Check &check(std::string_view name) const { return checks[check_index(name)]; }
    /// Dynamical logical of a Pauli letter ('X', 'Y', 'Z') in round type q.
    const PauliString &dynamical(char p, Round q) const;
    const PauliString &static_logical(char p) const;
    static std::size_t num_qubits() { return kNumQubits; }
};

/// Builds the code and validates every structural invariant (check types per
/// round, stabilizer products, sign-update identities, commutation relations),
/// then runs a noiseless tableau oracle over eight rounds. Throws
/// std::invalid_argument naming the violated invariant.
FbsCode build_code(const Schedule &schedule = default_schedule(), bool run_oracle = true);

/// 9-qubit operator from "X4X7"-style text with 1-based data labels.
PauliString data_pauli(std::string_view text);
/// Pads a data operator to the full register.
PauliString on_register(const PauliString &data_op, std::size_t num_qubits = kNumQubits);

}  // namespace floq

#endif
