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

#ifndef FLOQ_FBS_EXPERIMENT_HPP
#define FLOQ_FBS_EXPERIMENT_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "floq/core/circuit.hpp"
#include "floq/core/record.hpp"
#include "floq/fbs/code.hpp"
#include "floq/fbs/sign_frame.hpp"

namespace floq {

/// A single-qubit Pauli eigenstate: basis letter and eigenvalue.
struct Eigenstate {
    char basis = 'Z';  // 'X', 'Y' or 'Z'
    int sign = 1;

    /// Parses "0", "1", "+", "-", "+i", "-i".
    static Eigenstate parse(std::string_view text);
    std::string str() const;
    bool operator==(const Eigenstate &o) const { return basis == o.basis && sign == o.sign; }
};

/// |static, dynamical> label.
struct StateLabel {
    Eigenstate s;
    Eigenstate d;
    /// Parses "s,d", e.g. "+,0" or "-i,+i".
    static StateLabel parse(std::string_view text);
    std::string str() const;
    /// Both factors in the X or Z basis: encodable without ancilla-parity readout.
    bool fault_tolerant() const;
};

/// All 36 labels in a fixed order (static major).
std::vector<StateLabel> all_labels();

enum class Lowering { Direct, Ancilla };

struct LoweringOptions {
    Lowering kind = Lowering::Ancilla;
    /// Reset check ancillas before every use instead of folding consecutive readouts.
    bool reset_ancillas = false;
    /// Emit CNOTs as H-CZ-H on the target.
    bool native_cz = false;
};

/// Duration of one stabilizer round on hardware.
constexpr double kReadoutNs = 720;
constexpr double kRoundGateNs = 200;
constexpr double kRoundNs = kReadoutNs + kRoundGateNs;

struct GateSpec {
    enum class Kind { StaticPauli, DynamicPauli, StaticRz, StaticRx, DynamicRz, DynamicRx, Cnot };
    Kind kind;
    char pauli = 'I';  // for Pauli gates
    double angle = 0;  // for rotations
    int after_round = 0;

    static GateSpec parse(std::string_view text, int after_round);
    std::string str() const;
    bool clifford() const;
};

/// Which logical outcomes a gate's frame correction multiplies, and by what.
struct PostRule {
    Parity factor{1};
    std::array<bool, 3> static_xyz{};   // multiply static X, Y, Z outcomes
    std::array<bool, 3> dynamic_xyz{};  // multiply dynamical X, Y, Z outcomes
};

struct ExperimentSpec {
    StateLabel state;
    int rounds = 4;
    std::vector<GateSpec> gates;
    char basis_s = 'Z';
    char basis_d = 'Z';
    LoweringOptions lowering;
    /// When false the circuit stops before the logical readout (for state oracles).
    bool readout = true;
};

struct Detector {
    Parity parity;
    int round;      // 0 for encoding flags, 1..rounds, or rounds + 1 for the readout comparison
    int stabilizer; // index into FbsCode::stabilizers, -1 for an encoding flag
};

/// Instruction range [begin, end) of a labelled fragment.
struct Region {
    std::string name;
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// A logical observable: value = factor * (product of readout outcomes), and
/// before readout it is factor * <op>.
struct LogicalObservable {
    PauliString op;  // on the full register, sign +1
    Parity factor{1};
    Parity value{1};
};

struct CompiledExperiment {
    Circuit circuit;
    std::vector<Detector> detectors;
    LogicalObservable logical_s, logical_d;
    bool ft_encoding = false;
    bool ft_readout = false;
    std::vector<Region> regions;
    std::vector<std::vector<std::optional<Parity>>> round_outcomes;  // [round-1][check]
    std::array<Parity, 4> initial_stabilizers;
    std::vector<SignFrameT<Parity>> frames;  // frames[r] after round r
    std::array<char, 9> readout_letters{};   // per data qubit, '\0' if unmeasured
    /// True when a logical value depends on a stabilizer sign that no
    /// measurement fixes (that factor is then taken as +1).
    bool ambiguous_s = false, ambiguous_d = false;

    const Region &region(std::string_view name) const;
    /// Joint value of the two logical outcomes.
    Parity joint_value() const { return logical_s.value * logical_d.value; }
};

CompiledExperiment compile_experiment(const FbsCode &code, const ExperimentSpec &spec);

/// Per-qubit readout letters for a logical basis after round r, plus which
/// stabilizers become computable from the readout.
struct ReadoutPlan {
    std::array<char, 9> letters{};
    std::vector<int> stabilizers;
    bool fault_tolerant = false;
};
ReadoutPlan plan_readout(const FbsCode &code, char basis_s, char basis_d, int round);

// ---- Fragment-level interfaces ----

struct EncodedState {
    Circuit circuit;
    bool fault_tolerant = false;
    std::array<std::optional<int>, 4> initial_stabilizers;  // nullopt: random until first measured
    /// Measurements whose product, times `branch_target`, gives the dynamical Y
    /// value actually prepared; empty when the preparation is deterministic.
    std::vector<std::size_t> branch_measurements;
    /// GHZ verification readouts; each is +1 in a fault-free run.
    std::vector<std::size_t> flag_measurements;
};
EncodedState encode_circuit(const FbsCode &code, const StateLabel &label, const LoweringOptions &lowering = {});

struct RoundCircuit {
    Circuit circuit;
    double duration_ns = kRoundNs;
    std::vector<std::size_t> check_measurement;  // per check in the round, index of its measurement
};
/// One round on fresh ancillas (no folding history).
RoundCircuit stabilizer_round_circuit(const FbsCode &code, Round q, const LoweringOptions &lowering = {});

struct GateFragment {
    Circuit circuit;
    PostRule rule;  // factor expressed with the frame values at insertion
};
/// Physical circuit and frame correction for a logical gate inserted after
/// round `after_round`, given the frame at that point.
GateFragment logical_gate_circuit(const FbsCode &code, const GateSpec &gate, const SignFrame &frame,
                                  const LoweringOptions &lowering = {});

struct LogicalOutcome {
    int value_s = 1;
    int value_d = 1;
    std::vector<std::pair<int, int>> stabilizers;  // (index, value) computable from the readout
    bool fault_tolerant = false;
};
/// Decodes a readout of all nine data qubits (measured in plan_readout letters).
LogicalOutcome logical_measurement(const FbsCode &code, char basis_s, char basis_d, int round,
                                   const std::array<int, 9> &data, const SignFrame &frame);

/// Evaluates every detector of a compiled experiment on one record (+1 quiet, -1 fired).
std::vector<int> detect(const CompiledExperiment &exp, const std::vector<int8_t> &record);

}  // namespace floq

#endif
