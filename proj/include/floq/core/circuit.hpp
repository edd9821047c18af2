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

#ifndef FLOQ_CORE_CIRCUIT_HPP
#define FLOQ_CORE_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "floq/core/pauli.hpp"

namespace floq {

enum class Op : uint8_t {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    Rx,
    Ry,
    Rz,
    CNOT,
    CZ,
    MeasurePauli,
    ResetZ,
    Noise,
    IdleDD,
};

/// Concrete stochastic Pauli channels.
enum class NoiseKind : uint8_t {
    Depolarize1,
    Depolarize2,
    XError,
    YError,
    ZError,
};

/// Which error-budget component a channel or measurement flip belongs to.
enum class NoiseClass : uint8_t {
    None = 0,
    OneQubit = 1,
    TwoQubit = 2,
    Measurement = 3,
    Idle = 4,
};
constexpr int kNumNoiseClasses = 5;

struct Instruction {
    Op op;
    std::vector<uint32_t> qubits;
    double angle = 0;
    // MeasurePauli only.
    PauliString pauli;
    std::string tag;
    // Noise: channel probability. MeasurePauli: classical flip probability.
    NoiseKind noise = NoiseKind::Depolarize1;
    double p = 0;
    NoiseClass cls = NoiseClass::None;

    bool operator==(const Instruction &other) const;
};

bool is_single_qubit_gate(Op op);
bool is_two_qubit_gate(Op op);
bool is_rotation(Op op);
/// True if a rotation angle is a multiple of pi/2 (to 1e-9).
bool is_clifford_angle(double angle);
/// Number of quarter turns (0..3) of a Clifford rotation angle.
int quarter_turns(double angle);
const char *op_name(Op op);

/// A flat list of instructions on a fixed register of qubits.
///
/// Measurement records are produced in instruction order; tags must be unique
/// when non-empty.
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<Instruction> &instructions() const { return ops_; }
    std::vector<Instruction> &mutable_instructions() { return ops_; }
    std::size_t size() const { return ops_.size(); }
    std::size_t num_measurements() const;

    Circuit &h(uint32_t q) { return gate1(Op::H, q); }
    Circuit &s(uint32_t q) { return gate1(Op::S, q); }
    Circuit &sdg(uint32_t q) { return gate1(Op::Sdg, q); }
    Circuit &x(uint32_t q) { return gate1(Op::X, q); }
    Circuit &y(uint32_t q) { return gate1(Op::Y, q); }
    Circuit &z(uint32_t q) { return gate1(Op::Z, q); }
    Circuit &rx(uint32_t q, double theta) { return rot(Op::Rx, q, theta); }
    Circuit &ry(uint32_t q, double theta) { return rot(Op::Ry, q, theta); }
    Circuit &rz(uint32_t q, double theta) { return rot(Op::Rz, q, theta); }
    Circuit &cnot(uint32_t c, uint32_t t);
    Circuit &cz(uint32_t a, uint32_t b);
    Circuit &measure(const PauliString &p, std::string tag = {});
    Circuit &measure_z(uint32_t q, std::string tag = {});
    Circuit &reset(uint32_t q);
    Circuit &noise(NoiseKind kind, std::vector<uint32_t> qubits, double p, NoiseClass cls = NoiseClass::None);
    Circuit &idle_dd(std::vector<uint32_t> qubits);
    Circuit &append(const Instruction &ins);
    /// Appends every instruction of another circuit on the same register size.
    Circuit &append(const Circuit &other);

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;

    std::string str() const;
    static Circuit from_text(std::string_view text);

    bool operator==(const Circuit &other) const {
        return num_qubits_ == other.num_qubits_ && ops_ == other.ops_;
    }

   private:
    Circuit &gate1(Op op, uint32_t q);
    Circuit &rot(Op op, uint32_t q, double angle);

    std::size_t num_qubits_ = 0;
    std::vector<Instruction> ops_;
};

}  // namespace floq

#endif
