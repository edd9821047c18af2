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
// Private circuit builder shared by the FBS and BS compilers.
#ifndef FLOQ_SRC_FBS_BUILDER_HPP
#define FLOQ_SRC_FBS_BUILDER_HPP

#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "floq/core/circuit.hpp"
#include "floq/core/record.hpp"
#include "floq/fbs/code.hpp"
#include "floq/fbs/experiment.hpp"

namespace floq::detail {

constexpr double kHalfPi = std::numbers::pi / 2;

inline uint32_t anc(const FbsCode &code, std::string_view check) { return code.check(check).ancilla; }

/// Appends instructions while tracking record indices and ancilla readout history.
class Builder {
   public:
    explicit Builder(const LoweringOptions &opt) : circuit(kNumQubits), opt(opt), last_raw(kNumQubits) {}

    Circuit circuit;
    LoweringOptions opt;
    std::size_t num_meas = 0;
    std::vector<std::optional<std::size_t>> last_raw;

    void cnot(uint32_t c, uint32_t t) {
        if (opt.native_cz) {
            circuit.h(t);
            circuit.cz(c, t);
            circuit.h(t);
        } else {
            circuit.cnot(c, t);
        }
    }
    std::size_t measure(const PauliString &p, const std::string &tag) {
        circuit.measure(p, tag);
        return num_meas++;
    }
    void reset(uint32_t q) {
        circuit.reset(q);
        last_raw[q].reset();
    }
    void use_ancilla(uint32_t a) {
        if (opt.reset_ancillas && last_raw[a]) {
            reset(a);
        }
    }
    /// Z readout of an ancilla folded with its previous readout.
    Parity read_ancilla(uint32_t a, const std::string &tag) {
        PauliString z(kNumQubits);
        z.set(a, 'Z');
        std::size_t idx = measure(z, tag);
        Parity p = Parity::of(idx);
        if (last_raw[a]) {
            p *= Parity::of(*last_raw[a]);
        }
        last_raw[a] = idx;
        return p;
    }
    void idle_data() {
        std::vector<uint32_t> d;
        for (uint32_t q = 0; q < kNumData; q++) {
            d.push_back(q);
        }
        circuit.idle_dd(d);
    }
    /// Rotation taking `letter` to Z for readout (and its inverse).
    void to_z(uint32_t q, char letter) {
        if (letter == 'X') {
            circuit.ry(q, -kHalfPi);
        } else if (letter == 'Y') {
            circuit.rx(q, kHalfPi);
        }
    }
    void from_z(uint32_t q, char letter) {
        if (letter == 'X') {
            circuit.ry(q, kHalfPi);
        } else if (letter == 'Y') {
            circuit.rx(q, -kHalfPi);
        }
    }
    /// Measures a Hermitian data operator, directly or through ancilla `a`.
    Parity measure_data_pauli(const PauliString &data_op, uint32_t a, const std::string &tag) {
        PauliString full = on_register(data_op);
        if (opt.kind == Lowering::Direct) {
            return Parity::of(measure(full, tag));
        }
        use_ancilla(a);
        auto sup = data_op.support();
        for (auto q : sup) {
            to_z((uint32_t)q, data_op.letter(q));
        }
        for (auto q : sup) {
            cnot((uint32_t)q, a);
        }
        for (auto q : sup) {
            from_z((uint32_t)q, data_op.letter(q));
        }
        idle_data();
        return read_ancilla(a, tag) * data_op.sign();
    }
};

inline void ghz_line(Builder &b, uint32_t end0, uint32_t mid, uint32_t end1, uint32_t a0, uint32_t a1) {
    b.circuit.ry(mid, kHalfPi);
    b.cnot(mid, a0);
    b.cnot(a0, end0);
    b.cnot(mid, a1);
    b.cnot(a1, end1);
    b.cnot(end0, a0);
    b.cnot(end1, a1);
}

inline void apply_letters(Builder &b, const PauliString &op) {
    for (auto q : op.support()) {
        switch (op.letter(q)) {
            case 'X':
                b.circuit.x((uint32_t)q);
                break;
            case 'Y':
                b.circuit.y((uint32_t)q);
                break;
            default:
                b.circuit.z((uint32_t)q);
        }
    }
}

/// Z-basis GHZ states on the three rows (rows = true) or X-basis GHZ states on
/// the three columns, followed by the ancilla flag readouts (+1 when fault-free).
inline std::vector<Parity> emit_ghz(Builder &b, const FbsCode &code, bool rows) {
    std::vector<uint32_t> flags;
    for (uint32_t k = 0; k < 3; k++) {
        uint32_t q0 = rows ? 3 * k : k, step = rows ? 1 : 3;
        uint32_t q1 = q0 + step, q2 = q1 + step;
        std::string t = rows ? "z" : "x";
        std::string n0 = std::to_string(q0 + 1), n1 = std::to_string(q1 + 1), n2 = std::to_string(q2 + 1);
        uint32_t a0 = anc(code, t + n0 + n1), a1 = anc(code, t + n1 + n2);
        ghz_line(b, q0, q1, q2, a0, a1);
        flags.push_back(a0);
        flags.push_back(a1);
    }
    if (!rows) {
        for (uint32_t q = 0; q < kNumData; q++) {
            b.circuit.ry(q, -kHalfPi);
        }
    }
    b.idle_data();
    std::vector<Parity> out;
    for (auto a : flags) {
        out.push_back(b.read_ancilla(a, "enc.flag" + std::to_string(a)));
    }
    return out;
}

}  // namespace floq::detail

#endif
