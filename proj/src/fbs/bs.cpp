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

#include "floq/fbs/bs.hpp"

#include <stdexcept>

#include "builder.hpp"
#include "floq/fbs/mwpm.hpp"

namespace floq {

using namespace detail;

BsGate parse_bs_gate(std::string_view t) {
    if (t == "X") {
        return BsGate::X;
    }
    if (t == "Y") {
        return BsGate::Y;
    }
    if (t == "Z") {
        return BsGate::Z;
    }
    if (t == "Y90") {
        return BsGate::Y90;
    }
    throw std::invalid_argument("unknown BS gate: " + std::string(t));
}

std::string bs_gate_name(BsGate g) {
    switch (g) {
        case BsGate::X:
            return "X";
        case BsGate::Y:
            return "Y";
        case BsGate::Z:
            return "Z";
        case BsGate::Y90:
            return "Y90";
    }
    return "?";
}

namespace {

// Stabilizer slots follow FbsCode::stabilizers: SXA, SZB, SXC, SZD.
// Lattice positions (0-based) coupled by each slot's ancilla, in CNOT order.
constexpr uint32_t kSlotAncillaPair[4][2] = {{4, 7}, {4, 5}, {1, 4}, {3, 4}};
constexpr uint32_t kSlotOrder[4][6] = {
    {3, 6, 4, 7, 5, 8},  // X4..X9 by columns
    {1, 2, 4, 5, 7, 8},  // Z2Z3 Z5Z6 Z8Z9 by rows
    {0, 3, 1, 4, 2, 5},  // X1..X6 by columns
    {0, 1, 3, 4, 6, 7},  // Z1Z2 Z4Z5 Z7Z8 by rows
};

uint32_t transpose(uint32_t pos) { return 3 * (pos % 3) + pos / 3; }

int track_line(int track) { return track % 2 == 1 ? 0 : 1; }
int track_check(int track) { return track >= 2 ? 0 : 1; }

struct Frame {
    std::array<uint32_t, 9> phys{0, 1, 2, 3, 4, 5, 6, 7, 8};
    std::array<int, 4> track{0, 1, 2, 3};  // stabilizer lineage measured by each slot

    PauliString map(const PauliString &pos_op) const {
        PauliString out(kNumData);
        for (auto q : pos_op.support()) {
            out.set(phys[q], pos_op.letter(q));
        }
        if (pos_op.sign() < 0) {
            out = -out;
        }
        return out;
    }
};

uint32_t ancilla_between(const FbsCode &code, uint32_t p, uint32_t q) {
    for (const auto &c : code.checks) {
        if ((c.data[0] == p && c.data[1] == q) || (c.data[0] == q && c.data[1] == p)) {
            return c.ancilla;
        }
    }
    throw std::logic_error("no ancilla between the two data qubits");
}

std::array<Parity, 4> emit_bs_round(Builder &b, const FbsCode &code, const Frame &f, int index) {
    std::array<Parity, 4> out;
    std::string prefix = "r" + std::to_string(index) + ".";
    if (b.opt.kind == Lowering::Direct) {
        b.idle_data();
        for (int k = 0; k < 4; k++) {
            out[k] = Parity::of(b.measure(on_register(f.map(code.stabilizers[k].op)), prefix + code.stabilizers[k].name));
        }
        return out;
    }
    std::array<uint32_t, 4> anc;
    for (int k = 0; k < 4; k++) {
        anc[k] = ancilla_between(code, f.phys[kSlotAncillaPair[k][0]], f.phys[kSlotAncillaPair[k][1]]);
        b.use_ancilla(anc[k]);
    }
    // X-type stabilizers first, then Z-type, so shared data qubits see no
    // interleaving of the two kinds.
    for (int k : {0, 2}) {
        b.circuit.h(anc[k]);
    }
    for (int layer = 0; layer < 6; layer++) {
        for (int k : {0, 2}) {
            b.cnot(anc[k], f.phys[kSlotOrder[k][layer]]);
        }
    }
    for (int k : {0, 2}) {
        b.circuit.h(anc[k]);
    }
    for (int layer = 0; layer < 6; layer++) {
        for (int k : {1, 3}) {
            b.cnot(f.phys[kSlotOrder[k][layer]], anc[k]);
        }
    }
    b.idle_data();
    for (int k = 0; k < 4; k++) {
        out[k] = b.read_ancilla(anc[k], prefix + code.stabilizers[k].name);
    }
    return out;
}

}  // namespace

BsExperiment compile_bs(const FbsCode &code, const BsSpec &spec) {
    if (spec.rounds < 0) {
        throw std::invalid_argument("rounds must be >= 0");
    }
    if (spec.basis != 'X' && spec.basis != 'Y' && spec.basis != 'Z') {
        throw std::invalid_argument("readout basis must be X, Y or Z");
    }
    for (const auto &g : spec.gates) {
        if (g.first < 0 || g.first > spec.rounds) {
            throw std::invalid_argument("BS gate inserted outside the experiment's rounds");
        }
    }
    BsExperiment exp;
    exp.basis = spec.basis;
    exp.rounds = spec.rounds;
    Builder b(spec.lowering);
    Frame f;
    std::array<std::optional<Parity>, 4> ref;  // per track

    const Eigenstate &s = spec.state;
    if (s.basis == 'Y') {
        b.circuit.ry(3, kHalfPi);
        b.circuit.ry(5, kHalfPi);
        b.circuit.rx(4, s.sign > 0 ? -kHalfPi : kHalfPi);
    } else {
        bool rows = s.basis == 'X';
        for (const auto &flag : emit_ghz(b, code, rows)) {
            exp.detectors.push_back({flag, 0, -1, 0});
        }
        if (s.sign < 0) {
            apply_letters(b, rows ? code.z_s : code.x_s);
        }
        for (auto &r : ref) {
            r = Parity(1);
        }
        exp.ft_encoding = true;
    }

    auto emit_gates = [&](int r) {
        for (const auto &[after, g] : spec.gates) {
            if (after != r) {
                continue;
            }
            switch (g) {
                case BsGate::X:
                    apply_letters(b, f.map(code.x_s));
                    break;
                case BsGate::Y:
                    apply_letters(b, f.map(code.y_s));
                    break;
                case BsGate::Z:
                    apply_letters(b, f.map(code.z_s));
                    break;
                case BsGate::Y90: {
                    for (uint32_t q = 0; q < kNumData; q++) {
                        b.circuit.ry(q, kHalfPi);
                    }
                    Frame next = f;
                    for (uint32_t p = 0; p < 9; p++) {
                        next.phys[p] = f.phys[transpose(p)];
                    }
                    next.track = {f.track[1], f.track[0], f.track[3], f.track[2]};
                    f = next;
                    break;
                }
            }
        }
    };
    auto compare = [&](int slot, const Parity &v, int slice) {
        int t = f.track[slot];
        if (ref[t]) {
            exp.detectors.push_back({v * *ref[t], slice, track_line(t), track_check(t)});
        }
        ref[t] = v;
    };

    exp.encode = {"encode", 0, b.circuit.size()};
    emit_gates(0);
    for (int i = 1; i <= spec.rounds; i++) {
        auto v = emit_bs_round(b, code, f, i);
        for (int k = 0; k < 4; k++) {
            compare(k, v[k], i);
        }
        emit_gates(i);
    }

    // Readout: rotate every data qubit to the basis of the logical (or of the
    // stabilizers that fit around it) and measure in Z.
    const PauliString &lp = code.static_logical(spec.basis);
    std::array<char, 9> pos_letters{};
    for (auto q : lp.support()) {
        pos_letters[q] = lp.letter(q);
    }
    std::vector<int> slots;
    if (spec.basis != 'Y') {
        char l = spec.basis;
        slots = l == 'X' ? std::vector<int>{0, 2} : std::vector<int>{1, 3};
        for (auto &c : pos_letters) {
            c = l;
        }
    }
    std::array<std::size_t, 9> idx{};
    for (uint32_t p = 0; p < 9; p++) {
        b.to_z(f.phys[p], pos_letters[p]);
    }
    for (uint32_t q = 0; q < kNumData; q++) {
        PauliString z(kNumQubits);
        z.set(q, 'Z');
        idx[q] = b.measure(z, "m.D" + std::to_string(q + 1));
    }
    auto parity = [&](const PauliString &pos_op) {
        Parity v(pos_op.sign());
        for (auto q : pos_op.support()) {
            v *= Parity::of(idx[f.phys[q]]);
        }
        return v;
    };
    for (int k : slots) {
        compare(k, parity(code.stabilizers[k].op), spec.rounds + 1);
    }
    exp.logical = parity(lp);
    if (!slots.empty()) {
        exp.decode_line = track_line(f.track[slots[0]]);
    }
    exp.final_positions = f.phys;
    exp.body = {"body", exp.encode.end, b.circuit.size()};
    exp.circuit = std::move(b.circuit);
    return exp;
}

int bs_correction(const BsExperiment &exp, const std::vector<int> &values) {
    if (values.size() != exp.detectors.size()) {
        throw std::invalid_argument("one value per detector expected");
    }
    if (exp.decode_line < 0) {
        return 1;
    }
    std::vector<LineEvent> events;
    for (std::size_t k = 0; k < values.size(); k++) {
        const auto &d = exp.detectors[k];
        if (values[k] < 0 && d.line == exp.decode_line) {
            events.push_back({d.slice, d.check});
        }
    }
    return decode_line(events).logical_flip ? -1 : 1;
}

}  // namespace floq
