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

#include "floq/fbs/experiment.hpp"

#include "builder.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace floq {

namespace {

using namespace detail;

// Placeholder record indices for stabilizer signs nothing measures.
constexpr uint32_t kUnresolved = 0xFFFFFF00u;

struct EncodeInfo {
    bool ft = false;
    std::array<std::optional<int>, 4> initial;
    std::optional<Parity> branch;  // Y_d^A value actually prepared
    std::vector<Parity> flags;     // GHZ ancilla readouts, +1 when fault-free
    std::optional<Parity> szd;     // measured S_Z^D value
};

EncodeInfo emit_encoding(Builder &b, const FbsCode &code, const StateLabel &label) {
    EncodeInfo info;
    const Eigenstate &s = label.s, &d = label.d;
    if (s.basis == 'Y') {
        // Product state with Y_s and the round-A dynamical operator fixed; the
        // stabilizers are projected by the first rounds.
        std::array<char, 9> prep{};
        prep[1] = '0';
        prep[7] = '0';
        prep[3] = '+';
        prep[5] = '+';
        prep[4] = s.sign > 0 ? 'i' : 'j';
        if (d.basis == 'Z') {
            prep[0] = d.sign > 0 ? '0' : '1';
            prep[2] = '0';
        } else if (d.basis == 'X') {
            prep[0] = d.sign > 0 ? '+' : '-';
        } else {
            prep[0] = d.sign > 0 ? 'i' : 'j';
            prep[2] = '0';
        }
        for (uint32_t q = 0; q < kNumData; q++) {
            switch (prep[q]) {
                case '1':
                    b.circuit.x(q);
                    break;
                case '+':
                    b.circuit.ry(q, kHalfPi);
                    break;
                case '-':
                    b.circuit.ry(q, -kHalfPi);
                    break;
                case 'i':
                    b.circuit.rx(q, -kHalfPi);
                    break;
                case 'j':
                    b.circuit.rx(q, kHalfPi);
                    break;
                default:
                    break;
            }
        }
        // Project S_Z^D: the round-B sign update needs it before round D measures it.
        info.szd = b.measure_data_pauli(code.stabilizers[3].op, anc(code, "z45"), "enc.szd");
        info.ft = false;
        return info;
    }
    bool static_x = s.basis == 'X';
    if (d.basis == 'Y' || static_x != (d.basis == 'X')) {
        // Static X: rows are Z-basis GHZ states. Static Z: columns in the X basis.
        info.flags = emit_ghz(b, code, static_x);
        info.initial = {1, 1, 1, 1};
        info.ft = d.basis != 'Y';
    } else if (static_x) {
        // Both X: |+>^9, so the X stabilizers are fixed and the Z ones random.
        for (uint32_t q = 0; q < kNumData; q++) {
            b.circuit.ry(q, kHalfPi);
        }
        info.initial = {1, std::nullopt, 1, std::nullopt};
        info.ft = true;
    } else {
        info.initial = {std::nullopt, 1, std::nullopt, 1};
        info.ft = true;
    }
    // Logical flips.
    if (s.sign < 0) {
        apply_letters(b, static_x ? code.z_s : code.x_s);
    }
    if (d.basis == 'Y') {
        Parity m1 = b.measure_data_pauli(data_pauli("Y1X4Z2"), anc(code, "z12"), "enc.y");
        Parity m2 = b.measure_data_pauli(data_pauli("Z2Z3"), anc(code, "z23"), "enc.zz");
        info.branch = m1 * m2;
    } else if (d.sign < 0) {
        apply_letters(b, d.basis == 'Z' ? code.x_d[0] : code.z_d[0]);
    }
    return info;
}

std::vector<std::optional<Parity>> emit_round(Builder &b, const FbsCode &code, Round q, int index) {
    std::vector<std::optional<Parity>> out(code.checks.size());
    const auto &sched = code.schedule[(int)q];
    std::string prefix = "r" + std::to_string(index) + ".";
    if (b.opt.kind == Lowering::Direct) {
        b.idle_data();
        for (int c : sched) {
            out[c] = Parity::of(b.measure(on_register(code.checks[c].op), prefix + code.checks[c].name));
        }
        return out;
    }
    for (int c : sched) {
        const auto &ch = code.checks[c];
        b.use_ancilla(ch.ancilla);
        if (ch.type == CheckType::X) {
            b.circuit.h(ch.ancilla);
        }
    }
    for (int k = 0; k < 2; k++) {
        for (int c : sched) {
            const auto &ch = code.checks[c];
            if (ch.type == CheckType::X) {
                b.cnot(ch.ancilla, ch.data[k]);
            } else {
                b.cnot(ch.data[k], ch.ancilla);
            }
        }
    }
    for (int c : sched) {
        const auto &ch = code.checks[c];
        if (ch.type == CheckType::X) {
            b.circuit.h(ch.ancilla);
        }
    }
    b.idle_data();
    for (int c : sched) {
        const auto &ch = code.checks[c];
        out[c] = b.read_ancilla(ch.ancilla, prefix + ch.name);
    }
    return out;
}

/// exp(-i angle/2 P) for a single-type data operator P, via parity on ancilla a.
void emit_parity_rotation(Builder &b, const PauliString &op, uint32_t a, double angle) {
    b.reset(a);
    auto sup = op.support();
    for (auto q : sup) {
        b.to_z((uint32_t)q, op.letter(q));
    }
    for (auto q : sup) {
        b.cnot((uint32_t)q, a);
    }
    b.circuit.rz(a, angle * op.sign());
    for (auto it = sup.rbegin(); it != sup.rend(); ++it) {
        b.cnot((uint32_t)*it, a);
    }
    for (auto q : sup) {
        b.from_z((uint32_t)q, op.letter(q));
    }
}

/// Controlled logical NOT from the static to the dynamical qubit after a B round.
/// Nearest-neighbour on the line D1 - a - D4 - b - D7; realises
/// SWAP(D1, D7) CX(D4 -> D1) CX(D4 -> D7) with both ancillas returned to |0>.
void emit_cnot(Builder &b, const FbsCode &code) {
    uint32_t line[5] = {0, anc(code, "x14"), 3, anc(code, "x47"), 6};
    b.reset(line[1]);
    b.reset(line[3]);
    static constexpr int seq[14][2] = {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {4, 3}, {3, 2},
                                       {2, 1}, {1, 0}, {3, 4}, {2, 3}, {1, 2}, {0, 1}, {4, 3}};
    for (const auto &g : seq) {
        b.cnot(line[g[0]], line[g[1]]);
    }
}

void check_gate_round(const GateSpec &g) {
    Round q = round_of(g.after_round);
    auto need = [&](Round want, const char *what) {
        if (g.after_round < 1 || q != want) {
            throw std::invalid_argument(std::string(what) + " must follow a round of type " + round_letter(want));
        }
    };
    switch (g.kind) {
        case GateSpec::Kind::DynamicRz:
            need(Round::B, "dynamical Rz");
            break;
        case GateSpec::Kind::DynamicRx:
            need(Round::C, "dynamical Rx");
            break;
        case GateSpec::Kind::Cnot:
            need(Round::B, "logical CNOT");
            break;
        default:
            break;
    }
}

void emit_gate(Builder &b, const FbsCode &code, const GateSpec &g) {
    check_gate_round(g);
    Round q = round_of(g.after_round);
    switch (g.kind) {
        case GateSpec::Kind::StaticPauli:
            if (g.pauli != 'I') {
                apply_letters(b, code.static_logical(g.pauli));
            }
            break;
        case GateSpec::Kind::DynamicPauli:
            if (g.pauli != 'I') {
                apply_letters(b, code.dynamical(g.pauli, q));
            }
            break;
        case GateSpec::Kind::StaticRz:
            emit_parity_rotation(b, code.z_s, anc(code, "x25"), g.angle);
            break;
        case GateSpec::Kind::StaticRx:
            emit_parity_rotation(b, code.x_s, anc(code, "z45"), g.angle);
            break;
        case GateSpec::Kind::DynamicRz:
            emit_parity_rotation(b, code.z_d[(int)q], anc(code, "z78"), g.angle);
            break;
        case GateSpec::Kind::DynamicRx:
            emit_parity_rotation(b, code.x_d[(int)q], anc(code, "x47"), g.angle);
            break;
        case GateSpec::Kind::Cnot:
            emit_cnot(b, code);
            break;
    }
}

int letter_slot(char p) { return p == 'X' ? 0 : p == 'Y' ? 1 : 2; }

template <class V>
PostRule gate_rule(const GateSpec &g, const SignFrameT<V> &frame, const V &szd) {
    PostRule r;
    auto to_parity = [](const V &v) {
        if constexpr (std::is_same_v<V, int>) {
            return Parity(v);
        } else {
            return v;
        }
    };
    switch (g.kind) {
        case GateSpec::Kind::DynamicRz:
            r.factor = to_parity(frame.gamma_z);
            r.dynamic_xyz = {false, true, true};
            break;
        case GateSpec::Kind::DynamicRx:
            r.factor = to_parity(frame.gamma_x);
            r.dynamic_xyz = {true, true, false};
            break;
        default:
            break;
    }
    (void)szd;
    return r;
}

}  // namespace

Eigenstate Eigenstate::parse(std::string_view t) {
    if (t == "0") {
        return {'Z', 1};
    }
    if (t == "1") {
        return {'Z', -1};
    }
    if (t == "+") {
        return {'X', 1};
    }
    if (t == "-") {
        return {'X', -1};
    }
    if (t == "+i" || t == "i") {
        return {'Y', 1};
    }
    if (t == "-i") {
        return {'Y', -1};
    }
    throw std::invalid_argument("unknown eigenstate label: " + std::string(t));
}

std::string Eigenstate::str() const {
    if (basis == 'Z') {
        return sign > 0 ? "0" : "1";
    }
    if (basis == 'X') {
        return sign > 0 ? "+" : "-";
    }
    return sign > 0 ? "+i" : "-i";
}

StateLabel StateLabel::parse(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw std::invalid_argument("state label must look like 's,d': " + std::string(text));
    }
    return {Eigenstate::parse(text.substr(0, comma)), Eigenstate::parse(text.substr(comma + 1))};
}

std::string StateLabel::str() const { return s.str() + "," + d.str(); }

bool StateLabel::fault_tolerant() const { return s.basis != 'Y' && d.basis != 'Y'; }

std::vector<StateLabel> all_labels() {
    std::vector<StateLabel> out;
    const char *names[6] = {"0", "1", "+", "-", "+i", "-i"};
    for (auto a : names) {
        for (auto b : names) {
            out.push_back({Eigenstate::parse(a), Eigenstate::parse(b)});
        }
    }
    return out;
}

GateSpec GateSpec::parse(std::string_view text, int after_round) {
    GateSpec g;
    g.after_round = after_round;
    auto paren = text.find('(');
    std::string_view name = text.substr(0, paren);
    if (paren != std::string_view::npos) {
        if (text.back() != ')') {
            throw std::invalid_argument("bad gate: " + std::string(text));
        }
        std::string_view arg = text.substr(paren + 1, text.size() - paren - 2);
        auto res = std::from_chars(arg.data(), arg.data() + arg.size(), g.angle);
        if (res.ec != std::errc() || res.ptr != arg.data() + arg.size() || !std::isfinite(g.angle)) {
            throw std::invalid_argument("bad gate angle: " + std::string(text));
        }
    }
    if (name == "CNOT") {
        g.kind = Kind::Cnot;
    } else if (name == "RZ_D") {
        g.kind = Kind::DynamicRz;
    } else if (name == "RX_D") {
        g.kind = Kind::DynamicRx;
    } else if (name == "RZ_S") {
        g.kind = Kind::StaticRz;
    } else if (name == "RX_S") {
        g.kind = Kind::StaticRx;
    } else if (name.size() == 3 && name[1] == '_' && (name[2] == 'S' || name[2] == 'D') &&
               std::string_view("IXYZ").find(name[0]) != std::string_view::npos) {
        g.kind = name[2] == 'S' ? Kind::StaticPauli : Kind::DynamicPauli;
        g.pauli = name[0];
    } else {
        throw std::invalid_argument("unknown gate: " + std::string(text));
    }
    bool rotation = g.kind == Kind::DynamicRz || g.kind == Kind::DynamicRx || g.kind == Kind::StaticRz ||
                    g.kind == Kind::StaticRx;
    if (rotation != (paren != std::string_view::npos)) {
        throw std::invalid_argument("rotations (and only rotations) take an angle: " + std::string(text));
    }
    return g;
}

std::string GateSpec::str() const {
    auto angle_text = [&] {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), angle);
        return "(" + std::string(buf, res.ptr) + ")";
    };
    switch (kind) {
        case Kind::StaticPauli:
            return std::string(1, pauli) + "_S";
        case Kind::DynamicPauli:
            return std::string(1, pauli) + "_D";
        case Kind::StaticRz:
            return "RZ_S" + angle_text();
        case Kind::StaticRx:
            return "RX_S" + angle_text();
        case Kind::DynamicRz:
            return "RZ_D" + angle_text();
        case Kind::DynamicRx:
            return "RX_D" + angle_text();
        case Kind::Cnot:
            return "CNOT";
    }
    return "?";
}

bool GateSpec::clifford() const {
    switch (kind) {
        case Kind::StaticRz:
        case Kind::StaticRx:
        case Kind::DynamicRz:
        case Kind::DynamicRx:
            return is_clifford_angle(angle);
        default:
            return true;
    }
}

ReadoutPlan plan_readout(const FbsCode &code, char basis_s, char basis_d, int round) {
    ReadoutPlan plan;
    const PauliString &ps = code.static_logical(basis_s);
    const PauliString &pd = code.dynamical(basis_d, round_of(round));
    std::array<char, 9> base{};
    for (const PauliString *op : {&ps, &pd}) {
        for (auto q : op->support()) {
            char l = op->letter(q);
            if (base[q] != 0 && base[q] != l) {
                throw std::logic_error("readout letters conflict on a data qubit");
            }
            base[q] = l;
        }
    }
    // Choose the largest set of stabilizers that fits around the logical letters.
    std::array<int, 4> order = {0, 1, 2, 3};
    std::vector<int> best;
    std::array<char, 9> best_letters = base;
    do {
        auto letters = base;
        std::vector<int> got;
        for (int k : order) {
            const auto &op = code.stabilizers[k].op;
            char l = code.stabilizers[k].type == CheckType::X ? 'X' : 'Z';
            bool ok = true;
            for (auto q : op.support()) {
                ok &= letters[q] == 0 || letters[q] == l;
            }
            if (ok) {
                for (auto q : op.support()) {
                    letters[q] = l;
                }
                got.push_back(k);
            }
        }
        std::sort(got.begin(), got.end());
        if (got.size() > best.size()) {
            best = got;
            best_letters = letters;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    plan.letters = best_letters;
    plan.stabilizers = best;
    plan.fault_tolerant = basis_s == basis_d && basis_s != 'Y';
    return plan;
}

const Region &CompiledExperiment::region(std::string_view name) const {
    for (const auto &r : regions) {
        if (r.name == name) {
            return r;
        }
    }
    throw std::out_of_range("no region named " + std::string(name));
}

CompiledExperiment compile_experiment(const FbsCode &code, const ExperimentSpec &spec) {
    if (spec.rounds < 0) {
        throw std::invalid_argument("rounds must be >= 0");
    }
    for (const auto &g : spec.gates) {
        if (g.after_round < 0 || g.after_round > spec.rounds) {
            throw std::invalid_argument("gate inserted outside the experiment's rounds");
        }
        check_gate_round(g);
    }
    for (char c : {spec.basis_s, spec.basis_d}) {
        if (c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("readout basis must be X, Y or Z");
        }
    }
    CompiledExperiment exp;
    Builder b(spec.lowering);
    auto mark = [&](const std::string &name, std::size_t begin) {
        exp.regions.push_back({name, begin, b.circuit.size()});
    };
    std::size_t start = b.circuit.size();
    EncodeInfo enc = emit_encoding(b, code, spec.state);
    mark("encode", start);
    exp.ft_encoding = enc.ft;
    auto emit_gates_after = [&](int r) {
        for (std::size_t k = 0; k < spec.gates.size(); k++) {
            if (spec.gates[k].after_round == r) {
                std::size_t s0 = b.circuit.size();
                emit_gate(b, code, spec.gates[k]);
                mark("gate" + std::to_string(k), s0);
            }
        }
    };
    emit_gates_after(0);
    for (int i = 1; i <= spec.rounds; i++) {
        std::size_t s0 = b.circuit.size();
        exp.round_outcomes.push_back(emit_round(b, code, round_of(i), i));
        mark("round" + std::to_string(i), s0);
        emit_gates_after(i);
    }

    ReadoutPlan plan = plan_readout(code, spec.basis_s, spec.basis_d, spec.rounds);
    exp.ft_readout = plan.fault_tolerant;
    std::array<std::optional<std::size_t>, 9> data_idx;
    if (spec.readout) {
        std::size_t s0 = b.circuit.size();
        for (uint32_t q = 0; q < kNumData; q++) {
            b.to_z(q, plan.letters[q]);
        }
        for (uint32_t q = 0; q < kNumData; q++) {
            PauliString z(kNumQubits);
            z.set(q, 'Z');
            data_idx[q] = b.measure(z, "m.D" + std::to_string(q + 1));
        }
        exp.readout_letters = plan.letters;
        for (auto &l : exp.readout_letters) {
            if (l == 0) {
                l = 'Z';
            }
        }
        mark("readout", s0);
    }
    auto data_parity = [&](const PauliString &op) {
        Parity p(op.sign());
        for (auto q : op.support()) {
            p *= Parity::of(*data_idx[q]);
        }
        return p;
    };
    auto measured_stabilizer = [&](int i, int k) -> std::optional<Parity> {
        const auto &st = code.stabilizers[k];
        if (round_of(i) != st.round) {
            return std::nullopt;
        }
        Parity v(1);
        for (const auto &n : st.checks) {
            const auto &o = exp.round_outcomes[i - 1][code.check_index(n)];
            if (!o) {
                return std::nullopt;
            }
            v *= *o;
        }
        return v;
    };
    std::vector<int> readout_stabs = spec.readout ? plan.stabilizers : std::vector<int>{};

    // Stabilizer values: known from the encoding, else the first measurement
    // (or readout) resolves them.
    for (int k = 0; k < 4; k++) {
        if (enc.initial[k]) {
            exp.initial_stabilizers[k] = Parity(*enc.initial[k]);
            continue;
        }
        if (k == 3 && enc.szd) {
            exp.initial_stabilizers[k] = *enc.szd;
            continue;
        }
        std::optional<Parity> v;
        for (int i = 1; i <= spec.rounds && !v; i++) {
            v = measured_stabilizer(i, k);
        }
        if (!v && std::find(readout_stabs.begin(), readout_stabs.end(), k) != readout_stabs.end()) {
            v = data_parity(code.stabilizers[k].op);
        }
        exp.initial_stabilizers[k] = v ? *v : Parity::of(kUnresolved + k);
    }

    // Sign frames.
    SignFrameT<Parity> frame;
    frame.stabilizers = exp.initial_stabilizers;
    if (enc.branch) {
        frame.gamma_x = *enc.branch * spec.state.d.sign;
    }
    exp.frames.push_back(frame);
    for (int i = 1; i <= spec.rounds; i++) {
        update_sign_frame(code, frame, exp.round_outcomes[i - 1]);
        exp.frames.push_back(frame);
    }

    // Detectors compare each stabilizer value with its previous value.
    for (const auto &f : enc.flags) {
        exp.detectors.push_back({f, 0, -1});
    }
    std::array<std::optional<Parity>, 4> ref;
    for (int k = 0; k < 4; k++) {
        if (enc.initial[k]) {
            ref[k] = Parity(*enc.initial[k]);
        }
    }
    if (enc.szd) {
        ref[3] = *enc.szd;
    }
    for (int i = 1; i <= spec.rounds; i++) {
        for (int k = 0; k < 4; k++) {
            auto v = measured_stabilizer(i, k);
            if (!v) {
                continue;
            }
            if (ref[k]) {
                exp.detectors.push_back({*v * *ref[k], i, k});
            }
            ref[k] = v;
        }
    }
    for (int k : readout_stabs) {
        if (ref[k]) {
            exp.detectors.push_back({data_parity(code.stabilizers[k].op) * *ref[k], spec.rounds + 1, k});
        }
    }

    // Logical observables with the gate corrections.
    Round qf = round_of(spec.rounds);
    exp.logical_s.op = on_register(code.static_logical(spec.basis_s));
    exp.logical_d.op = on_register(code.dynamical(spec.basis_d, qf));
    Parity fs(1), fd = frame.gamma(spec.basis_d);
    int ss = letter_slot(spec.basis_s), sd = letter_slot(spec.basis_d);
    for (const auto &g : spec.gates) {
        const auto &fr = exp.frames[g.after_round];
        PostRule rule = gate_rule(g, fr, exp.initial_stabilizers[3]);
        if (g.kind == GateSpec::Kind::Cnot) {
            // Static X/Y pick up Gamma_X; a -1 stabilizer flips the control sense.
            if (ss != 2) {
                fs *= fr.gamma_x;
            }
            if (sd != 0) {
                fd *= exp.initial_stabilizers[3];
            }
            continue;
        }
        if (rule.static_xyz[ss]) {
            fs *= rule.factor;
        }
        if (rule.dynamic_xyz[sd]) {
            fd *= rule.factor;
        }
    }
    auto strip = [](Parity &p) {
        bool hit = false;
        for (int k = 0; k < 4; k++) {
            auto &ix = p.indices();
            if (std::find(ix.begin(), ix.end(), kUnresolved + k) != ix.end()) {
                p *= Parity::of(kUnresolved + k);
                hit = true;
            }
        }
        return hit;
    };
    exp.ambiguous_s = strip(fs);
    exp.ambiguous_d = strip(fd);
    for (auto &st : exp.initial_stabilizers) {
        strip(st);
    }
    for (auto &fr : exp.frames) {
        strip(fr.gamma_x);
        strip(fr.gamma_z);
        for (auto &st : fr.stabilizers) {
            strip(st);
        }
    }
    exp.logical_s.factor = fs;
    exp.logical_d.factor = fd;
    if (spec.readout) {
        exp.logical_s.value = fs * data_parity(code.static_logical(spec.basis_s));
        exp.logical_d.value = fd * data_parity(code.dynamical(spec.basis_d, qf));
    } else {
        exp.logical_s.value = fs;
        exp.logical_d.value = fd;
    }
    exp.circuit = std::move(b.circuit);
    return exp;
}

EncodedState encode_circuit(const FbsCode &code, const StateLabel &label, const LoweringOptions &lowering) {
    Builder b(lowering);
    EncodeInfo info = emit_encoding(b, code, label);
    EncodedState out;
    out.circuit = std::move(b.circuit);
    out.fault_tolerant = info.ft;
    out.initial_stabilizers = info.initial;
    if (info.branch) {
        for (auto k : info.branch->indices()) {
            out.branch_measurements.push_back(k);
        }
    }
    for (const auto &f : info.flags) {
        out.flag_measurements.push_back(f.indices().front());
    }
    return out;
}

RoundCircuit stabilizer_round_circuit(const FbsCode &code, Round q, const LoweringOptions &lowering) {
    Builder b(lowering);
    auto out = emit_round(b, code, q, (int)q + 1);
    RoundCircuit rc;
    for (int c : code.schedule[(int)q]) {
        rc.check_measurement.push_back(out[c]->indices().back());
    }
    rc.circuit = std::move(b.circuit);
    return rc;
}

GateFragment logical_gate_circuit(const FbsCode &code, const GateSpec &gate, const SignFrame &frame,
                                  const LoweringOptions &lowering) {
    Builder b(lowering);
    emit_gate(b, code, gate);
    GateFragment g;
    g.circuit = std::move(b.circuit);
    if (gate.kind == GateSpec::Kind::Cnot) {
        // Two separate corrections; report the static one and fold the
        // stabilizer sign into the dynamical flags' factor when it is -1.
        g.rule.factor = Parity(frame.gamma_x);
        g.rule.static_xyz = {true, true, false};
        if (frame.stabilizers[3] < 0) {
            g.rule.dynamic_xyz = {false, true, true};
        }
    } else {
        g.rule = gate_rule(gate, frame, frame.stabilizers[3]);
    }
    return g;
}

LogicalOutcome logical_measurement(const FbsCode &code, char basis_s, char basis_d, int round,
                                   const std::array<int, 9> &data, const SignFrame &frame) {
    for (int v : data) {
        if (v != 1 && v != -1) {
            throw std::invalid_argument("data outcomes must be +1 or -1");
        }
    }
    ReadoutPlan plan = plan_readout(code, basis_s, basis_d, round);
    auto parity = [&](const PauliString &op) {
        int v = op.sign();
        for (auto q : op.support()) {
            v *= data[q];
        }
        return v;
    };
    LogicalOutcome out;
    out.value_s = parity(code.static_logical(basis_s));
    out.value_d = frame.gamma(basis_d) * parity(code.dynamical(basis_d, round_of(round)));
    for (int k : plan.stabilizers) {
        out.stabilizers.emplace_back(k, parity(code.stabilizers[k].op));
    }
    out.fault_tolerant = plan.fault_tolerant;
    return out;
}

std::vector<int> detect(const CompiledExperiment &exp, const std::vector<int8_t> &record) {
    std::vector<int> out;
    out.reserve(exp.detectors.size());
    for (const auto &d : exp.detectors) {
        out.push_back(d.parity.eval(record));
    }
    return out;
}

}  // namespace floq
