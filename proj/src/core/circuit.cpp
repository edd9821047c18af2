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

#include "floq/core/circuit.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace floq {

bool Instruction::operator==(const Instruction &o) const {
    return op == o.op && qubits == o.qubits && angle == o.angle && pauli == o.pauli && tag == o.tag &&
           noise == o.noise && p == o.p && cls == o.cls;
}

bool is_single_qubit_gate(Op op) {
    switch (op) {
        case Op::H:
        case Op::S:
        case Op::Sdg:
        case Op::X:
        case Op::Y:
        case Op::Z:
        case Op::Rx:
        case Op::Ry:
        case Op::Rz:
            return true;
        default:
            return false;
    }
}

bool is_two_qubit_gate(Op op) { return op == Op::CNOT || op == Op::CZ; }

bool is_rotation(Op op) { return op == Op::Rx || op == Op::Ry || op == Op::Rz; }

bool is_clifford_angle(double angle) {
    double k = angle / (std::numbers::pi / 2);
    return std::abs(k - std::round(k)) < 1e-9;
}

int quarter_turns(double angle) {
    long k = std::lround(angle / (std::numbers::pi / 2));
    return (int)(((k % 4) + 4) % 4);
}

const char *op_name(Op op) {
    switch (op) {
        case Op::H:
            return "H";
        case Op::S:
            return "S";
        case Op::Sdg:
            return "S_DAG";
        case Op::X:
            return "X";
        case Op::Y:
            return "Y";
        case Op::Z:
            return "Z";
        case Op::Rx:
            return "RX";
        case Op::Ry:
            return "RY";
        case Op::Rz:
            return "RZ";
        case Op::CNOT:
            return "CNOT";
        case Op::CZ:
            return "CZ";
        case Op::MeasurePauli:
            return "MPP";
        case Op::ResetZ:
            return "R";
        case Op::Noise:
            return "NOISE";
        case Op::IdleDD:
            return "IDLE_DD";
    }
    return "?";
}

namespace {

const char *noise_kind_name(NoiseKind k) {
    switch (k) {
        case NoiseKind::Depolarize1:
            return "DEPOLARIZE1";
        case NoiseKind::Depolarize2:
            return "DEPOLARIZE2";
        case NoiseKind::XError:
            return "X_ERROR";
        case NoiseKind::YError:
            return "Y_ERROR";
        case NoiseKind::ZError:
            return "Z_ERROR";
    }
    return "?";
}

const char *noise_class_name(NoiseClass c) {
    switch (c) {
        case NoiseClass::None:
            return "none";
        case NoiseClass::OneQubit:
            return "1q";
        case NoiseClass::TwoQubit:
            return "2q";
        case NoiseClass::Measurement:
            return "m";
        case NoiseClass::Idle:
            return "dd";
    }
    return "?";
}

NoiseClass parse_noise_class(std::string_view s) {
    for (int k = 0; k < kNumNoiseClasses; k++) {
        if (s == noise_class_name((NoiseClass)k)) {
            return (NoiseClass)k;
        }
    }
    throw std::invalid_argument("unknown noise class: " + std::string(s));
}

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad number: " + std::string(s));
    }
    return v;
}

uint32_t parse_qubit(std::string_view s) {
    uint32_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad qubit index: " + std::string(s));
    }
    return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            i++;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') {
            j++;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

}  // namespace

std::size_t Circuit::num_measurements() const {
    std::size_t n = 0;
    for (const auto &ins : ops_) {
        n += ins.op == Op::MeasurePauli;
    }
    return n;
}

Circuit &Circuit::gate1(Op op, uint32_t q) {
    Instruction ins{op, {q}};
    ops_.push_back(std::move(ins));
    return *this;
}

Circuit &Circuit::rot(Op op, uint32_t q, double angle) {
    Instruction ins{op, {q}};
    ins.angle = angle;
    ops_.push_back(std::move(ins));
    return *this;
}

Circuit &Circuit::cnot(uint32_t c, uint32_t t) {
    ops_.push_back(Instruction{Op::CNOT, {c, t}});
    return *this;
}

Circuit &Circuit::cz(uint32_t a, uint32_t b) {
    ops_.push_back(Instruction{Op::CZ, {a, b}});
    return *this;
}

Circuit &Circuit::measure(const PauliString &p, std::string tag) {
    Instruction ins{Op::MeasurePauli, {}};
    for (auto q : p.support()) {
        ins.qubits.push_back((uint32_t)q);
    }
    ins.pauli = p;
    ins.tag = std::move(tag);
    ops_.push_back(std::move(ins));
    return *this;
}

Circuit &Circuit::measure_z(uint32_t q, std::string tag) {
    PauliString p(num_qubits_);
    p.set(q, 'Z');
    return measure(p, std::move(tag));
}

Circuit &Circuit::reset(uint32_t q) { return gate1(Op::ResetZ, q); }

Circuit &Circuit::noise(NoiseKind kind, std::vector<uint32_t> qubits, double p, NoiseClass cls) {
    Instruction ins{Op::Noise, std::move(qubits)};
    ins.noise = kind;
    ins.p = p;
    ins.cls = cls;
    ops_.push_back(std::move(ins));
    return *this;
}

Circuit &Circuit::idle_dd(std::vector<uint32_t> qubits) {
    ops_.push_back(Instruction{Op::IdleDD, std::move(qubits)});
    return *this;
}

Circuit &Circuit::append(const Instruction &ins) {
    ops_.push_back(ins);
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("appending circuit with a different register size");
    }
    ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
    return *this;
}

void Circuit::validate() const {
    std::unordered_set<std::string> tags;
    for (std::size_t k = 0; k < ops_.size(); k++) {
        const auto &ins = ops_[k];
        auto where = [&] { return " (instruction " + std::to_string(k) + ", " + op_name(ins.op) + ")"; };
        for (auto q : ins.qubits) {
            if (q >= num_qubits_) {
                throw std::invalid_argument("qubit index out of range" + where());
            }
        }
        if (is_single_qubit_gate(ins.op) || ins.op == Op::ResetZ) {
            if (ins.qubits.size() != 1) {
                throw std::invalid_argument("single-qubit instruction needs one target" + where());
            }
        }
        if (is_two_qubit_gate(ins.op)) {
            if (ins.qubits.size() != 2 || ins.qubits[0] == ins.qubits[1]) {
                throw std::invalid_argument("two-qubit gate needs two distinct targets" + where());
            }
        }
        if (is_rotation(ins.op) && !std::isfinite(ins.angle)) {
            throw std::invalid_argument("non-finite rotation angle" + where());
        }
        if (ins.op == Op::MeasurePauli) {
            if (ins.pauli.num_qubits() != num_qubits_) {
                throw std::invalid_argument("measured Pauli has wrong size" + where());
            }
            if (!ins.pauli.is_hermitian() || ins.pauli.weight() == 0) {
                throw std::invalid_argument("measured Pauli must be Hermitian and non-identity" + where());
            }
            if (!ins.tag.empty() && !tags.insert(ins.tag).second) {
                throw std::invalid_argument("duplicate measurement tag '" + ins.tag + "'" + where());
            }
        }
        if (ins.op == Op::Noise || ins.op == Op::MeasurePauli) {
            if (!(ins.p >= 0 && ins.p <= 1)) {
                throw std::invalid_argument("probability outside [0, 1]" + where());
            }
        }
        if (ins.op == Op::Noise) {
            std::size_t want = ins.noise == NoiseKind::Depolarize2 ? 2 : 1;
            if (ins.qubits.size() % want != 0 || ins.qubits.empty()) {
                throw std::invalid_argument("noise channel arity mismatch" + where());
            }
        }
    }
}

std::string Circuit::str() const {
    std::ostringstream out;
    out << "QUBITS " << num_qubits_ << "\n";
    for (const auto &ins : ops_) {
        switch (ins.op) {
            case Op::Rx:
            case Op::Ry:
            case Op::Rz:
                out << op_name(ins.op) << "(" << fmt_double(ins.angle) << ")";
                break;
            case Op::MeasurePauli:
                out << "MPP(" << fmt_double(ins.p) << "," << noise_class_name(ins.cls) << ") "
                    << (ins.tag.empty() ? "-" : ins.tag) << " " << ins.pauli.str() << "\n";
                continue;
            case Op::Noise:
                out << noise_kind_name(ins.noise) << "(" << fmt_double(ins.p) << "," << noise_class_name(ins.cls)
                    << ")";
                break;
            default:
                out << op_name(ins.op);
        }
        for (auto q : ins.qubits) {
            out << " " << q;
        }
        out << "\n";
    }
    return out.str();
}

Circuit Circuit::from_text(std::string_view text) {
    Circuit c;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        line_no++;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tok = split_ws(line);
        if (tok.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        auto fail = [&](const std::string &msg) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
        };
        if (!have_header) {
            if (tok[0] != "QUBITS" || tok.size() != 2) {
                fail("expected 'QUBITS <n>' header");
            }
            c.num_qubits_ = parse_qubit(tok[1]);
            have_header = true;
            continue;
        }
        std::string_view head = tok[0];
        std::string_view name = head, args;
        if (auto paren = head.find('('); paren != std::string_view::npos) {
            if (head.back() != ')') {
                fail("unbalanced parenthesis");
            }
            name = head.substr(0, paren);
            args = head.substr(paren + 1, head.size() - paren - 2);
        }
        auto split_args = [&]() {
            std::vector<std::string_view> a;
            std::size_t s = 0;
            while (true) {
                auto comma = args.find(',', s);
                a.push_back(args.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s));
                if (comma == std::string_view::npos) {
                    break;
                }
                s = comma + 1;
            }
            return a;
        };
        try {
            if (name == "MPP") {
                if (tok.size() != 3) {
                    fail("MPP expects a tag and a Pauli string");
                }
                Instruction ins{Op::MeasurePauli, {}};
                auto a = split_args();
                if (a.size() != 2) {
                    fail("MPP expects (p,class)");
                }
                ins.p = parse_double(a[0]);
                ins.cls = parse_noise_class(a[1]);
                ins.tag = tok[1] == "-" ? "" : std::string(tok[1]);
                ins.pauli = PauliString::from_text(tok[2]);
                for (auto q : ins.pauli.support()) {
                    ins.qubits.push_back((uint32_t)q);
                }
                c.ops_.push_back(std::move(ins));
                continue;
            }
            Instruction ins{Op::H, {}};
            bool found = false;
            for (NoiseKind k : {NoiseKind::Depolarize1, NoiseKind::Depolarize2, NoiseKind::XError, NoiseKind::YError,
                                NoiseKind::ZError}) {
                if (name == noise_kind_name(k)) {
                    auto a = split_args();
                    if (a.size() != 2) {
                        fail("noise channel expects (p,class)");
                    }
                    ins.op = Op::Noise;
                    ins.noise = k;
                    ins.p = parse_double(a[0]);
                    ins.cls = parse_noise_class(a[1]);
                    found = true;
                }
            }
            if (!found) {
                for (Op op : {Op::H, Op::S, Op::Sdg, Op::X, Op::Y, Op::Z, Op::Rx, Op::Ry, Op::Rz, Op::CNOT, Op::CZ,
                              Op::ResetZ, Op::IdleDD}) {
                    if (name == op_name(op)) {
                        ins.op = op;
                        found = true;
                    }
                }
                if (!found) {
                    fail("unknown instruction '" + std::string(name) + "'");
                }
                if (is_rotation(ins.op)) {
                    if (args.empty()) {
                        fail("rotation needs an angle");
                    }
                    ins.angle = parse_double(args);
                } else if (!args.empty()) {
                    fail("unexpected arguments");
                }
            }
            for (std::size_t k = 1; k < tok.size(); k++) {
                ins.qubits.push_back(parse_qubit(tok[k]));
            }
            c.ops_.push_back(std::move(ins));
        } catch (const std::invalid_argument &e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) {
                throw;
            }
            fail(msg);
        }
    }
    if (!have_header) {
        throw std::invalid_argument("missing 'QUBITS <n>' header");
    }
    c.validate();
    return c;
}

}  // namespace floq
