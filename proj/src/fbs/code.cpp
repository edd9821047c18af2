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

#include "floq/fbs/code.hpp"

#include <set>
#include <stdexcept>

#include "floq/core/rng.hpp"
#include "floq/fbs/sign_frame.hpp"
#include "floq/tableau/tableau.hpp"

namespace floq {

Round round_of(int i) {
    if (i < 0) {
        throw std::invalid_argument("negative round index");
    }
    switch (i % 4) {
        case 1:
            return Round::A;
        case 2:
            return Round::B;
        case 3:
            return Round::C;
        default:
            return i == 0 ? Round::A : Round::D;
    }
}

char round_letter(Round r) { return "ABCD"[(int)r]; }

PauliString data_pauli(std::string_view text) {
    PauliString p(kNumData);
    for (std::size_t k = 0; k < text.size(); k += 2) {
        if (k + 1 >= text.size()) {
            throw std::invalid_argument("bad data operator: " + std::string(text));
        }
        char letter = text[k];
        int q = text[k + 1] - '1';
        if (q < 0 || q >= (int)kNumData) {
            throw std::invalid_argument("bad data qubit in: " + std::string(text));
        }
        PauliString single(kNumData);
        single.set((std::size_t)q, letter);
        p *= single;
    }
    return p;
}

PauliString on_register(const PauliString &data_op, std::size_t num_qubits) { return data_op.resized(num_qubits); }

Schedule default_schedule() {
    Schedule s;
    s.rounds[0] = {"x47", "x58", "x69", "x25"};
    s.rounds[1] = {"z23", "z56", "z89", "z45"};
    s.rounds[2] = {"x14", "x25", "x36", "x58"};
    s.rounds[3] = {"z12", "z45", "z78", "z56"};
    return s;
}

int FbsCode::check_index(std::string_view name) const {
    for (std::size_t k = 0; k < checks.size(); k++) {
        if (checks[k].name == name) {
            return (int)k;
        }
    }
    throw std::invalid_argument("unknown gauge check: " + std::string(name));
}

const PauliString &FbsCode::dynamical(char p, Round q) const {
    switch (p) {
        case 'X':
            return x_d[(int)q];
        case 'Z':
            return z_d[(int)q];
        case 'Y':
            return y_d[(int)q];
        default:
            throw std::invalid_argument("dynamical logical must be X, Y or Z");
    }
}

const PauliString &FbsCode::static_logical(char p) const {
    switch (p) {
        case 'X':
            return x_s;
        case 'Z':
            return z_s;
        case 'Y':
            return y_s;
        default:
            throw std::invalid_argument("static logical must be X, Y or Z");
    }
}

namespace {

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw std::invalid_argument("code invariant violated: " + what);
    }
}

void run_preservation_oracle(const FbsCode &code) {
    for (char pd : {'X', 'Z'}) {
        for (uint64_t seed = 0; seed < 3; seed++) {
            KeyedStream rs(hash_key(0xc0de, seed, (uint64_t)pd));
            Tableau t(kNumData);
            SignFrame frame;
            for (int k = 0; k < 4; k++) {
                frame.stabilizers[k] = t.measure(code.stabilizers[k].op, rs.bit());
            }
            t.measure(code.x_s, rs.bit());
            int v0 = t.measure(code.dynamical(pd, Round::A), rs.bit());
            for (int i = 1; i <= 8; i++) {
                Round q = round_of(i);
                std::vector<std::optional<int>> out(code.checks.size());
                for (int c : code.schedule[(int)q]) {
                    out[c] = t.measure(code.checks[c].op, rs.bit());
                }
                update_sign_frame(code, frame, out);
                int seen = t.peek(code.dynamical(pd, q));
                require(seen != 0 && frame.gamma(pd) * seen == v0,
                        std::string("dynamical ") + pd + " logical not preserved through round " + std::to_string(i));
                for (int k = 0; k < 4; k++) {
                    require(t.peek(code.stabilizers[k].op) == frame.stabilizers[k],
                            "stabilizer " + code.stabilizers[k].name + " changed by the schedule");
                }
            }
        }
    }
}

}  // namespace

FbsCode build_code(const Schedule &schedule, bool run_oracle) {
    FbsCode code;
    const char *names[kNumChecks] = {"z12", "z23", "z45", "z56", "z78", "z89",
                                     "x14", "x25", "x36", "x47", "x58", "x69"};
    for (std::size_t k = 0; k < kNumChecks; k++) {
        std::string n = names[k];
        Check c;
        c.name = n;
        c.type = n[0] == 'x' ? CheckType::X : CheckType::Z;
        char letter = n[0] == 'x' ? 'X' : 'Z';
        c.data = {(uint32_t)(n[1] - '1'), (uint32_t)(n[2] - '1')};
        c.op = data_pauli(std::string{letter, n[1], letter, n[2]});
        c.ancilla = (uint32_t)(kNumData + k);
        code.checks.push_back(c);
    }
    code.stabilizers[0] = {"SXA", CheckType::X, data_pauli("X4X5X6X7X8X9"), Round::A, {"x47", "x58", "x69"}};
    code.stabilizers[1] = {"SZB", CheckType::Z, data_pauli("Z2Z3Z5Z6Z8Z9"), Round::B, {"z23", "z56", "z89"}};
    code.stabilizers[2] = {"SXC", CheckType::X, data_pauli("X1X2X3X4X5X6"), Round::C, {"x14", "x25", "x36"}};
    code.stabilizers[3] = {"SZD", CheckType::Z, data_pauli("Z1Z2Z4Z5Z7Z8"), Round::D, {"z12", "z45", "z78"}};
    code.x_s = data_pauli("X4X5X6");
    code.z_s = data_pauli("Z2Z5Z8");
    code.y_s = data_pauli("X4Y5X6Z2Z8");
    const char *xd[4] = {"X1X4", "X1X7", "X4X7", "X3X9"};
    const char *zd[4] = {"Z1Z3", "Z7Z8", "Z7Z9", "Z8Z9"};
    const char *yd[4] = {"Y1Z3X4", "X1Y7Z8", "X4Y7Z9", "X3Z8Y9"};
    for (int q = 0; q < 4; q++) {
        code.x_d[q] = data_pauli(xd[q]);
        code.z_d[q] = data_pauli(zd[q]);
        code.y_d[q] = data_pauli(yd[q]);
    }
    code.gamma_x[0] = {{{"x69", 0}, {"x25", 0}}, {2}};
    code.gamma_z[0] = {{{"z12", -1}, {"z56", -1}}, {1}};
    code.gamma_x[1] = {{{"x47", -1}}, {}};
    code.gamma_z[1] = {{{"z23", 0}, {"z45", 0}}, {3}};
    code.gamma_x[2] = {{{"x14", 0}}, {}};
    code.gamma_z[2] = {{{"z89", -1}}, {}};
    code.gamma_x[3] = {{{"x36", -1}, {"x58", -1}}, {0}};
    code.gamma_z[3] = {{{"z78", 0}}, {}};

    // Schedule: known checks, right type per round, no repeats.
    for (int q = 0; q < 4; q++) {
        CheckType want = (q % 2 == 0) ? CheckType::X : CheckType::Z;
        std::set<std::string> seen;
        require(!schedule.rounds[q].empty(), std::string("round ") + round_letter((Round)q) + " is empty");
        for (const auto &n : schedule.rounds[q]) {
            int idx;
            try {
                idx = code.check_index(n);
            } catch (const std::invalid_argument &) {
                require(false, "round " + std::string(1, round_letter((Round)q)) + " lists unknown check " + n);
                idx = -1;
            }
            require(code.checks[idx].type == want,
                    "round " + std::string(1, round_letter((Round)q)) + " mixes check types (" + n + ")");
            require(seen.insert(n).second, "round " + std::string(1, round_letter((Round)q)) + " repeats " + n);
            code.schedule[q].push_back(idx);
        }
    }
    auto in_round = [&](const std::string &n, Round q) {
        for (int c : code.schedule[(int)q]) {
            if (code.checks[c].name == n) {
                return true;
            }
        }
        return false;
    };
    // Each stabilizer is the product of three checks of its round.
    for (const auto &s : code.stabilizers) {
        PauliString prod(kNumData);
        for (const auto &n : s.checks) {
            require(in_round(n, s.round), s.name + " needs " + n + " in round " + round_letter(s.round));
            prod *= code.check(n).op;
        }
        require(prod == s.op, "product of the checks of " + s.name + " is not the stabilizer");
        for (const auto &c : code.checks) {
            require(s.op.commutes(c.op), s.name + " does not commute with " + c.name);
        }
    }
    // Static logicals commute with every check and form a qubit.
    for (const auto &c : code.checks) {
        require(code.x_s.commutes(c.op) && code.z_s.commutes(c.op), "static logical anticommutes with " + c.name);
    }
    require(!code.x_s.commutes(code.z_s), "static X and Z must anticommute");
    PauliString iy = code.x_s * code.z_s;
    iy.set_log_i(iy.log_i() + 1);
    require(iy == code.y_s, "static Y must equal i X Z");
    // Dynamical logicals per round type.
    for (int q = 0; q < 4; q++) {
        const auto &x = code.x_d[q], &z = code.z_d[q], &y = code.y_d[q];
        require(!x.commutes(z), std::string("dynamical X and Z anticommute in round ") + round_letter((Round)q));
        PauliString ixz = x * z;
        ixz.set_log_i(ixz.log_i() + 1);
        require(ixz == y, std::string("dynamical Y = i X Z in round ") + round_letter((Round)q));
        for (int c : code.schedule[q]) {
            require(x.commutes(code.checks[c].op) && z.commutes(code.checks[c].op),
                    std::string("dynamical logical of round ") + round_letter((Round)q) + " anticommutes with " +
                        code.checks[c].name);
        }
        for (const auto &s : code.stabilizers) {
            require(x.commutes(s.op) && z.commutes(s.op), "dynamical logical anticommutes with " + s.name);
        }
        for (const auto *st : {&code.x_s, &code.z_s}) {
            require(x.commutes(*st) && z.commutes(*st), "dynamical and static logicals must commute");
        }
    }
    // Sign updates: P^Q(i) P^Q(i-1) equals the product of the referenced outcomes.
    for (int q = 0; q < 4; q++) {
        Round cur = (Round)q, prev = (Round)((q + 3) % 4);
        for (char p : {'X', 'Z'}) {
            const GammaRule &rule = p == 'X' ? code.gamma_x[q] : code.gamma_z[q];
            PauliString prod(kNumData);
            for (const auto &t : rule.terms) {
                Round where = t.offset == 0 ? cur : prev;
                require(in_round(t.check, where), std::string("sign update of round ") + round_letter(cur) +
                                                      " reads " + t.check + " which round " + round_letter(where) +
                                                      " does not measure");
                prod *= code.check(t.check).op;
            }
            for (int k : rule.stabilizers) {
                prod *= code.stabilizers[k].op;
            }
            PauliString step = code.dynamical(p, cur) * code.dynamical(p, prev);
            require(step == prod, std::string("sign update identity fails for ") + p + " in round " +
                                      round_letter(cur));
        }
    }
    if (run_oracle) {
        run_preservation_oracle(code);
    }
    return code;
}

void update_sign_frame(const FbsCode &code, SignFrame &frame, const std::map<std::string, int> &outcomes) {
    std::vector<std::optional<int>> v(code.checks.size());
    for (const auto &[name, value] : outcomes) {
        if (value != 1 && value != -1) {
            throw std::invalid_argument("check outcome must be +1 or -1");
        }
        v[code.check_index(name)] = value;
    }
    update_sign_frame(code, frame, v);
}

}  // namespace floq
