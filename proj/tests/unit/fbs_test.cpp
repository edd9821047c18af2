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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "floq/fbs/code.hpp"
#include "floq/fbs/experiment.hpp"
#include "floq/fbs/fault.hpp"
#include "floq/noise/noise.hpp"
#include "floq/tableau/simulator.hpp"
#include "floq/vector/state_vector.hpp"
#include "gtest/gtest.h"

using namespace floq;

namespace {

const FbsCode &code() {
    static const FbsCode c = build_code();
    return c;
}

struct Outcome {
    int s, d;
    bool quiet;
    bool ambiguous;
};

Outcome run_noiseless(const ExperimentSpec &spec, uint64_t seed) {
    auto exp = compile_experiment(code(), spec);
    MeasRecord rec = run_shot(exp.circuit, NoiseModel::noiseless(), seed);
    bool quiet = true;
    for (int v : detect(exp, rec.outcomes())) {
        quiet &= v == 1;
    }
    return {exp.logical_s.value.eval(rec), exp.logical_d.value.eval(rec), quiet,
            exp.ambiguous_s || exp.ambiguous_d};
}

int anticommute_sign(char gate, char basis) { return gate == 'I' || gate == basis ? 1 : -1; }

}  // namespace

TEST(FbsCode, BuildsAndRejectsBrokenSchedules) {
    EXPECT_NO_THROW(build_code());
    Schedule s = default_schedule();
    std::swap(s.rounds[0][0], s.rounds[1][0]);
    EXPECT_THROW(build_code(s), std::logic_error);
    Schedule t = default_schedule();
    t.rounds[2][1] = t.rounds[2][0];
    EXPECT_THROW(build_code(t), std::logic_error);
}

TEST(FbsCode, RoundTypes) {
    EXPECT_EQ(round_of(0), Round::A);
    EXPECT_EQ(round_of(1), Round::A);
    EXPECT_EQ(round_of(2), Round::B);
    EXPECT_EQ(round_of(3), Round::C);
    EXPECT_EQ(round_of(4), Round::D);
    EXPECT_EQ(round_of(5), Round::A);
}

TEST(Labels, ParseRoundTrip) {
    auto labels = all_labels();
    ASSERT_EQ(labels.size(), 36u);
    for (const auto &l : labels) {
        auto back = StateLabel::parse(l.str());
        EXPECT_EQ(back.s, l.s);
        EXPECT_EQ(back.d, l.d);
    }
    EXPECT_THROW(StateLabel::parse("0"), std::invalid_argument);
    EXPECT_THROW(Eigenstate::parse("2"), std::invalid_argument);
    for (const char *g : {"X_S", "Z_D", "I_S", "RZ_D(0.5)", "RX_S(-1.25)", "CNOT"}) {
        EXPECT_EQ(GateSpec::parse(g, 2).str(), g);
    }
    EXPECT_THROW(GateSpec::parse("RZ_D", 2), std::invalid_argument);
    EXPECT_THROW(GateSpec::parse("X_S(1)", 2), std::invalid_argument);
    EXPECT_THROW(GateSpec::parse("RZ_D(abc)", 2), std::invalid_argument);
}

TEST(Readout, PlanCoversLogicalsAndStabilizers) {
    for (int r = 0; r < 8; r++) {
        auto xx = plan_readout(code(), 'X', 'X', r);
        auto zz = plan_readout(code(), 'Z', 'Z', r);
        EXPECT_TRUE(xx.fault_tolerant);
        EXPECT_EQ(xx.stabilizers, (std::vector<int>{0, 2}));
        EXPECT_EQ(zz.stabilizers, (std::vector<int>{1, 3}));
        EXPECT_FALSE(plan_readout(code(), 'Y', 'Z', r).fault_tolerant);
    }
}

// Tableau memory: every label, several round counts, both lowerings.
TEST(Memory, NoiselessLogicalValuesAndQuietDetectors) {
    for (auto kind : {Lowering::Direct, Lowering::Ancilla}) {
        for (const auto &label : all_labels()) {
            for (int rounds : {0, 1, 2, 3, 4, 5, 7, 8}) {
                ExperimentSpec spec;
                spec.state = label;
                spec.rounds = rounds;
                spec.basis_s = label.s.basis;
                spec.basis_d = label.d.basis;
                spec.lowering.kind = kind;
                for (uint64_t seed = 0; seed < 3; seed++) {
                    auto o = run_noiseless(spec, seed * 7 + rounds);
                    SCOPED_TRACE(label.str() + " rounds=" + std::to_string(rounds));
                    EXPECT_FALSE(o.ambiguous);
                    EXPECT_EQ(o.s, label.s.sign);
                    EXPECT_EQ(o.d, label.d.sign);
                    EXPECT_TRUE(o.quiet);
                }
            }
        }
    }
}

TEST(Memory, ResetAndNativeCzVariants) {
    for (const char *l : {"+,0", "1,-", "0,0", "-,+", "+i,1", "0,-i"}) {
        auto label = StateLabel::parse(l);
        ExperimentSpec spec;
        spec.state = label;
        spec.rounds = 6;
        spec.basis_s = label.s.basis;
        spec.basis_d = label.d.basis;
        spec.lowering.reset_ancillas = true;
        spec.lowering.native_cz = true;
        auto o = run_noiseless(spec, 11);
        EXPECT_EQ(o.s, label.s.sign) << l;
        EXPECT_EQ(o.d, label.d.sign) << l;
        EXPECT_TRUE(o.quiet) << l;
    }
}

TEST(Gates, PauliGatesFlipAnticommutingReadouts) {
    for (char g : {'I', 'X', 'Y', 'Z'}) {
        for (bool dyn : {false, true}) {
            for (int after : {0, 1, 2, 3, 4}) {
                for (const char *l : {"0,+", "+,1", "-i,0", "1,+i"}) {
                    auto label = StateLabel::parse(l);
                    ExperimentSpec spec;
                    spec.state = label;
                    spec.rounds = 5;
                    spec.basis_s = label.s.basis;
                    spec.basis_d = label.d.basis;
                    spec.gates.push_back(GateSpec::parse(std::string(1, g) + (dyn ? "_D" : "_S"), after));
                    auto o = run_noiseless(spec, after);
                    int fs = dyn ? 1 : anticommute_sign(g, label.s.basis);
                    int fd = dyn ? anticommute_sign(g, label.d.basis) : 1;
                    EXPECT_EQ(o.s, label.s.sign * fs) << g << dyn << after << l;
                    EXPECT_EQ(o.d, label.d.sign * fd) << g << dyn << after << l;
                    EXPECT_TRUE(o.quiet);
                }
            }
        }
    }
}

TEST(Gates, CliffordRotationsWithSignRules) {
    const double h = std::numbers::pi / 2;
    struct Case {
        const char *gate;
        int after;
        const char *label;
        char bs, bd;
        int s, d;
    };
    // Rz(pi/2)|+> = |+i>; Rx(pi/2)|0> = |-i>; Rz(-pi/2)|+> = |-i>.
    std::vector<Case> cases = {
        {"RZ_D", 2, "0,+", 'Z', 'Y', 1, 1},   {"RZ_D", 6, "1,+", 'Z', 'Y', -1, 1},
        {"RX_D", 3, "+,0", 'X', 'Y', 1, -1},  {"RX_D", 7, "-,0", 'X', 'Y', -1, -1},
        {"RZ_S", 0, "+,0", 'Y', 'Z', 1, 1},   {"RZ_S", 3, "+,1", 'Y', 'Z', 1, -1},
        {"RX_S", 1, "0,+", 'Y', 'X', -1, 1},  {"RX_S", 4, "0,-", 'Y', 'X', -1, -1},
    };
    for (const auto &c : cases) {
        for (double sign : {1.0, -1.0}) {
            for (int extra : {0, 1, 2, 5}) {
                ExperimentSpec spec;
                spec.state = StateLabel::parse(c.label);
                spec.rounds = c.after + extra;
                spec.basis_s = c.bs;
                spec.basis_d = c.bd;
                GateSpec gate = GateSpec::parse(std::string(c.gate) + "(1)", c.after);
                gate.angle = sign * h;
                spec.gates.push_back(gate);
                auto o = run_noiseless(spec, 3 + extra);
                bool on_s = c.gate[3] == 'S';
                EXPECT_EQ(o.s, on_s ? c.s * (int)sign : c.s) << c.gate << " " << c.label << " " << extra;
                EXPECT_EQ(o.d, on_s ? c.d : c.d * (int)sign) << c.gate << " " << c.label << " " << extra;
                EXPECT_TRUE(o.quiet);
            }
        }
    }
}

TEST(Gates, CnotTruthTableAndBell) {
    struct Case {
        const char *label;
        char bs, bd;
        int s, d;
        bool joint;  // compare only the product
    };
    std::vector<Case> cases = {
        {"0,0", 'Z', 'Z', 1, 1, false},  {"0,1", 'Z', 'Z', 1, -1, false}, {"1,0", 'Z', 'Z', -1, -1, false},
        {"1,1", 'Z', 'Z', -1, 1, false}, {"+,+", 'X', 'X', 1, 1, false},  {"+,-", 'X', 'X', -1, -1, false},
        {"-,+", 'X', 'X', -1, 1, false}, {"+,0", 'X', 'X', 1, 1, true},   {"+,0", 'Z', 'Z', 1, 1, true},
        {"-,0", 'X', 'X', -1, 1, true},  {"+,1", 'Z', 'Z', -1, 1, true},
    };
    for (const auto &c : cases) {
        for (int after : {2, 6}) {
            for (int extra : {0, 1, 2, 3, 4}) {
                ExperimentSpec spec;
                spec.state = StateLabel::parse(c.label);
                spec.rounds = after + extra;
                spec.basis_s = c.bs;
                spec.basis_d = c.bd;
                spec.gates.push_back(GateSpec::parse("CNOT", after));
                for (uint64_t seed = 0; seed < 4; seed++) {
                    auto o = run_noiseless(spec, seed);
                    SCOPED_TRACE(std::string(c.label) + " after=" + std::to_string(after) + " extra=" +
                                 std::to_string(extra));
                    if (c.joint) {
                        EXPECT_EQ(o.s * o.d, c.s * c.d);
                    } else {
                        EXPECT_EQ(o.s, c.s);
                        EXPECT_EQ(o.d, c.d);
                    }
                    EXPECT_TRUE(o.quiet);
                }
            }
        }
    }
}

TEST(Gates, CnotLineCircuitMatchesTargetUnitary) {
    auto frag = logical_gate_circuit(code(), GateSpec::parse("CNOT", 2), SignFrame{});
    uint32_t map[kNumQubits];
    std::fill(std::begin(map), std::end(map), 99u);
    map[0] = 0;
    map[code().check("x14").ancilla] = 1;
    map[3] = 2;
    map[code().check("x47").ancilla] = 3;
    map[6] = 4;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 5; trial++) {
        StateVector a(5), b(5);
        std::vector<cplx> amp(32, 0);
        for (std::size_t k = 0; k < 32; k++) {
            if ((k & 0b01010) == 0) {
                amp[k] = cplx(g(rng), g(rng));
            }
        }
        a.mutable_amplitudes() = amp;
        b.mutable_amplitudes() = amp;
        for (const auto &ins : frag.circuit.instructions()) {
            if (ins.op == Op::ResetZ) {
                continue;
            }
            std::vector<uint32_t> q;
            for (auto x : ins.qubits) {
                ASSERT_NE(map[x], 99u);
                q.push_back(map[x]);
            }
            a.apply_gate(ins.op, q.data(), ins.angle);
        }
        b.cnot(2, 0);
        b.cnot(2, 4);
        b.cnot(0, 4);
        b.cnot(4, 0);
        b.cnot(0, 4);
        for (std::size_t k = 0; k < 32; k++) {
            EXPECT_NEAR(std::abs(a.amplitudes()[k] - b.amplitudes()[k]), 0, 1e-9);
        }
    }
}

TEST(Readout, RotationConventions) {
    // Ry(-pi/2) then Z reads X; Rx(pi/2) then Z reads Y.
    StateVector sv(1);
    sv.rotate(Op::Ry, 0, std::numbers::pi / 2);  // |+>
    sv.rotate(Op::Ry, 0, -std::numbers::pi / 2);
    EXPECT_NEAR(sv.expectation(PauliString::from_text("Z")), 1, 1e-12);
    StateVector sy(1);
    sy.rotate(Op::Rx, 0, -std::numbers::pi / 2);  // |+i>
    EXPECT_NEAR(sy.expectation(PauliString::from_text("Y")), 1, 1e-12);
    sy.rotate(Op::Rx, 0, std::numbers::pi / 2);
    EXPECT_NEAR(sy.expectation(PauliString::from_text("Z")), 1, 1e-12);
}

TEST(Fragments, RoundAndValueLevelReadout) {
    for (int q = 0; q < 4; q++) {
        auto rc = stabilizer_round_circuit(code(), (Round)q);
        EXPECT_EQ(rc.check_measurement.size(), 4u);
        EXPECT_DOUBLE_EQ(rc.duration_ns, kRoundNs);
    }
    std::array<int, 9> data;
    data.fill(1);
    data[0] = -1;  // D1
    SignFrame f;
    f.gamma_z = -1;
    auto out = logical_measurement(code(), 'Z', 'Z', 1, data, f);
    EXPECT_EQ(out.value_s, 1);
    EXPECT_EQ(out.value_d, 1);  // Z1Z3 = -1 times Gamma_Z = -1
    EXPECT_TRUE(out.fault_tolerant);
    EXPECT_EQ(out.stabilizers.size(), 2u);
}

namespace {

CompiledExperiment memory_experiment(const StateLabel &label, int rounds, char bs, char bd,
                                     std::vector<GateSpec> gates = {}) {
    ExperimentSpec spec;
    spec.state = label;
    spec.rounds = rounds;
    spec.basis_s = bs;
    spec.basis_d = bd;
    spec.gates = std::move(gates);
    return compile_experiment(code(), spec);
}

}  // namespace

TEST(FaultTolerance, EncodingsMatchTheirLabels) {
    for (const auto &label : all_labels()) {
        auto exp = memory_experiment(label, 8, label.s.basis, label.d.basis);
        auto rep = analyze_single_faults(exp, exp.region("encode"));
        EXPECT_GT(rep.num_faults, 0u);
        EXPECT_EQ(rep.fault_tolerant(), label.fault_tolerant()) << label.str();
        EXPECT_EQ(exp.ft_encoding, label.fault_tolerant()) << label.str();
    }
}

TEST(FaultTolerance, ReadoutBases) {
    for (const char *l : {"0,0", "+,+", "+,0", "0,+"}) {
        auto label = StateLabel::parse(l);
        for (int rounds : {4, 5, 6, 7}) {
            auto exp = memory_experiment(label, rounds, label.s.basis, label.d.basis);
            auto rep = analyze_single_faults(exp, exp.region("readout"));
            EXPECT_EQ(rep.fault_tolerant(), label.s.basis == label.d.basis) << l << " r=" << rounds;
        }
    }
}

TEST(FaultTolerance, TransversalPaulisAndAncillaGates) {
    auto label = StateLabel::parse("0,0");
    for (const char *g : {"X_S", "Y_S", "Z_S", "X_D", "Y_D", "Z_D"}) {
        for (int after : {1, 2, 3, 4}) {
            auto exp = memory_experiment(label, after + 6, 'Z', 'Z', {GateSpec::parse(g, after)});
            EXPECT_TRUE(analyze_single_faults(exp, exp.region("gate0")).fault_tolerant()) << g << after;
        }
    }
    auto plus = StateLabel::parse("+,+");
    GateSpec rz = GateSpec::parse("RZ_D(1)", 2);
    rz.angle = std::numbers::pi / 2;
    auto e1 = memory_experiment(plus, 8, 'X', 'Y', {rz});
    EXPECT_FALSE(analyze_single_faults(e1, e1.region("gate0")).fault_tolerant());
    auto e2 = memory_experiment(StateLabel::parse("+,0"), 8, 'X', 'X', {GateSpec::parse("CNOT", 2)});
    EXPECT_FALSE(analyze_single_faults(e2, e2.region("gate0")).fault_tolerant());
}

TEST(Detectors, InjectedXBeforeRoundBFiresZDetector) {
    auto exp = memory_experiment(StateLabel::parse("0,0"), 6, 'Z', 'Z');
    const auto &r2 = exp.region("round2");
    std::vector<Parity> ps;
    for (const auto &d : exp.detectors) {
        ps.push_back(d.parity);
    }
    auto flips = propagate_faults(exp.circuit, {{r2.begin, 4, 'X'}}, ps);
    bool z_fired = false;
    for (std::size_t k = 0; k < exp.detectors.size(); k++) {
        if (flips[0][k]) {
            ASSERT_GE(exp.detectors[k].stabilizer, 0);
            EXPECT_EQ(code().stabilizers[exp.detectors[k].stabilizer].type, CheckType::Z);
            z_fired |= exp.detectors[k].round == 2;
        }
    }
    EXPECT_TRUE(z_fired);
}
