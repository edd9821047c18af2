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
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "floq/noise/noise.hpp"
#include "floq/tableau/simulator.hpp"
#include "floq/tableau/tableau.hpp"
#include "floq/vector/state_vector.hpp"
#include "gtest/gtest.h"

using namespace floq;

namespace {

Circuit random_clifford_circuit(std::size_t n, std::size_t gates, std::size_t meas, std::mt19937_64 &rng) {
    Circuit c(n);
    std::size_t placed = 0;
    for (std::size_t g = 0; g < gates; g++) {
        uint32_t a = rng() % n, b = (a + 1 + rng() % (n - 1)) % n;
        switch (rng() % 9) {
            case 0:
                c.h(a);
                break;
            case 1:
                c.s(a);
                break;
            case 2:
                c.sdg(a);
                break;
            case 3:
                c.cnot(a, b);
                break;
            case 4:
                c.cz(a, b);
                break;
            case 5:
                c.rx(a, std::numbers::pi / 2 * (double)(rng() % 4));
                break;
            case 6:
                c.ry(a, -std::numbers::pi / 2);
                break;
            case 7:
                c.y(a);
                break;
            default:
                c.h(b);
        }
        if (placed < meas && rng() % (gates / meas + 1) == 0) {
            PauliString p(n);
            while (p.weight() == 0) {
                for (std::size_t q = 0; q < n; q++) {
                    p.set(q, "IIXYZ"[rng() % 5]);
                }
            }
            p.set_log_i(rng() % 2 ? 2 : 0);
            c.measure(p);
            placed++;
        }
    }
    while (placed < meas) {
        PauliString p(n);
        p.set(rng() % n, "XYZ"[rng() % 3]);
        c.measure(p);
        placed++;
    }
    return c;
}

}  // namespace

TEST(Tableau, BellStateMeasurements) {
    Tableau t(2);
    t.h(0);
    t.cnot(0, 1);
    EXPECT_EQ(t.peek(PauliString::from_text("XX")), 1);
    EXPECT_EQ(t.peek(PauliString::from_text("ZZ")), 1);
    EXPECT_EQ(t.peek(PauliString::from_text("-YY")), 1);
    EXPECT_EQ(t.peek(PauliString::from_text("ZI")), 0);
    int v = t.measure(PauliString::from_text("ZI"), true);
    EXPECT_EQ(v, -1);
    EXPECT_EQ(t.peek(PauliString::from_text("IZ")), -1);
}

TEST(Tableau, CliffordRotationsMatchStateVector) {
    for (Op op : {Op::Rx, Op::Ry, Op::Rz}) {
        for (int k = 0; k < 4; k++) {
            for (const char *prep : {"X", "Y", "Z"}) {
                Tableau t(1);
                StateVector sv(1);
                // Prepare a +1 eigenstate of `prep`.
                if (prep[0] == 'X') {
                    t.h(0), sv.h(0);
                } else if (prep[0] == 'Y') {
                    t.h(0), t.s(0), sv.h(0), sv.phase(0, {0, 1});
                }
                Instruction ins{op, {0}};
                ins.angle = k * std::numbers::pi / 2;
                t.apply_clifford(ins);
                sv.rotate(op, 0, ins.angle);
                for (const char *obs : {"X", "Y", "Z"}) {
                    auto p = PauliString::from_text(obs);
                    EXPECT_NEAR(t.peek(p), sv.expectation(p), 1e-12) << op_name(op) << k << prep << obs;
                }
            }
        }
    }
}

TEST(Tableau, EverySampledRecordIsAnOracleBranch) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; trial++) {
        auto c = random_clifford_circuit(5, 30, 5, rng);
        std::vector<Parity> tracked;
        for (std::size_t m = 0; m < c.num_measurements(); m++) {
            tracked.push_back(Parity::of(m));
        }
        std::set<std::vector<int>> allowed;
        for (const auto &b : enumerate_branches(c, tracked)) {
            allowed.insert(b.tracked);
        }
        TableauShotRunner runner(c);
        for (uint64_t shot = 0; shot < 50; shot++) {
            const auto &out = runner.run(9, shot);
            EXPECT_TRUE(allowed.count(std::vector<int>(out.begin(), out.end()))) << c.str();
        }
    }
}

TEST(Tableau, SampledDistributionMatchesExactProbabilities) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; trial++) {
        auto c = random_clifford_circuit(4, 24, 3, rng);
        std::vector<Parity> tracked;
        for (std::size_t m = 0; m < 3; m++) {
            tracked.push_back(Parity::of(m));
        }
        auto branches = enumerate_branches(c, tracked);
        std::map<std::vector<int>, double> exact;
        for (const auto &b : branches) {
            exact[b.tracked] += b.prob;
        }
        std::map<std::vector<int>, double> freq;
        TableauShotRunner runner(c);
        const int shots = 20000;
        for (int s = 0; s < shots; s++) {
            const auto &out = runner.run(1, s);
            freq[std::vector<int>(out.begin(), out.end())] += 1.0 / shots;
        }
        double tvd = 0;
        for (auto &[k, v] : exact) {
            tvd += std::abs(v - freq[k]);
        }
        for (auto &[k, v] : freq) {
            if (!exact.count(k)) {
                tvd += v;
            }
        }
        EXPECT_LT(tvd / 2, 0.03);
    }
}

TEST(FrameSampler, MatchesTableauStatisticsUnderNoise) {
    Circuit c(3);
    c.h(0).cnot(0, 1).cnot(1, 2);
    c.noise(NoiseKind::Depolarize1, {1}, 0.2, NoiseClass::OneQubit);
    c.measure(PauliString::from_text("ZZI"), "a");
    c.measure(PauliString::from_text("IZZ"), "b");
    c.measure(PauliString::from_text("XXX"), "c");
    c.measure(PauliString::from_text("ZII"), "d");
    c.mutable_instructions()[4].p = 0.05;
    FrameSampler sampler(c, 3);
    const uint64_t shots = 64 * 2000;
    std::vector<double> frame_mean(4, 0), tab_mean(4, 0);
    sampler.sample(shots, 17, [&](uint64_t, const std::vector<uint64_t> &rows, uint64_t valid) {
        for (int m = 0; m < 4; m++) {
            frame_mean[m] += (double)std::popcount(rows[m] & valid) / shots;
        }
    });
    TableauShotRunner runner(c);
    const int tshots = 40000;
    for (int s = 0; s < tshots; s++) {
        const auto &out = runner.run(2, s);
        for (int m = 0; m < 4; m++) {
            tab_mean[m] += (out[m] < 0) / (double)tshots;
        }
    }
    for (int m = 0; m < 4; m++) {
        EXPECT_NEAR(frame_mean[m], tab_mean[m], 0.01) << m;
    }
    // ZZ on the first pair flips when qubit 1 gets X or Y (2/3 of 0.2) or the flip fires.
    double want_a = 0.2 * 2 / 3 * 0.95 + (1 - 0.2 * 2 / 3) * 0.05;
    EXPECT_NEAR(frame_mean[0], want_a, 0.006);
    EXPECT_NEAR(frame_mean[3], 0.5, 0.01);
}

TEST(FrameSampler, ThinningGivesCommonRandomNumbers) {
    Circuit c(1);
    c.noise(NoiseKind::XError, {0}, 0.1, NoiseClass::OneQubit);
    c.measure_z(0);
    FrameSampler sampler(c, 1);
    std::vector<uint64_t> full, half;
    sampler.sample(6400, 5, [&](uint64_t, const std::vector<uint64_t> &r, uint64_t) { full.push_back(r[0]); });
    ClassScale scale = unit_scale();
    scale[(int)NoiseClass::OneQubit] = 0.5;
    sampler.sample(6400, 5, [&](uint64_t, const std::vector<uint64_t> &r, uint64_t) { half.push_back(r[0]); });
    std::vector<uint64_t> half2;
    sampler.sample(6400, 5, [&](uint64_t, const std::vector<uint64_t> &r, uint64_t) { half2.push_back(r[0]); },
                   scale);
    EXPECT_EQ(full, half);
    uint64_t nfull = 0, nhalf = 0;
    for (std::size_t k = 0; k < full.size(); k++) {
        EXPECT_EQ(half2[k] & ~full[k], 0u);  // thinned events are a subset
        nfull += std::popcount(full[k]);
        nhalf += std::popcount(half2[k]);
    }
    EXPECT_NEAR(nfull / 6400.0, 0.1, 0.015);
    EXPECT_NEAR(nhalf / 6400.0, 0.05, 0.01);
}

TEST(FaultPropagation, FlipsExpectedParities) {
    Circuit c(3);
    c.cnot(0, 1).cnot(1, 2);
    c.measure_z(0).measure_z(1).measure_z(2);
    std::vector<Parity> par = {Parity::of(0), Parity::of(1), Parity::of(2),
                               Parity::of(std::vector<std::size_t>{0, 2})};
    std::vector<Fault> faults = {{0, 0, 'X'}, {1, 1, 'X'}, {2, 2, 'Z'}, {2, 0, 'M'}, {0, 0, 'Z'}};
    auto r = propagate_faults(c, faults, par);
    EXPECT_EQ(r[0], (std::vector<bool>{true, true, true, false}));
    EXPECT_EQ(r[1], (std::vector<bool>{false, true, true, true}));
    EXPECT_EQ(r[2], (std::vector<bool>{false, false, false, false}));
    EXPECT_EQ(r[3], (std::vector<bool>{true, false, false, true}));
    EXPECT_EQ(r[4], (std::vector<bool>{false, false, false, false}));
}

TEST(Noise, InstrumentPlacementRules) {
    Circuit c(2);
    c.h(0).cnot(0, 1).idle_dd({0, 1}).measure_z(1).reset(1);
    NoiseModel m;
    auto out = instrument(c, m);
    const auto &ops = out.instructions();
    ASSERT_EQ(ops.size(), 7u);
    EXPECT_EQ(ops[1].op, Op::Noise);
    EXPECT_EQ(ops[1].noise, NoiseKind::Depolarize1);
    EXPECT_DOUBLE_EQ(ops[1].p, m.p_1q);
    EXPECT_EQ(ops[3].noise, NoiseKind::Depolarize2);
    EXPECT_EQ(ops[4].cls, NoiseClass::Idle);
    EXPECT_DOUBLE_EQ(ops[4].p, m.p_dd);
    EXPECT_DOUBLE_EQ(ops[5].p, m.p_m);
    EXPECT_EQ(ops[6].op, Op::ResetZ);
    auto quiet = instrument(c, NoiseModel::noiseless());
    EXPECT_EQ(quiet.size(), 4u);
    NoiseModel bad;
    bad.p_cz = 2;
    EXPECT_THROW(instrument(c, bad), std::invalid_argument);
}

TEST(Noise, PhysicalBaseline) {
    EXPECT_NEAR(physical_baseline(0.92, 77.1, 11.7), 0.0437, 5e-4);
    EXPECT_DOUBLE_EQ(physical_baseline(0, 10, 10), 0);
    EXPECT_THROW(physical_baseline(1, 0, 1), std::invalid_argument);
}

TEST(Noise, ErrorBudgetRecoversLinearWeights) {
    // F = 1 - sum w_k p_k exactly; finite differences must recover w_k.
    const double w[4] = {11.2, 5.13, 4.87, 5.02};
    FidelityFunctional f = [&](const NoiseModel &m, const NoiseModel &, uint64_t) {
        double inf = w[0] * m.p_1q + w[1] * m.p_cz + w[2] * m.p_m + w[3] * m.p_dd;
        return std::make_pair(1 - inf, 0.0);
    };
    auto b = error_budget(f, NoiseModel{}, {});
    for (int k = 0; k < 4; k++) {
        EXPECT_NEAR(b.weights[k], w[k], 1e-9);
    }
    EXPECT_NEAR(b.contributions[1], w[1] * 0.0097, 1e-12);
}

TEST(StateVector, ProjectAndCompactRegister) {
    CompactState st(3);
    Instruction h{Op::H, {0}};
    st.apply_unitary(h);
    Instruction cx{Op::CNOT, {0, 2}};
    st.apply_unitary(cx);
    EXPECT_EQ(st.num_live(), 2u);
    EXPECT_NEAR(st.expectation(PauliString::from_text("ZIZ")), 1, 1e-12);
    EXPECT_NEAR(st.expectation(PauliString::from_text("XIX")), 1, 1e-12);
    double p = st.project(PauliString::from_text("ZII"), -1);
    EXPECT_NEAR(p, 0.5, 1e-12);
    EXPECT_EQ(st.num_live(), 1u);
    EXPECT_NEAR(st.expectation(PauliString::from_text("IIZ")), -1, 1e-12);
    EXPECT_NEAR(st.expectation(PauliString::from_text("-ZII")), 1, 1e-12);
}

TEST(FrameSampler, YMeasurementsOfYEigenstatesAreDeterministic) {
    Circuit c(2);
    c.h(0).s(0);
    c.rx(1, -std::numbers::pi / 2);
    c.measure(PauliString::from_text("YI"));
    c.measure(PauliString::from_text("IY"));
    c.measure(PauliString::from_text("YY"));
    c.measure(PauliString::from_text("XI"));
    FrameSampler sampler(c, 3);
    const uint64_t shots = 64 * 100;
    std::vector<uint64_t> ones(4, 0);
    sampler.sample(shots, 8, [&](uint64_t, const std::vector<uint64_t> &rows, uint64_t valid) {
        for (int m = 0; m < 4; m++) {
            ones[m] += std::popcount(rows[m] & valid);
        }
    });
    EXPECT_EQ(ones[0], 0u);
    EXPECT_EQ(ones[1], 0u);
    EXPECT_EQ(ones[2], 0u);
    EXPECT_NEAR(ones[3] / (double)shots, 0.5, 0.03);
}
