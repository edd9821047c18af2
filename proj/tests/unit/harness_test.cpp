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
#include <numbers>
#include <random>

#include "floq/harness/config.hpp"
#include "floq/harness/fit.hpp"
#include "floq/harness/runners.hpp"
#include "floq/harness/sampling.hpp"
#include "gtest/gtest.h"

using namespace floq;
using namespace floq::harness;

TEST(Fit, ExpDecayRoundTrip) {
    std::vector<double> r, y;
    for (int k = 0; k <= 12; k++) {
        r.push_back(k);
        y.push_back(std::pow(1 - 2 * 0.03, k));
    }
    auto f = fit_exp_decay(r, y);
    EXPECT_NEAR(f.value("A"), 1, 1e-6);
    EXPECT_NEAR(f.value("eps"), 0.03, 1e-6);
    EXPECT_FALSE(f.degenerate);
}

TEST(Fit, ExpDecayNoisyWeighted) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g(0, 0.003);
    std::vector<double> r, y, s;
    for (int k = 0; k <= 16; k++) {
        r.push_back(k);
        y.push_back(0.9 * std::pow(1 - 2 * 0.02, k) + g(rng));
        s.push_back(0.003);
    }
    auto f = fit_exp_decay(r, y, s);
    EXPECT_NEAR(f.value("eps"), 0.02, 4 * f.error("eps") + 1e-4);
    EXPECT_GT(f.error("eps"), 0);
}

TEST(Fit, ExpDecayDegenerateAndTooFewPoints) {
    auto f = fit_exp_decay({0, 1, 2}, {0, -0.1, 0});
    EXPECT_TRUE(f.degenerate);
    EXPECT_EQ(f.value("eps"), 0);
    EXPECT_THROW(fit_exp_decay({0, 1}, {1, 0.9}), std::invalid_argument);
    EXPECT_THROW(fit_exp_decay({0, 1, 2}, {1, 0.9}), std::invalid_argument);
}

TEST(Fit, LeakageRoundTrip) {
    const double a = 0.0022, b = 0.05, p0 = 0;
    std::vector<double> r, p;
    for (int k = 0; k <= 40; k += 2) {
        r.push_back(k);
        p.push_back(a / b - (a / b - p0) * std::exp(-b * k));
    }
    auto f = fit_leakage(r, p);
    EXPECT_NEAR(f.value("eps_leak"), a, 0.05 * a);
    EXPECT_NEAR(f.value("eps_d"), b, 0.05 * b);
    EXPECT_NEAR(f.value("p0"), p0, 1e-4);
    EXPECT_THROW(fit_leakage({0, 1, 2}, {0, 0, 0}), std::invalid_argument);
}

TEST(Fit, LeakageFlatData) {
    std::vector<double> r, p;
    for (int k = 0; k < 10; k++) {
        r.push_back(k);
        p.push_back(0);
    }
    auto f = fit_leakage(r, p);
    EXPECT_NEAR(f.value("eps_leak"), 0, 1e-9);
}

TEST(Fit, TrigRoundTrip) {
    std::vector<double> x, y;
    for (int k = 0; k < 13; k++) {
        double t = 2 * std::numbers::pi * k / 12;
        x.push_back(t);
        y.push_back(0.7 * std::cos(t) - 0.2 * std::sin(t) + 0.05);
    }
    auto f = fit_trig(x, y);
    EXPECT_NEAR(f.value("a"), 0.7, 1e-9);
    EXPECT_NEAR(f.value("b"), -0.2, 1e-9);
    EXPECT_NEAR(f.value("c"), 0.05, 1e-9);
    EXPECT_NEAR(f.value("amplitude"), std::hypot(0.7, 0.2), 1e-9);
    EXPECT_THROW(f.value("nope"), std::out_of_range);
}

TEST(Config, DefaultsAndOverrides) {
    auto c = Config::parse("experiment = fbs-memory\nshots = 500\nseed = 9\np_m = 0.01\n# comment\n");
    EXPECT_EQ(c.experiment, "fbs-memory");
    EXPECT_EQ(c.shots, 500u);
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.rounds, 16);
    EXPECT_DOUBLE_EQ(c.noise.p_m, 0.01);
    EXPECT_TRUE(c.lowering.native_cz);
    auto n = Config::parse("noise = none\n", "encode-fidelity");
    EXPECT_TRUE(n.noise.is_noiseless());
    EXPECT_EQ(experiment_kinds().size(), 9u);
}

TEST(Config, Errors) {
    EXPECT_THROW(Config::parse("experiment = fbs-memory\nfrobnicate = 1\n"), ConfigError);
    EXPECT_THROW(Config::parse("experiment = fbs-memory\nshots = many\n"), ConfigError);
    EXPECT_THROW(Config::parse("experiment = fbs-memory\nshots = 1\nshots = 2\n"), ConfigError);
    EXPECT_THROW(Config::parse("experiment = fbs-memory\npost = correct\n"), ConfigError);
    EXPECT_THROW(Config::parse("experiment = fbs-memory\nstates = 2,0\n"), ConfigError);
    EXPECT_THROW(Config::parse("experiment = teleport\n"), ConfigError);
    EXPECT_THROW(Config::parse("shots = 5\n"), ConfigError);
    EXPECT_THROW(Config::parse("experiment = bs-memory\n", "fbs-memory"), ConfigError);
    EXPECT_NO_THROW(Config::parse("experiment = bs-memory\npost = correct\n"));
}

TEST(Sampling, BackendSelection) {
    Circuit c(1);
    c.h(0).measure_z(0);
    EXPECT_EQ(resolve_backend(c, Backend::Auto), Backend::Tableau);
    c.rz(0, 0.3);
    EXPECT_TRUE(has_non_clifford(c));
    EXPECT_EQ(resolve_backend(c, Backend::Auto), Backend::Vector);
    EXPECT_THROW(resolve_backend(c, Backend::Tableau), SimulationError);
    EXPECT_THROW(parse_backend("gpu"), std::invalid_argument);
}

TEST(Runners, NoiselessMemoryIsExact) {
    auto cfg = Config::parse("experiment = fbs-memory\nstates = -,1\nnoise = none\nbackend = vector\n"
                             "lowering = direct\n");
    auto out = run_experiment(cfg).json;
    const auto &s = out["results"]["states"][0];
    EXPECT_TRUE(s["exact"].get<bool>());
    ASSERT_EQ(s["rounds"].size(), 17u);
    for (const auto &r : s["rounds"]) {
        EXPECT_NEAR(r["joint"]["detected"]["value"].get<double>(), 1, 1e-9);
        EXPECT_NEAR(r["retention"].get<double>(), 1, 1e-12);
    }
}

TEST(Runners, RetentionIsMonotone) {
    auto cfg = Config::parse("experiment = fbs-memory\nrounds = 8\nshots = 2000\n");
    auto out = run_experiment(cfg).json;
    double prev = 1;
    for (const auto &r : out["results"]["states"][0]["rounds"]) {
        double ret = r["retention"].get<double>();
        EXPECT_LE(ret, prev + 1e-15);
        prev = ret;
    }
    EXPECT_EQ(out["effective"]["shots"].get<uint64_t>(), 2000u);
}

TEST(Runners, VectorBudgetIsEnforced) {
    auto cfg = Config::parse("experiment = fbs-memory\nrounds = 2\nbackend = vector\nvector_qubit_budget = 4\n");
    EXPECT_THROW(run_experiment(cfg), SimulationError);
}

TEST(Runners, CsvOutput) {
    auto cfg = Config::parse("experiment = pauli-gates\nnoise = none\nshots = 64\n");
    auto out = run_experiment(cfg);
    ASSERT_FALSE(out.csv.header.empty());
    auto text = to_csv(out.csv);
    EXPECT_EQ(text.substr(0, out.csv.header[0].size()), out.csv.header[0]);
}
