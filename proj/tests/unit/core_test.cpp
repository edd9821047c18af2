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

#include <complex>
#include <random>

#include "floq/core/circuit.hpp"
#include "floq/core/pauli.hpp"
#include "floq/core/record.hpp"
#include "gtest/gtest.h"

using namespace floq;

namespace {

using M2 = std::array<std::complex<double>, 4>;

M2 letter_matrix(char c) {
    const std::complex<double> i(0, 1);
    switch (c) {
        case 'X':
            return {0, 1, 1, 0};
        case 'Y':
            return {0, -i, i, 0};
        case 'Z':
            return {1, 0, 0, -1};
        default:
            return {1, 0, 0, 1};
    }
}

// Dense matrix of a Pauli string; qubit q is bit q of the index.
std::vector<std::complex<double>> dense(const PauliString &p) {
    std::size_t n = p.num_qubits(), d = std::size_t{1} << n;
    std::vector<std::complex<double>> m(d * d, 0);
    const std::complex<double> phases[4] = {1, {0, 1}, -1, {0, -1}};
    for (std::size_t col = 0; col < d; col++) {
        std::size_t row = 0;
        std::complex<double> amp = phases[p.log_i()];
        for (std::size_t q = 0; q < n; q++) {
            auto l = letter_matrix(p.letter(q));
            int b = (col >> q) & 1;
            int out = (l[0 * 2 + b] != 0.0) ? 0 : 1;
            amp *= l[out * 2 + b];
            row |= (std::size_t)out << q;
        }
        m[row * d + col] = amp;
    }
    return m;
}

std::vector<std::complex<double>> matmul(const std::vector<std::complex<double>> &a,
                                         const std::vector<std::complex<double>> &b, std::size_t d) {
    std::vector<std::complex<double>> c(d * d, 0);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t k = 0; k < d; k++) {
            for (std::size_t j = 0; j < d; j++) {
                c[i * d + j] += a[i * d + k] * b[k * d + j];
            }
        }
    }
    return c;
}

PauliString random_pauli(std::size_t n, std::mt19937_64 &rng) {
    PauliString p(n);
    for (std::size_t q = 0; q < n; q++) {
        p.set(q, "IXYZ"[rng() % 4]);
    }
    p.set_log_i(rng() % 4);
    return p;
}

}  // namespace

TEST(PauliString, TextRoundTrip) {
    for (const char *s : {"+XIZY", "-iXIZY", "+iIII", "-ZZ"}) {
        EXPECT_EQ(PauliString::from_text(s).str(), s);
    }
    EXPECT_EQ(PauliString::from_text("XY").str(), "+XY");
    EXPECT_EQ(PauliString::from_text("-iXIZY").log_i(), 3);
    EXPECT_THROW(PauliString::from_text("XQ"), std::invalid_argument);
}

TEST(PauliString, ProductMatchesDenseMatrices) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; trial++) {
        std::size_t n = 1 + rng() % 3;
        auto a = random_pauli(n, rng), b = random_pauli(n, rng);
        auto c = a * b;
        std::size_t d = std::size_t{1} << n;
        auto want = matmul(dense(a), dense(b), d);
        auto got = dense(c);
        for (std::size_t k = 0; k < d * d; k++) {
            ASSERT_NEAR(std::abs(want[k] - got[k]), 0, 1e-12) << a.str() << " * " << b.str() << " = " << c.str();
        }
        // Commutation agrees with the matrices.
        auto ba = matmul(dense(b), dense(a), d);
        bool comm = true;
        for (std::size_t k = 0; k < d * d; k++) {
            comm &= std::abs(want[k] - ba[k]) < 1e-12;
        }
        EXPECT_EQ(comm, a.commutes(b));
    }
}

TEST(PauliString, WideProductAcrossWords) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; trial++) {
        auto a = random_pauli(130, rng), b = random_pauli(130, rng);
        auto c = a * b;
        // Multiplying by b again (b*b = +-I) must return a up to the b^2 phase.
        auto back = c * b;
        auto bb = b * b;
        EXPECT_TRUE(back.same_letters(a));
        EXPECT_EQ((a.log_i() + bb.log_i()) & 3, back.log_i());
    }
}

TEST(PauliString, FromTermsAndSupport) {
    auto p = PauliString::from_terms(9, {{'X', 3}, {'Y', 4}, {'Z', 1}});
    EXPECT_EQ(p.str(), "+IZIXYIIII");
    EXPECT_EQ(p.weight(), 3u);
    EXPECT_EQ(p.support(), (std::vector<std::size_t>{1, 3, 4}));
    EXPECT_THROW(PauliString::from_terms(3, {{'X', 3}}), std::out_of_range);
    // X then Z on one qubit gives XZ = -iY.
    EXPECT_EQ(PauliString::from_terms(1, {{'X', 0}, {'Z', 0}}).str(), "-iY");
}

TEST(Circuit, TextRoundTrip) {
    Circuit c(4);
    c.h(0).cnot(0, 1).rz(2, 0.25).ry(3, -1.5707963267948966).cz(2, 3);
    c.measure(PauliString::from_text("+XIZI"), "m0");
    c.measure(PauliString::from_text("-IYII"));
    c.reset(1).idle_dd({0, 1, 2});
    c.noise(NoiseKind::Depolarize2, {0, 1}, 0.01, NoiseClass::TwoQubit);
    c.noise(NoiseKind::XError, {3}, 0.5);
    auto text = c.str();
    auto back = Circuit::from_text(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(back.str(), text);
    EXPECT_EQ(back.num_measurements(), 2u);
}

TEST(Circuit, RejectsMalformedInput) {
    EXPECT_THROW(Circuit::from_text("H 0\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nH 5\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nFOO 0\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nCNOT 1 1\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nMPP(0,none) a +XX\nMPP(0,none) a +ZZ\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nRZ(nan) 0\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nMPP(0,none) a +II\n"), std::invalid_argument);
}

TEST(Parity, AlgebraAndEvaluation) {
    auto a = Parity::of(std::vector<std::size_t>{1, 3});
    auto b = Parity::of(std::vector<std::size_t>{3, 4}) * -1;
    auto c = a * b;
    EXPECT_EQ(c.indices(), (std::vector<uint32_t>{1, 4}));
    EXPECT_TRUE(c.negated());
    std::vector<int8_t> rec = {1, -1, 1, -1, 1};
    EXPECT_EQ(c.eval(rec), 1);  // -(-1)(+1)
    EXPECT_EQ((a * a).is_constant(), true);
    EXPECT_EQ(c.restricted_below(2).indices(), (std::vector<uint32_t>{1}));
    EXPECT_THROW(Parity::of(9).eval(rec), std::out_of_range);
}

TEST(MeasRecord, TagLookup) {
    MeasRecord r;
    r.push(1, "a");
    r.push(-1, "");
    r.push(-1, "b");
    EXPECT_EQ(r.at("b"), -1);
    EXPECT_EQ(r.index_of("a"), 0u);
    EXPECT_THROW(r.at("zz"), std::out_of_range);
}
