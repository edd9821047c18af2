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

#ifndef FLOQ_TABLEAU_TABLEAU_HPP
#define FLOQ_TABLEAU_TABLEAU_HPP

#include <cstdint>
#include <vector>

#include "floq/core/circuit.hpp"
#include "floq/core/pauli.hpp"

namespace floq {

/// Stabilizer tableau (destabilizers and stabilizers) of an n-qubit state.
///
/// Rows are bit-packed, so a two-qubit gate touches every row once with word
/// operations and never scans qubits.
class Tableau {
   public:
    explicit Tableau(std::size_t num_qubits);

    std::size_t num_qubits() const { return n_; }
    /// Resets to |0...0>.
    void reset_all();

    void h(std::size_t q);
    void s(std::size_t q);
    void sdg(std::size_t q);
    void x(std::size_t q);
    void y(std::size_t q);
    void z(std::size_t q);
    void cnot(std::size_t c, std::size_t t);
    void cz(std::size_t a, std::size_t b);
    /// Applies a Pauli operator as a gate (its phase is irrelevant).
    void apply_pauli(const PauliString &p);
    /// Applies a unitary Clifford instruction. Rotations must have Clifford angles.
    void apply_clifford(const Instruction &ins);

    /// +1 or -1 if measuring p is deterministic, 0 if the outcome is uniformly random.
    int peek(const PauliString &p) const;
    /// Measures a Hermitian Pauli product, collapsing the state. `random_bit` is
    /// used only when the outcome is not determined.
    int measure(const PauliString &p, bool random_bit);
    void reset_z(std::size_t q, bool random_bit);

    PauliString stabilizer(std::size_t k) const { return row(n_ + k); }
    PauliString destabilizer(std::size_t k) const { return row(k); }

   private:
    uint64_t *xs(std::size_t r) { return &bits_[r * 2 * w_]; }
    uint64_t *zs(std::size_t r) { return &bits_[r * 2 * w_ + w_]; }
    const uint64_t *xs(std::size_t r) const { return &bits_[r * 2 * w_]; }
    const uint64_t *zs(std::size_t r) const { return &bits_[r * 2 * w_ + w_]; }
    PauliString row(std::size_t r) const;
    bool anticommutes_row(std::size_t r, const PauliString &p) const;
    /// Multiplies row dst by row src in place, tracking the sign.
    void row_mul(std::size_t dst, std::size_t src);
    void rotate(Op op, int quarter, std::size_t q);

    std::size_t n_;
    std::size_t w_;
    std::vector<uint64_t> bits_;  // 2n+1 rows (last row is scratch), each [x words | z words]
    std::vector<uint8_t> sign_;
};

/// Multiplies two raw Pauli rows: (x1, z1) *= (x2, z2). Returns log_i of the scalar.
unsigned mul_rows_log_i(uint64_t *x1, uint64_t *z1, const uint64_t *x2, const uint64_t *z2, std::size_t words);

}  // namespace floq

#endif
