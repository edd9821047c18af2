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

#ifndef FLOQ_VECTOR_STATE_VECTOR_HPP
#define FLOQ_VECTOR_STATE_VECTOR_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "floq/core/circuit.hpp"
#include "floq/core/pauli.hpp"
#include "floq/core/record.hpp"
#include "floq/noise/noise.hpp"

namespace floq {

using cplx = std::complex<double>;

/// Dense state vector. Qubit q is bit q of the basis index.
class StateVector {
   public:
    explicit StateVector(std::size_t num_qubits = 0);

    std::size_t num_qubits() const { return n_; }
    const std::vector<cplx> &amplitudes() const { return amp_; }
    std::vector<cplx> &mutable_amplitudes() { return amp_; }

    void apply_1q(std::size_t q, const cplx m[4]);
    void h(std::size_t q);
    void x(std::size_t q);
    void y(std::size_t q);
    void z(std::size_t q);
    void phase(std::size_t q, cplx ph);  // diag(1, ph)
    void cnot(std::size_t c, std::size_t t);
    void cz(std::size_t a, std::size_t b);
    void rotate(Op axis, std::size_t q, double angle);
    /// Applies any unitary gate instruction (qubit indices refer to this vector).
    void apply_gate(Op op, const uint32_t *qubits, double angle);
    void apply_pauli(const PauliString &p);

    /// <psi|P|psi> for a Hermitian P (real part).
    double expectation(const PauliString &p) const;
    /// Probability that measuring P gives +1.
    double prob_plus(const PauliString &p) const;
    /// Projects onto the `outcome` eigenspace of P and renormalizes. Returns the
    /// probability of that outcome.
    double project(const PauliString &p, int outcome);
    double norm2() const;

    /// Appends a new most-significant qubit in basis state |bit>.
    void add_qubit(bool bit);
    /// Removes qubit q, which must be in basis state |bit>; higher qubits shift down.
    void remove_qubit(std::size_t q, bool bit);

   private:
    std::size_t n_;
    std::vector<cplx> amp_;
    std::vector<cplx> scratch_;
};

/// A register where qubits known to be in a computational basis state are
/// stored as classical bits instead of state-vector dimensions.
class CompactState {
   public:
    explicit CompactState(std::size_t num_qubits = 0);

    std::size_t num_qubits() const { return slot_.size(); }
    std::size_t num_live() const { return sv_.num_qubits(); }
    const StateVector &vector() const { return sv_; }
    const std::vector<int> &slots() const { return slot_; }
    const std::vector<uint8_t> &classical_bits() const { return bits_; }

    void apply_unitary(const Instruction &ins);
    void apply_pauli_letter(uint32_t q, char letter);
    double prob_plus(const PauliString &p);
    /// Projects; a measured single-qubit Z detaches the qubit. Returns the probability.
    double project(const PauliString &p, int outcome);
    void reset(uint32_t q);
    double expectation(const PauliString &p);

    /// Canonical digest for merging branches: slots, bits and phase-fixed amplitudes.
    uint64_t digest() const;
    bool same_state(const CompactState &other, double tol = 1e-9) const;

   private:
    void attach(uint32_t q);
    void detach(uint32_t q, bool bit);
    PauliString to_live(const PauliString &p, int *classical_sign, bool *classical_zero);

    StateVector sv_;
    std::vector<int> slot_;      // -1 when detached
    std::vector<int> owner_;     // owner_[slot] = logical qubit
    std::vector<uint8_t> bits_;  // classical value when detached
};

/// Runs noisy shots of an instrumented circuit on a compacting state vector.
class VectorShotRunner {
   public:
    explicit VectorShotRunner(const Circuit &instrumented);
    const std::vector<int8_t> &run(uint64_t seed, uint64_t shot, bool with_noise = true);
    /// State after the most recent run.
    CompactState &state() { return state_; }

   private:
    Circuit circuit_;
    CompactState state_;
    std::vector<int8_t> outcomes_;
};

MeasRecord run_shot_vector(const Circuit &circuit, const NoiseModel &noise, uint64_t seed, uint64_t shot = 0);

/// One outcome branch of a noiseless circuit.
struct Branch {
    double prob = 1;
    CompactState state;
    std::vector<int> tracked;      // values of the tracked parities
    std::vector<int8_t> outcomes;  // one representative record
};

struct EnumerateOptions {
    std::size_t max_branches = 4096;
    double min_prob = 1e-14;
};

/// Exact outcome-tree enumeration of a noiseless circuit (noise channels are
/// ignored). Branches with equal state and equal partial values of every
/// tracked parity are merged, so only the tracked parities remain meaningful
/// functions of the record after a merge.
std::vector<Branch> enumerate_branches(const Circuit &circuit, const std::vector<Parity> &tracked,
                                       const EnumerateOptions &options = {});

}  // namespace floq

#endif
