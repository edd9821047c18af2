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

#ifndef FLOQ_CORE_PAULI_HPP
#define FLOQ_CORE_PAULI_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace floq {

/// An n-qubit Pauli operator i^k * P_0 (x) ... (x) P_{n-1}, bit-packed.
///
/// Letters are stored as (x, z) bit pairs: I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).
/// The phase is kept exactly as a power of i.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits);

    /// Parses "-iXIZY" style text. Qubit 0 is the leftmost letter.
    static PauliString from_text(std::string_view text);
    /// Builds an operator from (letter, qubit) pairs, e.g. {{'X', 3}, {'X', 6}}.
    static PauliString from_terms(std::size_t num_qubits, const std::vector<std::pair<char, std::size_t>> &terms);

    std::size_t num_qubits() const { return n_; }
    std::size_t num_words() const { return xs_.size(); }

    char letter(std::size_t q) const;
    void set(std::size_t q, char letter);
    bool x(std::size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
    bool z(std::size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }

    /// Phase as a power of i (0..3).
    uint8_t log_i() const { return log_i_; }
    void set_log_i(uint8_t k) { log_i_ = k & 3; }
    /// +1 or -1 for Hermitian operators.
    int sign() const;
    bool is_hermitian() const;
    std::size_t weight() const;
    std::vector<std::size_t> support() const;
    bool is_identity_up_to_phase() const;

    bool commutes(const PauliString &other) const;
    PauliString operator*(const PauliString &other) const;
    PauliString &operator*=(const PauliString &other);
    PauliString operator-() const;
    bool operator==(const PauliString &other) const;
    bool operator!=(const PauliString &other) const { return !(*this == other); }
    /// Equality ignoring the phase.
    bool same_letters(const PauliString &other) const;

    /// Copy padded with identities (or truncated, which must drop only identities).
    PauliString resized(std::size_t num_qubits) const;

    std::string str() const;

    const std::vector<uint64_t> &xs() const { return xs_; }
    const std::vector<uint64_t> &zs() const { return zs_; }

   private:
    std::size_t n_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    uint8_t log_i_ = 0;
};

}  // namespace floq

#endif
