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

#include "floq/core/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace floq {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) >> 6; }

}  // namespace

PauliString::PauliString(std::size_t num_qubits)
    : n_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {}

PauliString PauliString::from_text(std::string_view text) {
    uint8_t k = 0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') {
            k = 2;
        }
        pos++;
    }
    if (pos < text.size() && text[pos] == 'i') {
        k = (k + 1) & 3;
        pos++;
    }
    PauliString p(text.size() - pos);
    for (std::size_t q = 0; pos < text.size(); pos++, q++) {
        char c = text[pos];
        if (c == '_') {
            c = 'I';
        }
        p.set(q, c);
    }
    p.log_i_ = k;
    return p;
}

PauliString PauliString::from_terms(std::size_t num_qubits, const std::vector<std::pair<char, std::size_t>> &terms) {
    PauliString p(num_qubits);
    for (const auto &[c, q] : terms) {
        if (q >= num_qubits) {
            throw std::out_of_range("Pauli term qubit out of range");
        }
        PauliString single(num_qubits);
        single.set(q, c);
        p *= single;
    }
    return p;
}

char PauliString::letter(std::size_t q) const {
    static constexpr char table[4] = {'I', 'X', 'Z', 'Y'};
    return table[(int)x(q) | ((int)z(q) << 1)];
}

void PauliString::set(std::size_t q, char c) {
    if (q >= n_) {
        throw std::out_of_range("Pauli qubit out of range");
    }
    bool bx, bz;
    switch (c) {
        case 'I':
            bx = false, bz = false;
            break;
        case 'X':
            bx = true, bz = false;
            break;
        case 'Y':
            bx = true, bz = true;
            break;
        case 'Z':
            bx = false, bz = true;
            break;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
    }
    uint64_t m = uint64_t{1} << (q & 63);
    xs_[q >> 6] = bx ? (xs_[q >> 6] | m) : (xs_[q >> 6] & ~m);
    zs_[q >> 6] = bz ? (zs_[q >> 6] | m) : (zs_[q >> 6] & ~m);
}

int PauliString::sign() const {
    if (!is_hermitian()) {
        throw std::logic_error("sign() of a non-Hermitian Pauli string");
    }
    return log_i_ == 0 ? 1 : -1;
}

bool PauliString::is_hermitian() const { return (log_i_ & 1) == 0; }

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (std::size_t k = 0; k < xs_.size(); k++) {
        w += std::popcount(xs_[k] | zs_[k]);
    }
    return w;
}

std::vector<std::size_t> PauliString::support() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < n_; q++) {
        if (x(q) || z(q)) {
            out.push_back(q);
        }
    }
    return out;
}

bool PauliString::is_identity_up_to_phase() const { return weight() == 0; }

bool PauliString::commutes(const PauliString &other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    uint64_t acc = 0;
    for (std::size_t k = 0; k < xs_.size(); k++) {
        acc ^= (xs_[k] & other.zs_[k]) ^ (zs_[k] & other.xs_[k]);
    }
    return (std::popcount(acc) & 1) == 0;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    if (rhs.n_ != n_) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    // Per-position anticommutation counts accumulated mod 4 in two bit planes.
    uint64_t cnt1 = 0, cnt2 = 0;
    for (std::size_t k = 0; k < xs_.size(); k++) {
        uint64_t x1 = xs_[k], z1 = zs_[k];
        uint64_t x2 = rhs.xs_[k], z2 = rhs.zs_[k];
        uint64_t nx = x1 ^ x2, nz = z1 ^ z2;
        uint64_t x1z2 = x1 & z2;
        uint64_t anti = (x2 & z1) ^ x1z2;
        cnt2 ^= (cnt1 ^ nx ^ nz ^ x1z2) & anti;
        cnt1 ^= anti;
        xs_[k] = nx;
        zs_[k] = nz;
    }
    unsigned s = std::popcount(cnt1) + 2 * std::popcount(cnt2);
    log_i_ = (uint8_t)((log_i_ + rhs.log_i_ + s) & 3);
    return *this;
}

PauliString PauliString::operator*(const PauliString &other) const {
    PauliString r = *this;
    r *= other;
    return r;
}

PauliString PauliString::operator-() const {
    PauliString r = *this;
    r.log_i_ = (r.log_i_ + 2) & 3;
    return r;
}

bool PauliString::operator==(const PauliString &other) const {
    return n_ == other.n_ && log_i_ == other.log_i_ && xs_ == other.xs_ && zs_ == other.zs_;
}

bool PauliString::same_letters(const PauliString &other) const {
    return n_ == other.n_ && xs_ == other.xs_ && zs_ == other.zs_;
}

PauliString PauliString::resized(std::size_t num_qubits) const {
    PauliString r(num_qubits);
    for (std::size_t q = 0; q < n_; q++) {
        char c = letter(q);
        if (c == 'I') {
            continue;
        }
        if (q >= num_qubits) {
            throw std::invalid_argument("resize would drop a non-identity letter");
        }
        r.set(q, c);
    }
    r.log_i_ = log_i_;
    return r;
}

std::string PauliString::str() const {
    static constexpr const char *prefix[4] = {"+", "+i", "-", "-i"};
    std::string s = prefix[log_i_];
    for (std::size_t q = 0; q < n_; q++) {
        s.push_back(letter(q));
    }
    return s;
}

}  // namespace floq
