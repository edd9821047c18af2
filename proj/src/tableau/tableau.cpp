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

#include "floq/tableau/tableau.hpp"

#include <bit>
#include <stdexcept>

namespace floq {

unsigned mul_rows_log_i(uint64_t *x1, uint64_t *z1, const uint64_t *x2, const uint64_t *z2, std::size_t words) {
    uint64_t cnt1 = 0, cnt2 = 0;
    for (std::size_t k = 0; k < words; k++) {
        uint64_t ox = x1[k], oz = z1[k];
        uint64_t nx = ox ^ x2[k], nz = oz ^ z2[k];
        uint64_t x1z2 = ox & z2[k];
        uint64_t anti = (x2[k] & oz) ^ x1z2;
        cnt2 ^= (cnt1 ^ nx ^ nz ^ x1z2) & anti;
        cnt1 ^= anti;
        x1[k] = nx;
        z1[k] = nz;
    }
    return (std::popcount(cnt1) + 2 * std::popcount(cnt2)) & 3;
}

Tableau::Tableau(std::size_t num_qubits) : n_(num_qubits), w_((num_qubits + 63) / 64) {
    if (w_ == 0) {
        w_ = 1;
    }
    bits_.assign((2 * n_ + 1) * 2 * w_, 0);
    sign_.assign(2 * n_ + 1, 0);
    reset_all();
}

void Tableau::reset_all() {
    std::fill(bits_.begin(), bits_.end(), 0);
    std::fill(sign_.begin(), sign_.end(), 0);
    for (std::size_t q = 0; q < n_; q++) {
        xs(q)[q >> 6] |= uint64_t{1} << (q & 63);
        zs(n_ + q)[q >> 6] |= uint64_t{1} << (q & 63);
    }
}

#define FLOQ_ROW_LOOP(...)                           \
    for (std::size_t r = 0; r < 2 * n_; r++) {       \
        uint64_t &X = xs(r)[wq];                     \
        uint64_t &Z = zs(r)[wq];                     \
        __VA_ARGS__                                  \
    }

void Tableau::h(std::size_t q) {
    std::size_t wq = q >> 6, b = q & 63;
    FLOQ_ROW_LOOP({
        uint64_t xb = (X >> b) & 1, zb = (Z >> b) & 1;
        sign_[r] ^= xb & zb;
        if (xb != zb) {
            X ^= uint64_t{1} << b;
            Z ^= uint64_t{1} << b;
        }
    })
}

void Tableau::s(std::size_t q) {
    std::size_t wq = q >> 6, b = q & 63;
    FLOQ_ROW_LOOP({
        uint64_t xb = (X >> b) & 1, zb = (Z >> b) & 1;
        sign_[r] ^= xb & zb;
        Z ^= xb << b;
    })
}

void Tableau::sdg(std::size_t q) {
    std::size_t wq = q >> 6, b = q & 63;
    FLOQ_ROW_LOOP({
        uint64_t xb = (X >> b) & 1, zb = (Z >> b) & 1;
        sign_[r] ^= xb & (zb ^ 1);
        Z ^= xb << b;
    })
}

void Tableau::x(std::size_t q) {
    std::size_t wq = q >> 6, b = q & 63;
    FLOQ_ROW_LOOP({
        (void)X;
        sign_[r] ^= (Z >> b) & 1;
    })
}

void Tableau::z(std::size_t q) {
    std::size_t wq = q >> 6, b = q & 63;
    FLOQ_ROW_LOOP({
        (void)Z;
        sign_[r] ^= (X >> b) & 1;
    })
}

void Tableau::y(std::size_t q) {
    std::size_t wq = q >> 6, b = q & 63;
    FLOQ_ROW_LOOP({ sign_[r] ^= ((X ^ Z) >> b) & 1; })
}

#undef FLOQ_ROW_LOOP

void Tableau::cnot(std::size_t c, std::size_t t) {
    std::size_t wc = c >> 6, bc = c & 63, wt = t >> 6, bt = t & 63;
    for (std::size_t r = 0; r < 2 * n_; r++) {
        uint64_t *X = xs(r), *Z = zs(r);
        uint64_t xc = (X[wc] >> bc) & 1, zc = (Z[wc] >> bc) & 1;
        uint64_t xt = (X[wt] >> bt) & 1, zt = (Z[wt] >> bt) & 1;
        sign_[r] ^= xc & zt & (xt ^ zc ^ 1);
        X[wt] ^= xc << bt;
        Z[wc] ^= zt << bc;
    }
}

void Tableau::cz(std::size_t a, std::size_t b) {
    std::size_t wa = a >> 6, ba = a & 63, wb = b >> 6, bb = b & 63;
    for (std::size_t r = 0; r < 2 * n_; r++) {
        uint64_t *X = xs(r), *Z = zs(r);
        uint64_t xa = (X[wa] >> ba) & 1, za = (Z[wa] >> ba) & 1;
        uint64_t xb = (X[wb] >> bb) & 1, zb = (Z[wb] >> bb) & 1;
        sign_[r] ^= xa & xb & (za ^ zb);
        Z[wa] ^= xb << ba;
        Z[wb] ^= xa << bb;
    }
}

void Tableau::apply_pauli(const PauliString &p) {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    for (std::size_t r = 0; r < 2 * n_; r++) {
        if (anticommutes_row(r, p)) {
            sign_[r] ^= 1;
        }
    }
}

void Tableau::rotate(Op op, int quarter, std::size_t q) {
    // Rz(k pi/2) ~ S^k, Rx = H Rz H, Ry = S Rx S^dag, all up to global phase.
    auto rz = [&](int k) {
        switch (k) {
            case 1:
                s(q);
                break;
            case 2:
                z(q);
                break;
            case 3:
                sdg(q);
                break;
            default:
                break;
        }
    };
    if (op == Op::Rz) {
        rz(quarter);
    } else if (op == Op::Rx) {
        h(q);
        rz(quarter);
        h(q);
    } else {
        sdg(q);
        h(q);
        rz(quarter);
        h(q);
        s(q);
    }
}

void Tableau::apply_clifford(const Instruction &ins) {
    const auto &t = ins.qubits;
    switch (ins.op) {
        case Op::H:
            h(t[0]);
            break;
        case Op::S:
            s(t[0]);
            break;
        case Op::Sdg:
            sdg(t[0]);
            break;
        case Op::X:
            x(t[0]);
            break;
        case Op::Y:
            y(t[0]);
            break;
        case Op::Z:
            z(t[0]);
            break;
        case Op::CNOT:
            cnot(t[0], t[1]);
            break;
        case Op::CZ:
            cz(t[0], t[1]);
            break;
        case Op::Rx:
        case Op::Ry:
        case Op::Rz:
            if (!is_clifford_angle(ins.angle)) {
                throw std::invalid_argument("non-Clifford rotation in a tableau simulation");
            }
            rotate(ins.op, quarter_turns(ins.angle), t[0]);
            break;
        case Op::IdleDD:
            break;
        default:
            throw std::invalid_argument(std::string("not a unitary Clifford instruction: ") + op_name(ins.op));
    }
}

PauliString Tableau::row(std::size_t r) const {
    PauliString p(n_);
    for (std::size_t q = 0; q < n_; q++) {
        bool bx = (xs(r)[q >> 6] >> (q & 63)) & 1;
        bool bz = (zs(r)[q >> 6] >> (q & 63)) & 1;
        p.set(q, bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I'));
    }
    p.set_log_i(sign_[r] ? 2 : 0);
    return p;
}

bool Tableau::anticommutes_row(std::size_t r, const PauliString &p) const {
    uint64_t acc = 0;
    const auto &px = p.xs();
    const auto &pz = p.zs();
    for (std::size_t k = 0; k < p.num_words(); k++) {
        acc ^= (xs(r)[k] & pz[k]) ^ (zs(r)[k] & px[k]);
    }
    return std::popcount(acc) & 1;
}

void Tableau::row_mul(std::size_t dst, std::size_t src) {
    unsigned s = mul_rows_log_i(xs(dst), zs(dst), xs(src), zs(src), w_);
    unsigned total = (2u * sign_[dst] + 2u * sign_[src] + s) & 3;
    sign_[dst] = (uint8_t)(total >> 1);
}

int Tableau::peek(const PauliString &p) const {
    if (p.num_qubits() != n_ || !p.is_hermitian()) {
        throw std::invalid_argument("peek needs a Hermitian Pauli of matching size");
    }
    for (std::size_t k = 0; k < n_; k++) {
        if (anticommutes_row(n_ + k, p)) {
            return 0;
        }
    }
    // Product of the stabilizers whose destabilizer partner anticommutes with p.
    auto &self = const_cast<Tableau &>(*this);
    std::size_t scratch = 2 * n_;
    std::fill(self.xs(scratch), self.xs(scratch) + w_, 0);
    std::fill(self.zs(scratch), self.zs(scratch) + w_, 0);
    self.sign_[scratch] = 0;
    for (std::size_t k = 0; k < n_; k++) {
        if (anticommutes_row(k, p)) {
            self.row_mul(scratch, n_ + k);
        }
    }
    int s = sign_[scratch] ? -1 : 1;
    return s * p.sign();
}

int Tableau::measure(const PauliString &p, bool random_bit) {
    if (p.num_qubits() != n_ || !p.is_hermitian()) {
        throw std::invalid_argument("measure needs a Hermitian Pauli of matching size");
    }
    std::size_t pivot = 2 * n_;
    for (std::size_t k = 0; k < n_; k++) {
        if (anticommutes_row(n_ + k, p)) {
            pivot = n_ + k;
            break;
        }
    }
    if (pivot == 2 * n_) {
        return peek(p);
    }
    for (std::size_t r = 0; r < 2 * n_; r++) {
        if (r != pivot && r != pivot - n_ && anticommutes_row(r, p)) {
            row_mul(r, pivot);
        }
    }
    std::copy(xs(pivot), xs(pivot) + 2 * w_, xs(pivot - n_));
    sign_[pivot - n_] = sign_[pivot];
    const auto &px = p.xs();
    const auto &pz = p.zs();
    std::copy(px.begin(), px.end(), xs(pivot));
    std::copy(pz.begin(), pz.end(), zs(pivot));
    int outcome = random_bit ? -1 : 1;
    // Stored row is outcome * p.
    sign_[pivot] = (uint8_t)((outcome * p.sign()) < 0);
    return outcome;
}

void Tableau::reset_z(std::size_t q, bool random_bit) {
    PauliString zq(n_);
    zq.set(q, 'Z');
    if (measure(zq, random_bit) < 0) {
        x(q);
    }
}

}  // namespace floq
