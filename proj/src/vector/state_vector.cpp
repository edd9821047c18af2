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

#include "floq/vector/state_vector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "floq/core/rng.hpp"

namespace floq {

namespace {

const cplx kI(0, 1);

cplx i_pow(unsigned k) {
    switch (k & 3) {
        case 0:
            return 1;
        case 1:
            return kI;
        case 2:
            return -1;
        default:
            return -kI;
    }
}

struct Masks {
    uint64_t x = 0, z = 0;
    unsigned base = 0;  // log_i including the Y letters
};

Masks masks_of(const PauliString &p) {
    Masks m;
    unsigned ny = 0;
    for (std::size_t q = 0; q < p.num_qubits(); q++) {
        bool bx = p.x(q), bz = p.z(q);
        if (bx) {
            m.x |= uint64_t{1} << q;
        }
        if (bz) {
            m.z |= uint64_t{1} << q;
        }
        ny += bx && bz;
    }
    m.base = p.log_i() + ny;
    return m;
}

// Coefficient c with P|i> = c |i ^ x>; Y = iXZ acts as i(-1)^b on |b>.
inline cplx coef(const Masks &m, uint64_t i) {
    unsigned k = m.base + 2 * (std::popcount(i & m.z) & 1);
    return i_pow(k);
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : n_(num_qubits) {
    if (num_qubits > 30) {
        throw std::invalid_argument("state vector too large");
    }
    amp_.assign(std::size_t{1} << n_, 0);
    amp_[0] = 1;
}

void StateVector::apply_1q(std::size_t q, const cplx m[4]) {
    std::size_t stride = std::size_t{1} << q;
    std::size_t n = amp_.size();
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; i++) {
            cplx a0 = amp_[i], a1 = amp_[i + stride];
            amp_[i] = m[0] * a0 + m[1] * a1;
            amp_[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void StateVector::h(std::size_t q) {
    const double r = 1 / std::sqrt(2.0);
    const cplx m[4] = {r, r, r, -r};
    apply_1q(q, m);
}

void StateVector::x(std::size_t q) {
    std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < amp_.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; i++) {
            std::swap(amp_[i], amp_[i + stride]);
        }
    }
}

void StateVector::y(std::size_t q) {
    const cplx m[4] = {0, -kI, kI, 0};
    apply_1q(q, m);
}

void StateVector::z(std::size_t q) { phase(q, -1); }

void StateVector::phase(std::size_t q, cplx ph) {
    std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amp_.size(); i++) {
        if (i & bit) {
            amp_[i] *= ph;
        }
    }
}

void StateVector::cnot(std::size_t c, std::size_t t) {
    std::size_t cb = std::size_t{1} << c, tb = std::size_t{1} << t;
    for (std::size_t i = 0; i < amp_.size(); i++) {
        if ((i & cb) && !(i & tb)) {
            std::swap(amp_[i], amp_[i | tb]);
        }
    }
}

void StateVector::cz(std::size_t a, std::size_t b) {
    std::size_t m = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amp_.size(); i++) {
        if ((i & m) == m) {
            amp_[i] = -amp_[i];
        }
    }
}

void StateVector::rotate(Op axis, std::size_t q, double angle) {
    double c = std::cos(angle / 2), s = std::sin(angle / 2);
    if (axis == Op::Rx) {
        const cplx m[4] = {c, -kI * s, -kI * s, c};
        apply_1q(q, m);
    } else if (axis == Op::Ry) {
        const cplx m[4] = {c, -s, s, c};
        apply_1q(q, m);
    } else if (axis == Op::Rz) {
        const cplx m[4] = {std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2)};
        apply_1q(q, m);
    } else {
        throw std::invalid_argument("rotate needs an Rx/Ry/Rz axis");
    }
}

void StateVector::apply_gate(Op op, const uint32_t *t, double angle) {
    switch (op) {
        case Op::H:
            h(t[0]);
            break;
        case Op::S:
            phase(t[0], kI);
            break;
        case Op::Sdg:
            phase(t[0], -kI);
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
        case Op::Rx:
        case Op::Ry:
        case Op::Rz:
            rotate(op, t[0], angle);
            break;
        case Op::CNOT:
            cnot(t[0], t[1]);
            break;
        case Op::CZ:
            cz(t[0], t[1]);
            break;
        case Op::IdleDD:
            break;
        default:
            throw std::invalid_argument(std::string("not a unitary gate: ") + op_name(op));
    }
}

void StateVector::apply_pauli(const PauliString &p) {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    Masks m = masks_of(p);
    scratch_.resize(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); i++) {
        scratch_[i ^ m.x] = coef(m, i) * amp_[i];
    }
    amp_.swap(scratch_);
}

double StateVector::expectation(const PauliString &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    Masks m = masks_of(p);
    cplx acc = 0;
    for (std::size_t i = 0; i < amp_.size(); i++) {
        acc += std::conj(amp_[i ^ m.x]) * coef(m, i) * amp_[i];
    }
    return acc.real();
}

double StateVector::norm2() const {
    double s = 0;
    for (const auto &a : amp_) {
        s += std::norm(a);
    }
    return s;
}

double StateVector::prob_plus(const PauliString &p) const {
    double e = expectation(p) / norm2();
    return std::clamp((1 + e) / 2, 0.0, 1.0);
}

double StateVector::project(const PauliString &p, int outcome) {
    Masks m = masks_of(p);
    scratch_.resize(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); i++) {
        std::size_t j = i ^ m.x;
        scratch_[i] = 0.5 * (amp_[i] + (double)outcome * coef(m, j) * amp_[j]);
    }
    amp_.swap(scratch_);
    double n = norm2();
    if (n > 0) {
        double inv = 1 / std::sqrt(n);
        for (auto &a : amp_) {
            a *= inv;
        }
    }
    return n;
}

void StateVector::add_qubit(bool bit) {
    std::size_t old = amp_.size();
    amp_.resize(2 * old, 0);
    if (bit) {
        for (std::size_t i = 0; i < old; i++) {
            amp_[old + i] = amp_[i];
            amp_[i] = 0;
        }
    }
    n_++;
}

void StateVector::remove_qubit(std::size_t q, bool bit) {
    std::size_t low = (std::size_t{1} << q) - 1;
    std::size_t half = amp_.size() / 2;
    std::vector<cplx> out(half);
    for (std::size_t k = 0; k < half; k++) {
        std::size_t i = (k & low) | ((k & ~low) << 1) | ((std::size_t)bit << q);
        out[k] = amp_[i];
    }
    amp_.swap(out);
    n_--;
}

CompactState::CompactState(std::size_t num_qubits) : sv_(0), slot_(num_qubits, -1), bits_(num_qubits, 0) {}

void CompactState::attach(uint32_t q) {
    if (slot_[q] >= 0) {
        return;
    }
    sv_.add_qubit(bits_[q]);
    slot_[q] = (int)owner_.size();
    owner_.push_back((int)q);
}

void CompactState::detach(uint32_t q, bool bit) {
    int s = slot_[q];
    if (s < 0) {
        bits_[q] = bit;
        return;
    }
    sv_.remove_qubit((std::size_t)s, bit);
    owner_.erase(owner_.begin() + s);
    for (std::size_t k = (std::size_t)s; k < owner_.size(); k++) {
        slot_[owner_[k]] = (int)k;
    }
    slot_[q] = -1;
    bits_[q] = bit;
}

void CompactState::apply_unitary(const Instruction &ins) {
    if (ins.op == Op::IdleDD) {
        return;
    }
    if (ins.op == Op::X || ins.op == Op::Y || ins.op == Op::Z) {
        apply_pauli_letter(ins.qubits[0], ins.op == Op::X ? 'X' : ins.op == Op::Y ? 'Y' : 'Z');
        return;
    }
    uint32_t t[2];
    for (std::size_t k = 0; k < ins.qubits.size(); k++) {
        attach(ins.qubits[k]);
    }
    for (std::size_t k = 0; k < ins.qubits.size(); k++) {
        t[k] = (uint32_t)slot_[ins.qubits[k]];
    }
    sv_.apply_gate(ins.op, t, ins.angle);
}

void CompactState::apply_pauli_letter(uint32_t q, char letter) {
    if (slot_[q] < 0) {
        // Z on a basis state is a global phase; X and Y flip the bit.
        if (letter == 'X' || letter == 'Y') {
            bits_[q] ^= 1;
        }
        return;
    }
    std::size_t s = (std::size_t)slot_[q];
    if (letter == 'X') {
        sv_.x(s);
    } else if (letter == 'Y') {
        sv_.y(s);
    } else if (letter == 'Z') {
        sv_.z(s);
    }
}

PauliString CompactState::to_live(const PauliString &p, int *classical_sign, bool *classical_zero) {
    PauliString live(sv_.num_qubits());
    int sgn = p.sign();
    bool zero = false;
    for (auto q : p.support()) {
        char c = p.letter(q);
        if (slot_[q] >= 0) {
            live.set((std::size_t)slot_[q], c);
        } else if (c == 'Z') {
            sgn *= bits_[q] ? -1 : 1;
        } else {
            zero = true;
        }
    }
    *classical_sign = sgn;
    *classical_zero = zero;
    return live;
}

double CompactState::expectation(const PauliString &p) {
    int sgn;
    bool zero;
    PauliString live = to_live(p, &sgn, &zero);
    if (zero) {
        return 0;
    }
    if (live.weight() == 0) {
        return sgn;
    }
    return sgn * sv_.expectation(live);
}

double CompactState::prob_plus(const PauliString &p) {
    // Letters X/Y on detached qubits would need attaching; do it for exactness.
    for (auto q : p.support()) {
        if (p.letter(q) != 'Z') {
            attach((uint32_t)q);
        }
    }
    return std::clamp((1 + expectation(p)) / 2, 0.0, 1.0);
}

double CompactState::project(const PauliString &p, int outcome) {
    auto sup = p.support();
    for (auto q : sup) {
        if (p.letter(q) != 'Z') {
            attach((uint32_t)q);
        }
    }
    int sgn;
    bool zero;
    PauliString live = to_live(p, &sgn, &zero);
    double prob;
    if (live.weight() == 0) {
        prob = sgn == outcome ? 1.0 : 0.0;
    } else {
        live.set_log_i(sgn < 0 ? 2 : 0);
        prob = sv_.project(live, outcome);
    }
    if (sup.size() == 1 && p.letter(sup[0]) == 'Z' && prob > 0) {
        bool bit = (outcome * p.sign()) < 0;
        detach((uint32_t)sup[0], bit);
    }
    return prob;
}

void CompactState::reset(uint32_t q) {
    if (slot_[q] < 0) {
        bits_[q] = 0;
        return;
    }
    PauliString zq(slot_.size());
    zq.set(q, 'Z');
    double p0 = prob_plus(zq);
    // Reset is a channel; keep the dominant branch's weight irrelevant by
    // projecting onto whichever outcome has support, then flipping.
    int outcome = p0 > 1e-15 ? 1 : -1;
    project(zq, outcome);
    bits_[q] = 0;
}

uint64_t CompactState::digest() const {
    uint64_t h = hash_key(slot_.size(), sv_.num_qubits());
    for (std::size_t q = 0; q < slot_.size(); q++) {
        h = mix64(h ^ ((uint64_t)(slot_[q] + 1) << 8) ^ bits_[q]);
    }
    const auto &a = sv_.amplitudes();
    cplx ref = 1;
    for (const auto &v : a) {
        if (std::abs(v) > 1e-6) {
            ref = std::conj(v) / std::abs(v);
            break;
        }
    }
    for (const auto &v : a) {
        cplx w = v * ref;
        int64_t re = std::llround(w.real() * 1e6), im = std::llround(w.imag() * 1e6);
        h = mix64(h ^ (uint64_t)re ^ ((uint64_t)im << 1));
    }
    return h;
}

bool CompactState::same_state(const CompactState &o, double tol) const {
    if (slot_ != o.slot_ || bits_ != o.bits_) {
        return false;
    }
    // |<a|b>| == 1 for normalized states equal up to phase.
    const auto &a = sv_.amplitudes();
    const auto &b = o.sv_.amplitudes();
    cplx ov = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        ov += std::conj(a[i]) * b[i];
    }
    return std::abs(std::abs(ov) - 1) < tol;
}

VectorShotRunner::VectorShotRunner(const Circuit &instrumented) : circuit_(instrumented) { circuit_.validate(); }

const std::vector<int8_t> &VectorShotRunner::run(uint64_t seed, uint64_t shot, bool with_noise) {
    state_ = CompactState(circuit_.num_qubits());
    outcomes_.clear();
    const auto &ops = circuit_.instructions();
    for (std::size_t k = 0; k < ops.size(); k++) {
        const auto &ins = ops[k];
        switch (ins.op) {
            case Op::MeasurePauli: {
                KeyedStream rs(hash_key(seed, shot, k));
                double pp = state_.prob_plus(ins.pauli);
                int v = rs.unit() < pp ? 1 : -1;
                state_.project(ins.pauli, v);
                if (with_noise && ins.p > 0 && rs.unit() < ins.p) {
                    v = -v;
                }
                outcomes_.push_back((int8_t)v);
                break;
            }
            case Op::ResetZ: {
                if (state_.slots()[ins.qubits[0]] >= 0) {
                    KeyedStream rs(hash_key(seed, shot, k));
                    PauliString zq(circuit_.num_qubits());
                    zq.set(ins.qubits[0], 'Z');
                    state_.project(zq, rs.unit() < state_.prob_plus(zq) ? 1 : -1);
                }
                state_.reset(ins.qubits[0]);
                break;
            }
            case Op::Noise: {
                if (!with_noise || ins.p <= 0) {
                    break;
                }
                KeyedStream rs(hash_key(seed, shot, k));
                static constexpr char letters[4] = {'I', 'X', 'Y', 'Z'};
                if (ins.noise == NoiseKind::Depolarize2) {
                    for (std::size_t j = 0; j + 1 < ins.qubits.size(); j += 2) {
                        if (rs.unit() < ins.p) {
                            int c = 1 + (int)(rs.next() % 15);
                            state_.apply_pauli_letter(ins.qubits[j], letters[c & 3]);
                            state_.apply_pauli_letter(ins.qubits[j + 1], letters[c >> 2]);
                        }
                    }
                } else {
                    for (auto q : ins.qubits) {
                        if (rs.unit() < ins.p) {
                            char c = ins.noise == NoiseKind::Depolarize1 ? letters[1 + rs.next() % 3]
                                     : ins.noise == NoiseKind::XError   ? 'X'
                                     : ins.noise == NoiseKind::YError   ? 'Y'
                                                                        : 'Z';
                            state_.apply_pauli_letter(q, c);
                        }
                    }
                }
                break;
            }
            default:
                state_.apply_unitary(ins);
        }
    }
    return outcomes_;
}

MeasRecord run_shot_vector(const Circuit &circuit, const NoiseModel &noise, uint64_t seed, uint64_t shot) {
    VectorShotRunner runner(instrument(circuit, noise));
    const auto &out = runner.run(seed, shot);
    MeasRecord rec;
    std::size_t m = 0;
    for (const auto &ins : circuit.instructions()) {
        if (ins.op == Op::MeasurePauli) {
            rec.push(out[m++], ins.tag);
        }
    }
    return rec;
}

std::vector<Branch> enumerate_branches(const Circuit &circuit, const std::vector<Parity> &tracked,
                                       const EnumerateOptions &options) {
    circuit.validate();
    std::size_t nm = circuit.num_measurements();
    std::vector<std::vector<std::size_t>> uses(nm);
    for (std::size_t t = 0; t < tracked.size(); t++) {
        for (auto k : tracked[t].indices()) {
            if (k >= nm) {
                throw std::out_of_range("tracked parity refers past the end of the record");
            }
            uses[k].push_back(t);
        }
    }
    std::vector<Branch> branches(1);
    branches[0].state = CompactState(circuit.num_qubits());
    for (const auto &p : tracked) {
        branches[0].tracked.push_back(p.constant_sign());
    }
    std::size_t m = 0;
    for (const auto &ins : circuit.instructions()) {
        if (ins.op == Op::Noise) {
            continue;
        }
        if (ins.op == Op::ResetZ) {
            // A reset of an entangled qubit splits into two branches that then coincide.
            std::vector<Branch> next;
            for (auto &b : branches) {
                PauliString zq(circuit.num_qubits());
                zq.set(ins.qubits[0], 'Z');
                double pp = b.state.prob_plus(zq);
                for (int o : {1, -1}) {
                    double po = o > 0 ? pp : 1 - pp;
                    if (po < options.min_prob) {
                        continue;
                    }
                    Branch nb = b;
                    nb.prob *= po;
                    nb.state.project(zq, o);
                    nb.state.reset(ins.qubits[0]);
                    next.push_back(std::move(nb));
                }
            }
            branches.swap(next);
        } else if (ins.op != Op::MeasurePauli) {
            for (auto &b : branches) {
                b.state.apply_unitary(ins);
            }
            continue;
        } else {
            std::vector<Branch> next;
            for (auto &b : branches) {
                double pp = b.state.prob_plus(ins.pauli);
                for (int o : {1, -1}) {
                    double po = o > 0 ? pp : 1 - pp;
                    if (po < options.min_prob) {
                        continue;
                    }
                    Branch nb = (o > 0 && 1 - pp < options.min_prob) ? std::move(b) : b;
                    nb.prob *= po;
                    nb.state.project(ins.pauli, o);
                    nb.outcomes.push_back((int8_t)o);
                    if (o < 0) {
                        for (auto t : uses[m]) {
                            nb.tracked[t] = -nb.tracked[t];
                        }
                    }
                    next.push_back(std::move(nb));
                }
            }
            branches.swap(next);
            m++;
        }
        // Merge branches with identical futures.
        std::unordered_map<uint64_t, std::vector<std::size_t>> buckets;
        std::vector<Branch> merged;
        for (auto &b : branches) {
            uint64_t h = b.state.digest();
            for (auto v : b.tracked) {
                h = mix64(h ^ (uint64_t)(v + 2));
            }
            auto &bucket = buckets[h];
            bool done = false;
            for (auto idx : bucket) {
                if (merged[idx].tracked == b.tracked && merged[idx].state.same_state(b.state)) {
                    merged[idx].prob += b.prob;
                    done = true;
                    break;
                }
            }
            if (!done) {
                bucket.push_back(merged.size());
                merged.push_back(std::move(b));
            }
        }
        branches.swap(merged);
        if (branches.size() > options.max_branches) {
            throw std::runtime_error("branch enumeration exceeded the branch cap");
        }
    }
    return branches;
}

}  // namespace floq
