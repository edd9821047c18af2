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

#include "floq/tableau/simulator.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "floq/core/rng.hpp"

namespace floq {

namespace {

enum FrameKind : uint8_t {
    kSwapXZ,
    kZxorX,
    kXxorZ,
    kCnot,
    kCz,
    kMeasure,
    kReset,
    kDep1,
    kDep2,
    kXErr,
    kYErr,
    kZErr,
    kNop,
};

// Letters as x | z << 1 for the 16 two-qubit depolarizing outcomes (skipping II).
constexpr uint8_t kLetterOf[4] = {0, 1, 3, 2};  // I, X, Y, Z

void apply_noise_tableau(Tableau &t, const Instruction &ins, KeyedStream &rs) {
    auto pauli1 = [&](uint32_t q, int which) {
        if (which == 1) {
            t.x(q);
        } else if (which == 2) {
            t.y(q);
        } else if (which == 3) {
            t.z(q);
        }
    };
    switch (ins.noise) {
        case NoiseKind::Depolarize1:
            for (auto q : ins.qubits) {
                if (rs.unit() < ins.p) {
                    pauli1(q, 1 + (int)(rs.next() % 3));
                }
            }
            break;
        case NoiseKind::Depolarize2:
            for (std::size_t k = 0; k + 1 < ins.qubits.size(); k += 2) {
                if (rs.unit() < ins.p) {
                    int c = 1 + (int)(rs.next() % 15);
                    pauli1(ins.qubits[k], c & 3);
                    pauli1(ins.qubits[k + 1], c >> 2);
                }
            }
            break;
        case NoiseKind::XError:
        case NoiseKind::YError:
        case NoiseKind::ZError: {
            int which = ins.noise == NoiseKind::XError ? 1 : ins.noise == NoiseKind::YError ? 2 : 3;
            for (auto q : ins.qubits) {
                if (rs.unit() < ins.p) {
                    pauli1(q, which);
                }
            }
            break;
        }
    }
}

}  // namespace

TableauShotRunner::TableauShotRunner(const Circuit &instrumented)
    : circuit_(instrumented), tableau_(instrumented.num_qubits()) {
    circuit_.validate();
    outcomes_.reserve(circuit_.num_measurements());
}

const std::vector<int8_t> &TableauShotRunner::run(uint64_t seed, uint64_t shot, bool with_noise) {
    tableau_.reset_all();
    outcomes_.clear();
    const auto &ops = circuit_.instructions();
    for (std::size_t k = 0; k < ops.size(); k++) {
        const auto &ins = ops[k];
        switch (ins.op) {
            case Op::MeasurePauli: {
                KeyedStream rs(hash_key(seed, shot, k));
                int v = tableau_.measure(ins.pauli, rs.bit());
                if (with_noise && ins.p > 0 && rs.unit() < ins.p) {
                    v = -v;
                }
                outcomes_.push_back((int8_t)v);
                break;
            }
            case Op::ResetZ: {
                KeyedStream rs(hash_key(seed, shot, k));
                tableau_.reset_z(ins.qubits[0], rs.bit());
                break;
            }
            case Op::Noise:
                if (with_noise && ins.p > 0) {
                    KeyedStream rs(hash_key(seed, shot, k));
                    apply_noise_tableau(tableau_, ins, rs);
                }
                break;
            default:
                tableau_.apply_clifford(ins);
        }
    }
    return outcomes_;
}

MeasRecord run_shot(const Circuit &circuit, const NoiseModel &noise, uint64_t seed, uint64_t shot) {
    TableauShotRunner runner(instrument(circuit, noise));
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

FrameSampler::FrameSampler(const Circuit &instrumented, uint64_t reference_seed)
    : num_qubits_(instrumented.num_qubits()) {
    instrumented.validate();
    for (const auto &ins : instrumented.instructions()) {
        FOp f{kNop, (uint8_t)ins.cls};
        if (!ins.qubits.empty()) {
            f.a = ins.qubits[0];
        }
        if (ins.qubits.size() > 1) {
            f.b = ins.qubits[1];
        }
        switch (ins.op) {
            case Op::H:
                f.kind = kSwapXZ;
                break;
            case Op::S:
            case Op::Sdg:
                f.kind = kZxorX;
                break;
            case Op::X:
            case Op::Y:
            case Op::Z:
            case Op::IdleDD:
                f.kind = kNop;
                break;
            case Op::Rx:
            case Op::Ry:
            case Op::Rz: {
                if (!is_clifford_angle(ins.angle)) {
                    throw std::invalid_argument("non-Clifford rotation in a frame simulation");
                }
                if (quarter_turns(ins.angle) % 2 == 0) {
                    f.kind = kNop;
                } else {
                    f.kind = ins.op == Op::Rz ? kZxorX : ins.op == Op::Rx ? kXxorZ : kSwapXZ;
                }
                break;
            }
            case Op::CNOT:
                f.kind = kCnot;
                break;
            case Op::CZ:
                f.kind = kCz;
                break;
            case Op::MeasurePauli:
                f.kind = kMeasure;
                f.p = ins.p;
                f.term_begin = (uint32_t)terms_.size();
                for (auto q : ins.pauli.support()) {
                    terms_.emplace_back((uint32_t)q, (uint8_t)((int)ins.pauli.x(q) | ((int)ins.pauli.z(q) << 1)));
                }
                f.term_end = (uint32_t)terms_.size();
                f.meas = (uint32_t)num_measurements_++;
                break;
            case Op::ResetZ:
                f.kind = kReset;
                break;
            case Op::Noise:
                f.p = ins.p;
                switch (ins.noise) {
                    case NoiseKind::Depolarize1:
                        f.kind = kDep1;
                        break;
                    case NoiseKind::Depolarize2:
                        f.kind = kDep2;
                        break;
                    case NoiseKind::XError:
                        f.kind = kXErr;
                        break;
                    case NoiseKind::YError:
                        f.kind = kYErr;
                        break;
                    case NoiseKind::ZError:
                        f.kind = kZErr;
                        break;
                }
                break;
        }
        if (f.kind == kNop) {
            continue;
        }
        f.log_q = f.p < 1 ? std::log1p(-f.p) : 0;
        if (ins.op == Op::Noise) {
            // One op per independent site keeps the draw order simple.
            std::size_t step = f.kind == kDep2 ? 2 : 1;
            for (std::size_t k = 0; k + step <= ins.qubits.size(); k += step) {
                FOp g = f;
                g.a = ins.qubits[k];
                g.b = step == 2 ? ins.qubits[k + 1] : 0;
                ops_.push_back(g);
            }
            continue;
        }
        ops_.push_back(f);
    }
    TableauShotRunner runner(instrumented);
    const auto &ref = runner.run(reference_seed, 0, false);
    reference_.reserve(ref.size());
    for (auto v : ref) {
        reference_.push_back(v < 0);
    }
}

void FrameSampler::run_batch(uint64_t batch, uint64_t seed, const ClassScale &scale, std::vector<uint64_t> &x,
                             std::vector<uint64_t> &z, std::vector<uint64_t> &rows) const {
    KeyedStream gauge(hash_key(seed, batch, 0x67617567ull));
    KeyedStream noise(hash_key(seed, batch, 0x6e6f6973ull));
    std::fill(x.begin(), x.end(), 0);
    for (auto &w : z) {
        w = gauge.next();
    }
    // Calls on_event(lane, choice) for each lane hit at rate p. The draw sequence
    // depends only on p, so thinning by `accept` keeps common random numbers.
    auto for_events = [&](const FOp &f, auto &&on_event) {
        if (f.p <= 0) {
            return;
        }
        double accept = scale[f.cls];
        int64_t pos = -1;
        while (true) {
            if (f.p >= 1) {
                pos++;
            } else {
                double g = std::floor(std::log(noise.unit_open_low()) / f.log_q);
                if (g >= 64) {
                    break;
                }
                pos += 1 + (int64_t)g;
            }
            if (pos >= 64) {
                break;
            }
            uint64_t choice = noise.next();
            double u = noise.unit();
            if (u < accept) {
                on_event((unsigned)pos, choice);
            }
        }
    };
    auto inject1 = [&](uint32_t q, unsigned lane, unsigned letter) {
        uint64_t bit = uint64_t{1} << lane;
        if (letter & 1) {
            x[q] ^= bit;
        }
        if (letter & 2) {
            z[q] ^= bit;
        }
    };
    for (const auto &f : ops_) {
        switch (f.kind) {
            case kSwapXZ:
                std::swap(x[f.a], z[f.a]);
                break;
            case kZxorX:
                z[f.a] ^= x[f.a];
                break;
            case kXxorZ:
                x[f.a] ^= z[f.a];
                break;
            case kCnot:
                x[f.b] ^= x[f.a];
                z[f.a] ^= z[f.b];
                break;
            case kCz:
                z[f.a] ^= x[f.b];
                z[f.b] ^= x[f.a];
                break;
            case kMeasure: {
                uint64_t flip = 0;
                uint64_t r = gauge.next();
                for (uint32_t k = f.term_begin; k < f.term_end; k++) {
                    auto [q, l] = terms_[k];
                    if (l & 1) {
                        flip ^= z[q];
                    }
                    if (l & 2) {
                        flip ^= x[q];
                    }
                }
                // Gauge only after the whole parity is read: a Y term touches both halves.
                for (uint32_t k = f.term_begin; k < f.term_end; k++) {
                    auto [q, l] = terms_[k];
                    if (l & 1) {
                        x[q] ^= r;
                    }
                    if (l & 2) {
                        z[q] ^= r;
                    }
                }
                for_events(f, [&](unsigned lane, uint64_t) { flip ^= uint64_t{1} << lane; });
                rows[f.meas] = flip ^ (reference_[f.meas] ? ~uint64_t{0} : 0);
                break;
            }
            case kReset:
                x[f.a] = 0;
                z[f.a] = gauge.next();
                break;
            case kDep1:
                for_events(f, [&](unsigned lane, uint64_t c) { inject1(f.a, lane, kLetterOf[1 + c % 3]); });
                break;
            case kDep2:
                for_events(f, [&](unsigned lane, uint64_t c) {
                    unsigned k = 1 + (unsigned)(c % 15);
                    inject1(f.a, lane, kLetterOf[k & 3]);
                    inject1(f.b, lane, kLetterOf[k >> 2]);
                });
                break;
            case kXErr:
                for_events(f, [&](unsigned lane, uint64_t) { inject1(f.a, lane, 1); });
                break;
            case kYErr:
                for_events(f, [&](unsigned lane, uint64_t) { inject1(f.a, lane, 3); });
                break;
            case kZErr:
                for_events(f, [&](unsigned lane, uint64_t) { inject1(f.a, lane, 2); });
                break;
            default:
                break;
        }
    }
}

void FrameSampler::sample(uint64_t num_shots, uint64_t seed,
                          const std::function<void(uint64_t, const std::vector<uint64_t> &, uint64_t)> &fn,
                          const ClassScale &scale) const {
    std::vector<uint64_t> x(num_qubits_), z(num_qubits_), rows(num_measurements_);
    uint64_t batches = (num_shots + 63) / 64;
    for (uint64_t b = 0; b < batches; b++) {
        run_batch(b, seed, scale, x, z, rows);
        uint64_t left = num_shots - b * 64;
        uint64_t valid = left >= 64 ? ~uint64_t{0} : ((uint64_t{1} << left) - 1);
        fn(b, rows, valid);
    }
}

void FrameSampler::sample_parallel(uint64_t num_shots, uint64_t seed,
                                   const std::function<void(uint64_t, const std::vector<uint64_t> &, uint64_t)> &fn,
                                   const ClassScale &scale, unsigned threads) const {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    uint64_t batches = (num_shots + 63) / 64;
    if (threads == 1 || batches < 2) {
        sample(num_shots, seed, fn, scale);
        return;
    }
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; t++) {
        pool.emplace_back([&, t] {
            std::vector<uint64_t> x(num_qubits_), z(num_qubits_), rows(num_measurements_);
            for (uint64_t b = t; b < batches; b += threads) {
                run_batch(b, seed, scale, x, z, rows);
                uint64_t left = num_shots - b * 64;
                uint64_t valid = left >= 64 ? ~uint64_t{0} : ((uint64_t{1} << left) - 1);
                std::lock_guard<std::mutex> lock(mu);
                fn(b, rows, valid);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
}

std::vector<std::vector<bool>> propagate_faults(const Circuit &circuit, const std::vector<Fault> &faults,
                                                const std::vector<Parity> &parities) {
    circuit.validate();
    const auto &ops = circuit.instructions();
    std::size_t nq = circuit.num_qubits();
    std::vector<std::vector<bool>> result(faults.size(), std::vector<bool>(parities.size(), false));
    std::vector<std::vector<std::size_t>> by_position(ops.size() + 1);
    for (std::size_t chunk = 0; chunk < faults.size(); chunk += 64) {
        std::size_t lanes = std::min<std::size_t>(64, faults.size() - chunk);
        for (auto &v : by_position) {
            v.clear();
        }
        for (std::size_t l = 0; l < lanes; l++) {
            const auto &f = faults[chunk + l];
            if (f.before > ops.size()) {
                throw std::out_of_range("fault position past the end of the circuit");
            }
            by_position[f.before].push_back(l);
        }
        std::vector<uint64_t> x(nq, 0), z(nq, 0), rows;
        for (std::size_t k = 0; k <= ops.size(); k++) {
            uint64_t mflip = 0;
            for (auto l : by_position[k]) {
                const auto &f = faults[chunk + l];
                uint64_t bit = uint64_t{1} << l;
                if (f.pauli == 'M') {
                    mflip ^= bit;
                    continue;
                }
                if (f.qubit >= nq) {
                    throw std::out_of_range("fault qubit out of range");
                }
                if (f.pauli == 'X' || f.pauli == 'Y') {
                    x[f.qubit] ^= bit;
                }
                if (f.pauli == 'Z' || f.pauli == 'Y') {
                    z[f.qubit] ^= bit;
                }
            }
            if (k == ops.size()) {
                break;
            }
            const auto &ins = ops[k];
            const auto &t = ins.qubits;
            switch (ins.op) {
                case Op::H:
                    std::swap(x[t[0]], z[t[0]]);
                    break;
                case Op::S:
                case Op::Sdg:
                    z[t[0]] ^= x[t[0]];
                    break;
                case Op::Rx:
                case Op::Ry:
                case Op::Rz:
                    if (!is_clifford_angle(ins.angle)) {
                        throw std::invalid_argument("non-Clifford rotation in fault propagation");
                    }
                    if (quarter_turns(ins.angle) % 2) {
                        if (ins.op == Op::Rz) {
                            z[t[0]] ^= x[t[0]];
                        } else if (ins.op == Op::Rx) {
                            x[t[0]] ^= z[t[0]];
                        } else {
                            std::swap(x[t[0]], z[t[0]]);
                        }
                    }
                    break;
                case Op::CNOT:
                    x[t[1]] ^= x[t[0]];
                    z[t[0]] ^= z[t[1]];
                    break;
                case Op::CZ:
                    z[t[0]] ^= x[t[1]];
                    z[t[1]] ^= x[t[0]];
                    break;
                case Op::MeasurePauli: {
                    uint64_t flip = mflip;
                    for (auto q : t) {
                        if (ins.pauli.x(q)) {
                            flip ^= z[q];
                        }
                        if (ins.pauli.z(q)) {
                            flip ^= x[q];
                        }
                    }
                    rows.push_back(flip);
                    break;
                }
                case Op::ResetZ:
                    x[t[0]] = 0;
                    z[t[0]] = 0;
                    break;
                default:
                    break;
            }
        }
        for (std::size_t j = 0; j < parities.size(); j++) {
            uint64_t w = 0;
            for (auto idx : parities[j].indices()) {
                if (idx >= rows.size()) {
                    throw std::out_of_range("parity refers past the end of the record");
                }
                w ^= rows[idx];
            }
            for (std::size_t l = 0; l < lanes; l++) {
                result[chunk + l][j] = (w >> l) & 1;
            }
        }
    }
    return result;
}

}  // namespace floq
