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


#include "floq/harness/sampling.hpp"

#include <bit>
#include <cmath>

#include "floq/tableau/simulator.hpp"
#include "floq/vector/state_vector.hpp"

namespace floq::harness {

Backend parse_backend(std::string_view text) {
    if (text == "tableau") return Backend::Tableau;
    if (text == "vector") return Backend::Vector;
    if (text == "auto") return Backend::Auto;
    throw std::invalid_argument("unknown backend '" + std::string(text) + "'");
}

const char *backend_name(Backend b) {
    switch (b) {
        case Backend::Tableau: return "tableau";
        case Backend::Vector: return "vector";
        default: return "auto";
    }
}

bool has_non_clifford(const Circuit &circuit) {
    for (const auto &ins : circuit.instructions()) {
        if (is_rotation(ins.op) && !is_clifford_angle(ins.angle)) {
            return true;
        }
    }
    return false;
}

Backend resolve_backend(const Circuit &circuit, Backend requested) {
    bool nc = has_non_clifford(circuit);
    if (requested == Backend::Auto) {
        return nc ? Backend::Vector : Backend::Tableau;
    }
    if (requested == Backend::Tableau && nc) {
        throw SimulationError("tableau backend cannot run a non-Clifford rotation");
    }
    return requested;
}

namespace {

ClassScale thinning(const NoiseModel &eval, const NoiseModel &ceiling) {
    ClassScale s = unit_scale();
    for (auto c : kBudgetClasses) {
        double top = ceiling.rate(c);
        double want = eval.rate(c);
        if (want > top + 1e-15) {
            throw SimulationError("evaluated noise rate exceeds the sampling ceiling");
        }
        s[(int)c] = top > 0 ? want / top : 1;
    }
    return s;
}

}  // namespace

ShotTable sample_parities(const Circuit &circuit, const NoiseModel &noise, const std::vector<Parity> &parities,
                          uint64_t shots, const SampleOptions &options) {
    ShotTable t;
    t.shots = shots;
    std::size_t words = (shots + 63) / 64;
    t.valid.assign(words, 0);
    t.bits.assign(parities.size(), std::vector<uint64_t>(words, 0));
    Backend b = resolve_backend(circuit, options.backend);
    if (b == Backend::Tableau) {
        const NoiseModel &top = options.ceiling ? *options.ceiling : noise;
        ClassScale scale = options.ceiling ? thinning(noise, top) : unit_scale();
        FrameSampler sampler(instrument(circuit, top), options.seed ^ 0x5eedULL);
        sampler.sample(
            shots, options.seed,
            [&](uint64_t batch, const std::vector<uint64_t> &rows, uint64_t valid) {
                t.valid[batch] = valid;
                for (std::size_t k = 0; k < parities.size(); k++) {
                    t.bits[k][batch] = parities[k].eval_bits(rows) & valid;
                }
            },
            scale);
        return t;
    }
    VectorShotRunner runner(instrument(circuit, noise));
    for (uint64_t s = 0; s < shots; s++) {
        const auto &rec = runner.run(options.seed, s);
        uint64_t bit = uint64_t{1} << (s % 64);
        t.valid[s / 64] |= bit;
        for (std::size_t k = 0; k < parities.size(); k++) {
            if (parities[k].eval(rec) < 0) {
                t.bits[k][s / 64] |= bit;
            }
        }
    }
    return t;
}

double Tally::error(double mean, double n) const {
    if (exact || n <= 0) {
        return 0;
    }
    return std::sqrt(std::max(0.0, 1 - mean * mean) / n);
}

namespace {

Tally empty_tally(std::size_t nd, std::size_t no) {
    Tally t;
    t.fired.assign(nd, 0);
    t.sum_raw.assign(no, 0);
    t.sum_kept.assign(no, 0);
    return t;
}

// Histogram slot of (static, dynamical) values: order [--, -+, +-, ++].
int slot(int s, int d) { return (s > 0 ? 2 : 0) + (d > 0 ? 1 : 0); }

}  // namespace

Tally tally(const ShotTable &table, std::size_t num_detectors) {
    std::size_t no = table.bits.size() - num_detectors;
    Tally t = empty_tally(num_detectors, no);
    t.total = (double)table.shots;
    for (std::size_t w = 0; w < table.num_words(); w++) {
        uint64_t v = table.valid[w];
        uint64_t any = 0;
        for (std::size_t k = 0; k < num_detectors; k++) {
            uint64_t f = table.bits[k][w] & v;
            t.fired[k] += std::popcount(f);
            any |= f;
        }
        uint64_t keep = v & ~any;
        t.kept += std::popcount(keep);
        for (std::size_t k = 0; k < no; k++) {
            uint64_t neg = table.bits[num_detectors + k][w];
            t.sum_raw[k] += std::popcount(v) - 2.0 * std::popcount(neg & v);
            t.sum_kept[k] += std::popcount(keep) - 2.0 * std::popcount(neg & keep);
        }
        if (no >= 2) {
            uint64_t s = ~table.bits[num_detectors][w], d = ~table.bits[num_detectors + 1][w];
            uint64_t cell[4] = {~s & ~d, ~s & d, s & ~d, s & d};
            for (int c = 0; c < 4; c++) {
                t.hist_raw[c] += std::popcount(cell[c] & v);
                t.hist_kept[c] += std::popcount(cell[c] & keep);
            }
        }
    }
    return t;
}

Tally tally_exact(const Circuit &circuit, const std::vector<Parity> &detectors,
                  const std::vector<Parity> &observables, std::size_t max_branches) {
    std::vector<Parity> tracked = detectors;
    tracked.insert(tracked.end(), observables.begin(), observables.end());
    EnumerateOptions opt;
    opt.max_branches = max_branches;
    std::vector<Branch> branches;
    try {
        branches = enumerate_branches(circuit, tracked, opt);
    } catch (const std::runtime_error &e) {
        throw SimulationError(std::string(e.what()) + " (ancilla-lowered circuits branch on every gauge outcome; "
                              "lowering = direct keeps exact enumeration small)");
    }
    std::size_t nd = detectors.size(), no = observables.size();
    Tally t = empty_tally(nd, no);
    t.exact = true;
    for (const auto &b : branches) {
        t.total += b.prob;
        bool quiet = true;
        for (std::size_t k = 0; k < nd; k++) {
            if (b.tracked[k] < 0) {
                t.fired[k] += b.prob;
                quiet = false;
            }
        }
        if (quiet) {
            t.kept += b.prob;
        }
        for (std::size_t k = 0; k < no; k++) {
            int v = b.tracked[nd + k];
            t.sum_raw[k] += v * b.prob;
            if (quiet) t.sum_kept[k] += v * b.prob;
        }
        if (no >= 2) {
            int c = slot(b.tracked[nd], b.tracked[nd + 1]);
            t.hist_raw[c] += b.prob;
            if (quiet) t.hist_kept[c] += b.prob;
        }
    }
    return t;
}

Tally run_tally(const Circuit &circuit, const NoiseModel &noise, const std::vector<Parity> &detectors,
                const std::vector<Parity> &observables, const RunOptions &options) {
    Backend b = resolve_backend(circuit, options.backend);
    if (b == Backend::Vector && circuit.num_qubits() > options.vector_qubit_budget) {
        throw SimulationError("circuit needs " + std::to_string(circuit.num_qubits()) +
                              " qubits, above the vector backend budget of " +
                              std::to_string(options.vector_qubit_budget));
    }
    if (b == Backend::Vector && noise.is_noiseless()) {
        return tally_exact(circuit, detectors, observables);
    }
    std::vector<Parity> all = detectors;
    all.insert(all.end(), observables.begin(), observables.end());
    SampleOptions so;
    so.backend = b;
    so.seed = options.seed;
    so.ceiling = options.ceiling;
    return tally(sample_parities(circuit, noise, all, options.shots, so), detectors.size());
}

}  // namespace floq::harness
