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

#ifndef FLOQ_TABLEAU_SIMULATOR_HPP
#define FLOQ_TABLEAU_SIMULATOR_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "floq/core/circuit.hpp"
#include "floq/core/record.hpp"
#include "floq/noise/noise.hpp"
#include "floq/tableau/tableau.hpp"

namespace floq {

/// Runs one shot of a circuit whose noise channels are already in place.
///
/// Every random draw is a pure function of (seed, shot, instruction index), so
/// a shot can be replayed in isolation.
class TableauShotRunner {
   public:
    explicit TableauShotRunner(const Circuit &instrumented);
    /// Outcomes (+1/-1) in record order.
    const std::vector<int8_t> &run(uint64_t seed, uint64_t shot, bool with_noise = true);
    const Circuit &circuit() const { return circuit_; }

   private:
    Circuit circuit_;
    Tableau tableau_;
    std::vector<int8_t> outcomes_;
};

/// Samples one noisy shot: instruments the circuit with `noise`, then simulates.
MeasRecord run_shot(const Circuit &circuit, const NoiseModel &noise, uint64_t seed, uint64_t shot = 0);

/// Per-class acceptance ratios applied to sampled error events (thinning).
using ClassScale = std::array<double, kNumNoiseClasses>;
inline ClassScale unit_scale() { return {1, 1, 1, 1, 1}; }

/// Batched Pauli-frame sampler: 64 shots per machine word.
///
/// A noiseless tableau run supplies a reference record; each shot is the
/// reference xor the measurement flips of its propagated error frame.
class FrameSampler {
   public:
    FrameSampler(const Circuit &instrumented, uint64_t reference_seed);

    std::size_t num_measurements() const { return num_measurements_; }
    const std::vector<uint8_t> &reference() const { return reference_; }

    /// Calls `fn(batch, rows, valid)` for each batch of 64 shots. `rows[m]`
    /// holds the outcome bits (1 means -1) of measurement m, `valid` masks the
    /// shots that exist in a final partial batch. The random stream of a batch
    /// depends only on (seed, batch).
    void sample(uint64_t num_shots, uint64_t seed,
                const std::function<void(uint64_t, const std::vector<uint64_t> &, uint64_t)> &fn,
                const ClassScale &scale = unit_scale()) const;

    /// Same as `sample` but splits batches across worker threads. The callback
    /// is invoked under a lock.
    void sample_parallel(uint64_t num_shots, uint64_t seed,
                         const std::function<void(uint64_t, const std::vector<uint64_t> &, uint64_t)> &fn,
                         const ClassScale &scale = unit_scale(), unsigned threads = 0) const;

   private:
    struct FOp {
        uint8_t kind;
        uint8_t cls;
        uint32_t a = 0, b = 0;
        double p = 0;
        double log_q = 0;  // log(1 - p)
        uint32_t term_begin = 0, term_end = 0;
        uint32_t meas = 0;
    };
    void run_batch(uint64_t batch, uint64_t seed, const ClassScale &scale, std::vector<uint64_t> &x,
                   std::vector<uint64_t> &z, std::vector<uint64_t> &rows) const;

    std::size_t num_qubits_;
    std::size_t num_measurements_ = 0;
    std::vector<FOp> ops_;
    std::vector<std::pair<uint32_t, uint8_t>> terms_;  // (qubit, letter bits x|z<<1)
    std::vector<uint8_t> reference_;
};

/// A single Pauli fault or measurement flip.
struct Fault {
    std::size_t before = 0;  // injected just before this instruction index
    uint32_t qubit = 0;
    char pauli = 'X';        // 'X', 'Y', 'Z', or 'M' to flip the measurement at `before`
};

/// For every fault, which of the given parities (over the measurement record)
/// it flips, by deterministic frame propagation through the circuit.
std::vector<std::vector<bool>> propagate_faults(const Circuit &circuit, const std::vector<Fault> &faults,
                                                const std::vector<Parity> &parities);

}  // namespace floq

#endif
