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


#ifndef FLOQ_HARNESS_SAMPLING_HPP
#define FLOQ_HARNESS_SAMPLING_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "floq/core/circuit.hpp"
#include "floq/core/record.hpp"
#include "floq/noise/noise.hpp"

namespace floq::harness {

/// Raised when a run cannot be carried out (bad backend for the circuit, too
/// many branches, and so on).
struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Backend { Tableau, Vector, Auto };
Backend parse_backend(std::string_view text);
const char *backend_name(Backend b);

/// True if any rotation angle is not a multiple of pi/2.
bool has_non_clifford(const Circuit &circuit);
/// Auto picks the vector backend for non-Clifford circuits; requesting the
/// tableau backend for such a circuit is an error.
Backend resolve_backend(const Circuit &circuit, Backend requested);

/// Sampled bits (1 means -1) of a list of parities, 64 shots per word.
struct ShotTable {
    uint64_t shots = 0;
    std::vector<std::vector<uint64_t>> bits;  // [parity][word]
    std::vector<uint64_t> valid;              // [word]
    std::size_t num_words() const { return valid.size(); }
    bool bit(std::size_t parity, uint64_t shot) const { return (bits[parity][shot / 64] >> (shot % 64)) & 1; }
};

struct SampleOptions {
    Backend backend = Backend::Auto;
    uint64_t seed = 1;
    /// When set, error events are drawn at these rates and thinned to the
    /// evaluated ones, so runs with the same seed and ceiling share randomness.
    /// Tableau backend only.
    const NoiseModel *ceiling = nullptr;
};

ShotTable sample_parities(const Circuit &circuit, const NoiseModel &noise, const std::vector<Parity> &parities,
                          uint64_t shots, const SampleOptions &options = {});

/// Weighted statistics of detectors plus observables. A unit of weight is a
/// shot for sampled data and a probability for exact enumeration.
struct Tally {
    double total = 0;
    double kept = 0;                      // weight with no detector fired
    std::vector<double> fired;            // per detector
    std::vector<double> sum_raw, sum_kept;  // per observable, sum of +-1 values
    /// Joint histogram of the first two observables, order [--, -+, +-, ++].
    std::array<double, 4> hist_raw{}, hist_kept{};
    bool exact = false;

    double retention() const { return total > 0 ? kept / total : 0; }
    double mean_raw(std::size_t k) const { return total > 0 ? sum_raw[k] / total : 0; }
    double mean_kept(std::size_t k) const { return kept > 0 ? sum_kept[k] / kept : 0; }
    /// Binomial standard error of a mean over n shots (0 when exact).
    double error(double mean, double n) const;
};

/// Tally from a table whose first `num_detectors` rows are detectors and the
/// rest observables.
Tally tally(const ShotTable &table, std::size_t num_detectors);

/// Exact tally of a noiseless circuit by outcome-tree enumeration.
Tally tally_exact(const Circuit &circuit, const std::vector<Parity> &detectors,
                  const std::vector<Parity> &observables, std::size_t max_branches = 1 << 12);

struct RunOptions {
    Backend backend = Backend::Auto;
    uint64_t shots = 10000;
    uint64_t seed = 1;
    std::size_t vector_qubit_budget = 24;
    const NoiseModel *ceiling = nullptr;
};

/// Runs a circuit and tallies it. Noiseless vector runs are enumerated exactly.
Tally run_tally(const Circuit &circuit, const NoiseModel &noise, const std::vector<Parity> &detectors,
                const std::vector<Parity> &observables, const RunOptions &options);

}  // namespace floq::harness

#endif
