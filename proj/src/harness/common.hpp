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


// Shared pieces of the experiment runners.

#ifndef FLOQ_HARNESS_COMMON_HPP
#define FLOQ_HARNESS_COMMON_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "floq/core/rng.hpp"
#include "floq/fbs/code.hpp"
#include "floq/fbs/experiment.hpp"
#include "floq/harness/config.hpp"
#include "floq/harness/fit.hpp"
#include "floq/harness/runners.hpp"
#include "floq/harness/sampling.hpp"
#include "floq/tomo/tomo.hpp"

namespace floq::harness::detail {

using json = nlohmann::ordered_json;

const FbsCode &code();

inline uint64_t sub_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    return hash_key(seed, a + 1, b + 1, c + 1);
}

RunOptions run_options(const Config &cfg, uint64_t seed, const NoiseModel *ceiling = nullptr);

/// Logical readout statistics of one compiled FBS experiment. Observables are
/// (static, dynamical, joint).
struct Measured {
    Tally tally;
    bool ft_encoding = false;
    bool ft_readout = false;
    bool ambiguous = false;
};
Measured measure(const Config &cfg, const ExperimentSpec &spec, uint64_t seed, const NoiseModel &noise,
                 const NoiseModel *ceiling = nullptr);

/// Nine-basis readout of a prepared (and possibly gated) state.
struct Tomography {
    tomo::Counts raw, kept;
    double retention = 0;  // mean over bases
    double min_kept = 0;   // fewest surviving shots (or probability) in a basis
    bool exact = false;
    bool ft_encoding = false;
    bool ambiguous = false;
    /// Kept counts for Post::Detect, raw ones otherwise.
    const tomo::Counts &counts(Post post) const { return post == Post::Raw ? raw : kept; }
};
Tomography tomography(const Config &cfg, ExperimentSpec spec, uint64_t seed, const NoiseModel &noise,
                      const NoiseModel *ceiling = nullptr);
tomo::DensityMatrix reconstruct(const tomo::Counts &counts);

Eigen::Vector2cd eigenstate_vector(const Eigenstate &e);
Eigen::Vector4cd product_state(const StateLabel &label);
Eigen::Matrix4cd cnot_matrix();  // static qubit controls

std::vector<StateLabel> labels(const Config &cfg);
std::vector<Eigenstate> eigenstates(const Config &cfg);

json estimate(double value, double error);
json fit_json(const FitResult &f);
json noise_json(const NoiseModel &m);
json matrix_json(const tomo::DensityMatrix &rho);
std::string num(double v);

// Per-experiment runners.
RunOutput run_encode_fidelity(const Config &cfg);
RunOutput run_fbs_memory(const Config &cfg);
RunOutput run_pauli_gates(const Config &cfg);
RunOutput run_rotation_sweep(const Config &cfg);
RunOutput run_cnot_bell(const Config &cfg);
RunOutput run_lqpt_cnot(const Config &cfg);
RunOutput run_bs_memory(const Config &cfg);
RunOutput run_bs_gates(const Config &cfg);
RunOutput run_error_budget(const Config &cfg);

}  // namespace floq::harness::detail

#endif
