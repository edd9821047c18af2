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

#ifndef FLOQ_TOMO_TOMO_HPP
#define FLOQ_TOMO_TOMO_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace floq::tomo {

/// Two-qubit density matrix; the static qubit is the first (most significant) factor.
using DensityMatrix = Eigen::Matrix4cd;
/// p[4*i + j] = Tr(rho sigma_i (x) sigma_j), sigma in {I, X, Y, Z}.
using PauliVector = std::array<double, 16>;
using TransferMatrix = Eigen::Matrix<double, 16, 16>;

/// Histogram for one two-qubit basis, outcome order [--, -+, +-, ++]
/// (first sign belongs to the static qubit).
using Histogram = std::array<double, 4>;
/// Keyed by basis string, e.g. "XZ".
using Counts = std::map<std::string, Histogram>;

const Eigen::Matrix2cd &pauli_matrix(int k);  // 0..3 = I, X, Y, Z
Eigen::Matrix4cd pauli_product(int i, int j);
int pauli_index(char c);  // 'I','X','Y','Z' -> 0..3

/// Outcome probabilities [--, -+, +-, ++] of measuring `basis` on rho.
Histogram basis_probabilities(const DensityMatrix &rho, const std::string &basis);

/// Constrained least-squares reconstruction from the nine bases {X,Y,Z}^2.
DensityMatrix lqst(const Counts &counts);

/// Eigenvalue projection onto the set of density matrices.
DensityMatrix project_physical(const Eigen::Matrix4cd &m);

PauliVector pauli_vector(const DensityMatrix &rho);
DensityMatrix from_pauli_vector(const PauliVector &p);

/// Least-squares transfer matrix from (input, output) pairs, first row set to
/// (1, 0, ..., 0), entries clipped to [-1, 1]. With `cptp` the Choi matrix is
/// additionally projected to positive semidefinite before the final step.
TransferMatrix lqpt(const std::vector<PauliVector> &inputs, const std::vector<PauliVector> &outputs,
                    bool cptp = false);

/// R_ij = Tr(P_i U P_j U^dagger) / 4.
TransferMatrix unitary_transfer_matrix(const Eigen::Matrix4cd &u);

struct ProcessFidelity {
    double process = 0;  // Tr(R_ideal^T R_exp) / 16
    double gate = 0;     // (4 F_p + 1) / 5
};
ProcessFidelity process_and_gate_fidelity(const TransferMatrix &r_exp, const TransferMatrix &r_ideal);
double gate_fidelity_from_process(double f_p);

double state_fidelity(const DensityMatrix &rho, const Eigen::Vector4cd &target);
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);
bool is_physical(const DensityMatrix &rho, double tol = 1e-9);

/// Single-qubit Bloch vector from X, Y, Z histograms [n-, n+].
std::array<double, 3> bloch_from_counts(const std::array<std::array<double, 2>, 3> &counts);

}  // namespace floq::tomo

#endif
