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

#include "floq/tomo/tomo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace floq::tomo {

using cd = std::complex<double>;

const Eigen::Matrix2cd &pauli_matrix(int k) {
    static const std::array<Eigen::Matrix2cd, 4> m = [] {
        std::array<Eigen::Matrix2cd, 4> p;
        p[0] << 1, 0, 0, 1;
        p[1] << 0, 1, 1, 0;
        p[2] << 0, cd(0, -1), cd(0, 1), 0;
        p[3] << 1, 0, 0, -1;
        return p;
    }();
    return m.at(k);
}

Eigen::Matrix4cd pauli_product(int i, int j) {
    return Eigen::kroneckerProduct(pauli_matrix(i), pauli_matrix(j));
}

int pauli_index(char c) {
    switch (c) {
        case 'I':
            return 0;
        case 'X':
            return 1;
        case 'Y':
            return 2;
        case 'Z':
            return 3;
    }
    throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
}

namespace {

// Projector onto outcome (a, b) of basis (i, j); sign bit 0 = -1, 1 = +1.
Eigen::Matrix4cd projector(int i, int j, int o) {
    int sa = (o >> 1) ? 1 : -1, sb = (o & 1) ? 1 : -1;
    Eigen::Matrix2cd pa = (pauli_matrix(0) + double(sa) * pauli_matrix(i)) / 2.0;
    Eigen::Matrix2cd pb = (pauli_matrix(0) + double(sb) * pauli_matrix(j)) / 2.0;
    return Eigen::kroneckerProduct(pa, pb);
}

const char kLetters[3] = {'X', 'Y', 'Z'};

// Euclidean projection of a real vector onto the probability simplex.
Eigen::Vector4d simplex(const Eigen::Vector4d &v) {
    std::array<double, 4> u = {v[0], v[1], v[2], v[3]};
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0, theta = 0;
    for (int k = 0; k < 4; k++) {
        cum += u[k];
        double t = (cum - 1) / (k + 1);
        if (u[k] - t > 0) {
            theta = t;
        }
    }
    Eigen::Vector4d out;
    for (int k = 0; k < 4; k++) {
        out[k] = std::max(v[k] - theta, 0.0);
    }
    return out;
}

struct Data {
    std::vector<Eigen::Matrix4cd> proj;
    std::vector<double> freq;
};

double loss(const Data &d, const DensityMatrix &rho) {
    double l = 0;
    for (std::size_t k = 0; k < d.proj.size(); k++) {
        double r = (rho * d.proj[k]).trace().real() - d.freq[k];
        l += r * r;
    }
    return l;
}

}  // namespace

Histogram basis_probabilities(const DensityMatrix &rho, const std::string &basis) {
    if (basis.size() != 2) {
        throw std::invalid_argument("basis must have two letters");
    }
    int i = pauli_index(basis[0]), j = pauli_index(basis[1]);
    Histogram h;
    for (int o = 0; o < 4; o++) {
        h[o] = std::max(0.0, (rho * projector(i, j, o)).trace().real());
    }
    return h;
}

DensityMatrix project_physical(const Eigen::Matrix4cd &m) {
    Eigen::Matrix4cd h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    Eigen::Vector4d w = simplex(es.eigenvalues());
    return es.eigenvectors() * w.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

DensityMatrix lqst(const Counts &counts) {
    Data data;
    PauliVector p{};
    p[0] = 1;
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            std::string key{kLetters[a], kLetters[b]};
            auto it = counts.find(key);
            if (it == counts.end()) {
                throw std::invalid_argument("missing histogram for basis " + key);
            }
            const Histogram &h = it->second;
            double n = h[0] + h[1] + h[2] + h[3];
            if (!(n > 0)) {
                throw std::invalid_argument("empty histogram for basis " + key);
            }
            double f[4] = {h[0] / n, h[1] / n, h[2] / n, h[3] / n};
            int i = a + 1, j = b + 1;
            p[4 * i + j] = f[0] - f[1] - f[2] + f[3];
            p[4 * i] += f[3] + f[2] - f[1] - f[0];
            p[j] += f[3] + f[1] - f[2] - f[0];
            for (int o = 0; o < 4; o++) {
                data.proj.push_back(projector(i, j, o));
                data.freq.push_back(f[o]);
            }
        }
    }
    for (int k = 1; k < 4; k++) {
        p[4 * k] /= 3;
        p[k] /= 3;
    }
    DensityMatrix rho = project_physical(from_pauli_vector(p));

    // One projected-gradient step on the squared probability residuals.
    Eigen::Matrix4cd grad = Eigen::Matrix4cd::Zero();
    for (std::size_t k = 0; k < data.proj.size(); k++) {
        grad += 2.0 * ((rho * data.proj[k]).trace().real() - data.freq[k]) * data.proj[k];
    }
    double base = loss(data, rho);
    for (double step = 0.25; step > 1e-4; step /= 2) {
        DensityMatrix trial = project_physical(rho - step * grad);
        if (loss(data, trial) < base) {
            rho = trial;
            break;
        }
    }
    return rho;
}

PauliVector pauli_vector(const DensityMatrix &rho) {
    cd tr = rho.trace();
    if (std::abs(tr) < 1e-15) {
        throw std::invalid_argument("density matrix has zero trace");
    }
    PauliVector p;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            p[4 * i + j] = ((rho * pauli_product(i, j)).trace() / tr).real();
        }
    }
    return p;
}

DensityMatrix from_pauli_vector(const PauliVector &p) {
    DensityMatrix rho = DensityMatrix::Zero();
    for (int k = 0; k < 16; k++) {
        rho += p[k] * pauli_product(k / 4, k % 4);
    }
    return rho / 4.0;
}

TransferMatrix lqpt(const std::vector<PauliVector> &inputs, const std::vector<PauliVector> &outputs, bool cptp) {
    if (inputs.size() != outputs.size() || inputs.size() < 16) {
        throw std::invalid_argument("need at least 16 matching input/output Pauli vectors");
    }
    const std::size_t n = inputs.size();
    Eigen::MatrixXd in(16, n), out(16, n);
    for (std::size_t c = 0; c < n; c++) {
        for (int r = 0; r < 16; r++) {
            in(r, c) = inputs[c][r];
            out(r, c) = outputs[c][r];
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(in);
    const auto &sv = svd.singularValues();
    double cond = sv[0] / sv[sv.size() - 1];
    if (!(sv[sv.size() - 1] > 1e-10 * sv[0])) {
        throw std::invalid_argument("input states are rank deficient (condition number " + std::to_string(cond) +
                                    ")");
    }
    // R in = out  <=>  in^T R^T = out^T.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd_t(in.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    TransferMatrix r = svd_t.solve(out.transpose()).transpose();
    if (cptp) {
        // Choi matrix (up to scale): J = 1/16 sum_ij R_ij P_j^T (x) P_i.
        Eigen::Matrix<cd, 16, 16> choi = Eigen::Matrix<cd, 16, 16>::Zero();
        for (int i = 0; i < 16; i++) {
            for (int j = 0; j < 16; j++) {
                if (r(i, j) != 0) {
                    choi += r(i, j) * Eigen::kroneckerProduct(Eigen::Matrix4cd(pauli_product(j / 4, j % 4).transpose()),
                                                              pauli_product(i / 4, i % 4));
                }
            }
        }
        choi /= 16.0;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cd, 16, 16>> es((choi + choi.adjoint()) / 2.0);
        Eigen::Matrix<double, 16, 1> w = es.eigenvalues().cwiseMax(0.0);
        choi = es.eigenvectors() * w.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
        for (int i = 0; i < 16; i++) {
            for (int j = 0; j < 16; j++) {
                auto pj = Eigen::Matrix4cd(pauli_product(j / 4, j % 4).transpose());
                r(i, j) = (choi * Eigen::kroneckerProduct(pj, pauli_product(i / 4, i % 4))).trace().real();
            }
        }
    }
    r.row(0).setZero();
    r(0, 0) = 1;
    return r.cwiseMax(-1.0).cwiseMin(1.0);
}

TransferMatrix unitary_transfer_matrix(const Eigen::Matrix4cd &u) {
    TransferMatrix r;
    for (int i = 0; i < 16; i++) {
        for (int j = 0; j < 16; j++) {
            r(i, j) = (pauli_product(i / 4, i % 4) * u * pauli_product(j / 4, j % 4) * u.adjoint()).trace().real() / 4;
        }
    }
    return r;
}

double gate_fidelity_from_process(double f_p) { return (4 * f_p + 1) / 5; }

ProcessFidelity process_and_gate_fidelity(const TransferMatrix &r_exp, const TransferMatrix &r_ideal) {
    ProcessFidelity f;
    f.process = (r_ideal.transpose() * r_exp).trace() / 16;
    f.gate = gate_fidelity_from_process(f.process);
    return f;
}

double state_fidelity(const DensityMatrix &rho, const Eigen::Vector4cd &target) {
    Eigen::Vector4cd t = target.normalized();
    return std::clamp((t.adjoint() * rho * t)(0, 0).real(), 0.0, 1.0);
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    Eigen::Matrix4cd d = a - b;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es((d + d.adjoint()) / 2.0);
    return es.eigenvalues().cwiseAbs().sum() / 2;
}

bool is_physical(const DensityMatrix &rho, double tol) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    if (std::abs(rho.trace() - cd(1)) > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    return es.eigenvalues().minCoeff() >= -tol;
}

std::array<double, 3> bloch_from_counts(const std::array<std::array<double, 2>, 3> &counts) {
    std::array<double, 3> v;
    for (int k = 0; k < 3; k++) {
        double n = counts[k][0] + counts[k][1];
        if (!(n > 0)) {
            throw std::invalid_argument("empty single-qubit histogram");
        }
        v[k] = (counts[k][1] - counts[k][0]) / n;
    }
    double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (len > 1) {
        for (auto &x : v) {
            x /= len;
        }
    }
    return v;
}

}  // namespace floq::tomo
