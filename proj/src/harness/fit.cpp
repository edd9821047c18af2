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


#include "floq/harness/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace floq::harness {

double FitResult::value(const std::string &name) const {
    for (const auto &p : parameters) {
        if (p.name == name) return p.value;
    }
    throw std::out_of_range("no fit parameter '" + name + "'");
}

double FitResult::error(const std::string &name) const {
    for (const auto &p : parameters) {
        if (p.name == name) return p.error;
    }
    throw std::out_of_range("no fit parameter '" + name + "'");
}

namespace {

void check_sizes(const std::vector<double> &x, const std::vector<double> &y, std::size_t min_points) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit inputs differ in length");
    }
    if (x.size() < min_points) {
        throw std::invalid_argument("fit needs at least " + std::to_string(min_points) + " points");
    }
}

// Covariance from a Jacobian; pseudo-inverse so unidentifiable directions get zero.
Eigen::MatrixXd covariance(const Eigen::MatrixXd &J, const Eigen::VectorXd &w, double scale) {
    Eigen::MatrixXd JtJ = J.transpose() * w.asDiagonal() * J;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(JtJ, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd s = svd.singularValues();
    double tol = 1e-12 * std::max(1.0, s(0));
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (int k = 0; k < s.size(); k++) {
        if (s(k) > tol) inv(k) = 1 / s(k);
    }
    return scale * svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double residual_scale(double rss, std::size_t n, std::size_t k) { return n > k ? rss / (double)(n - k) : 0; }

FitResult degenerate_decay(const std::vector<double> &y) {
    FitResult f;
    f.model = "exp-decay";
    f.points = y.size();
    f.degenerate = true;
    double mean = 0;
    for (double v : y) mean += v / y.size();
    f.parameters = {{"A", mean, 0}, {"eps", 0, 0}};
    for (double v : y) f.residual_norm += (v - mean) * (v - mean);
    f.residual_norm = std::sqrt(f.residual_norm);
    return f;
}

}  // namespace

FitResult fit_exp_decay(const std::vector<double> &r, const std::vector<double> &y, const std::vector<double> &sigma) {
    check_sizes(r, y, 3);
    if (!sigma.empty() && sigma.size() != y.size()) {
        throw std::invalid_argument("fit sigma differs in length");
    }
    std::size_t n = y.size();
    Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
    bool weighted = std::any_of(sigma.begin(), sigma.end(), [](double e) { return e > 0; });
    if (weighted) {
        for (std::size_t i = 0; i < n; i++) {
            w(i) = sigma[i] > 0 ? 1 / (sigma[i] * sigma[i]) : 1e12;
        }
    }
    // Start from a log-linear fit of the positive points.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; i++) {
        if (y[i] > 0) {
            double ly = std::log(y[i]);
            sx += r[i], sy += ly, sxx += r[i] * r[i], sxy += r[i] * ly;
            m++;
        }
    }
    double den = m * sxx - sx * sx;
    if (m < 2 || std::abs(den) < 1e-12) {
        return degenerate_decay(y);
    }
    double slope = (m * sxy - sx * sy) / den;
    double A = std::exp((sy - slope * sx) / m), lam = std::exp(slope);

    auto rss_of = [&](double a, double l) {
        double s = 0;
        for (std::size_t i = 0; i < n; i++) {
            double e = y[i] - a * std::pow(l, r[i]);
            s += w(i) * e * e;
        }
        return s;
    };
    auto jac = [&](double a, double l) {
        Eigen::MatrixXd J(n, 2);
        for (std::size_t i = 0; i < n; i++) {
            J(i, 0) = std::pow(l, r[i]);
            J(i, 1) = r[i] == 0 ? 0 : a * r[i] * std::pow(l, r[i] - 1);
        }
        return J;
    };
    double rss = rss_of(A, lam);
    for (int it = 0; it < 200; it++) {
        Eigen::MatrixXd J = jac(A, lam);
        Eigen::VectorXd res(n);
        for (std::size_t i = 0; i < n; i++) res(i) = y[i] - A * std::pow(lam, r[i]);
        Eigen::Vector2d step =
            (J.transpose() * w.asDiagonal() * J).ldlt().solve(J.transpose() * w.asDiagonal() * res);
        if (!step.allFinite()) break;
        double t = 1;
        bool moved = false;
        for (int h = 0; h < 40; h++, t /= 2) {
            double a2 = A + t * step(0), l2 = lam + t * step(1);
            if (l2 <= 0) continue;
            double r2 = rss_of(a2, l2);
            if (r2 <= rss) {
                moved = std::abs(a2 - A) + std::abs(l2 - lam) > 1e-15;
                A = a2, lam = l2, rss = r2;
                break;
            }
        }
        if (!moved) break;
    }
    if (!std::isfinite(A) || !std::isfinite(lam) || A <= 0 || lam <= 0) {
        return degenerate_decay(y);
    }
    Eigen::MatrixXd cov = covariance(jac(A, lam), w, weighted ? 1.0 : residual_scale(rss, n, 2));
    FitResult f;
    f.model = "exp-decay";
    f.points = n;
    f.parameters = {{"A", A, std::sqrt(std::max(0.0, cov(0, 0)))},
                    {"eps", (1 - lam) / 2, std::sqrt(std::max(0.0, cov(1, 1))) / 2}};
    double plain = 0;
    for (std::size_t i = 0; i < n; i++) {
        double e = y[i] - A * std::pow(lam, r[i]);
        plain += e * e;
    }
    f.residual_norm = std::sqrt(plain);
    return f;
}

FitResult fit_leakage(const std::vector<double> &r, const std::vector<double> &p) {
    check_sizes(r, p, 4);
    std::size_t n = p.size();
    // For fixed b the model is linear in (a, p0); search b, solve the rest.
    auto basis = [&](double b, std::size_t i) {
        double e = std::exp(-b * r[i]);
        double g = b * r[i] < 1e-8 ? r[i] : (1 - e) / b;
        return std::pair<double, double>(g, e);
    };
    auto solve = [&](double b, double *a, double *p0) {
        Eigen::MatrixXd M(n, 2);
        Eigen::VectorXd v(n);
        for (std::size_t i = 0; i < n; i++) {
            auto [g, e] = basis(b, i);
            M(i, 0) = g, M(i, 1) = e, v(i) = p[i];
        }
        Eigen::Vector2d c = M.colPivHouseholderQr().solve(v);
        *a = c(0), *p0 = c(1);
        return (M * c - v).squaredNorm();
    };
    const int grid = 240;
    double lo = std::log(1e-4), hi = std::log(10.0);
    int best = 0;
    double best_rss = std::numeric_limits<double>::infinity(), a, p0;
    for (int k = 0; k <= grid; k++) {
        double s = solve(std::exp(lo + (hi - lo) * k / grid), &a, &p0);
        if (s < best_rss - 1e-18) best_rss = s, best = k;
    }
    double x0 = lo + (hi - lo) * std::max(0, best - 1) / grid;
    double x1 = lo + (hi - lo) * std::min(grid, best + 1) / grid;
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 100; it++) {
        double u = x1 - g * (x1 - x0), v = x0 + g * (x1 - x0);
        if (solve(std::exp(u), &a, &p0) < solve(std::exp(v), &a, &p0)) {
            x1 = v;
        } else {
            x0 = u;
        }
    }
    double b = std::exp((x0 + x1) / 2);
    double rss = solve(b, &a, &p0);
    Eigen::MatrixXd J(n, 3);
    for (std::size_t i = 0; i < n; i++) {
        auto [gi, e] = basis(b, i);
        J(i, 0) = gi;
        // d/db of a*g(b) + p0*e(b)
        double dg = b * r[i] < 1e-8 ? -r[i] * r[i] / 2 : (r[i] * e * b - (1 - e)) / (b * b);
        J(i, 1) = a * dg - p0 * r[i] * e;
        J(i, 2) = e;
    }
    Eigen::MatrixXd cov = covariance(J, Eigen::VectorXd::Ones(n), residual_scale(rss, n, 3));
    FitResult f;
    f.model = "leakage-saturation";
    f.points = n;
    f.parameters = {{"eps_leak", a, std::sqrt(std::max(0.0, cov(0, 0)))},
                    {"eps_d", b, std::sqrt(std::max(0.0, cov(1, 1)))},
                    {"p0", p0, std::sqrt(std::max(0.0, cov(2, 2)))}};
    f.residual_norm = std::sqrt(rss);
    return f;
}

FitResult fit_trig(const std::vector<double> &x, const std::vector<double> &y) {
    check_sizes(x, y, 3);
    std::size_t n = y.size();
    Eigen::MatrixXd M(n, 3);
    Eigen::VectorXd v(n);
    for (std::size_t i = 0; i < n; i++) {
        M(i, 0) = std::cos(x[i]), M(i, 1) = std::sin(x[i]), M(i, 2) = 1, v(i) = y[i];
    }
    Eigen::Vector3d c = M.colPivHouseholderQr().solve(v);
    double rss = (M * c - v).squaredNorm();
    Eigen::MatrixXd cov = covariance(M, Eigen::VectorXd::Ones(n), residual_scale(rss, n, 3));
    double amp = std::hypot(c(0), c(1));
    double amp_err = 0, phase_err = 0;
    if (amp > 0) {
        Eigen::Vector2d ga(c(0) / amp, c(1) / amp), gp(-c(1) / (amp * amp), c(0) / (amp * amp));
        Eigen::Matrix2d cab = cov.topLeftCorner(2, 2);
        amp_err = std::sqrt(std::max(0.0, (double)(ga.transpose() * cab * ga)));
        phase_err = std::sqrt(std::max(0.0, (double)(gp.transpose() * cab * gp)));
    }
    FitResult f;
    f.model = "trig";
    f.points = n;
    f.parameters = {{"a", c(0), std::sqrt(std::max(0.0, cov(0, 0)))},
                    {"b", c(1), std::sqrt(std::max(0.0, cov(1, 1)))},
                    {"c", c(2), std::sqrt(std::max(0.0, cov(2, 2)))},
                    {"amplitude", amp, amp_err},
                    {"phase", std::atan2(c(1), c(0)), phase_err}};
    f.residual_norm = std::sqrt(rss);
    return f;
}

}  // namespace floq::harness
