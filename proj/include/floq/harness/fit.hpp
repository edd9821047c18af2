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


#ifndef FLOQ_HARNESS_FIT_HPP
#define FLOQ_HARNESS_FIT_HPP

#include <string>
#include <vector>

namespace floq::harness {

struct FitParameter {
    std::string name;
    double value = 0;
    double error = 0;  // one sigma
};

struct FitResult {
    std::string model;  // "exp-decay", "leakage-saturation" or "trig"
    std::vector<FitParameter> parameters;
    double residual_norm = 0;
    std::size_t points = 0;
    bool degenerate = false;

    double value(const std::string &name) const;
    double error(const std::string &name) const;
};

/// y = A (1 - 2 eps)^r. Needs at least 3 points. `sigma` (optional) weights
/// the points; without it the errors are scaled by the residual variance.
/// When the data admit no decay fit (too few positive values, no convergence)
/// the result has eps = 0 and `degenerate` set.
FitResult fit_exp_decay(const std::vector<double> &r, const std::vector<double> &y,
                        const std::vector<double> &sigma = {});

/// p = a/b - (a/b - p0) exp(-b r), parameters eps_leak = a, eps_d = b, p0.
/// Needs at least 4 points.
FitResult fit_leakage(const std::vector<double> &r, const std::vector<double> &p);

/// y = a cos(x) + b sin(x) + c, amplitude = sqrt(a^2 + b^2), phase = atan2(b, a).
/// Needs at least 3 points.
FitResult fit_trig(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace floq::harness

#endif
