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

#ifndef FLOQ_FBS_SIGN_FRAME_HPP
#define FLOQ_FBS_SIGN_FRAME_HPP

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floq/core/record.hpp"
#include "floq/fbs/code.hpp"

namespace floq {

/// Signs relating the dynamical logicals after round r to their round-type
/// representatives: P_d^(r) = Gamma_P^(r) P_d^Q. Round 0 is the encoded state,
/// whose operators are the round-A representatives.
///
/// V is int (+1/-1) for concrete records or Parity for symbolic compilation.
template <class V>
struct SignFrameT {
    int round = 0;
    V gamma_x = V(1);
    V gamma_z = V(1);
    std::array<V, 4> stabilizers{V(1), V(1), V(1), V(1)};
    std::vector<std::optional<V>> previous;  // check outcomes of the last round

    V gamma_y() const { return gamma_x * gamma_z; }
    V gamma(char p) const {
        if (p == 'X') {
            return gamma_x;
        }
        if (p == 'Z') {
            return gamma_z;
        }
        return gamma_y();
    }
};

using SignFrame = SignFrameT<int>;

/// Advances the frame by one round. `outcomes` is indexed by check and must
/// hold every check the update rule reads from this round.
template <class V>
void update_sign_frame(const FbsCode &code, SignFrameT<V> &frame, const std::vector<std::optional<V>> &outcomes) {
    if (outcomes.size() != code.checks.size()) {
        throw std::invalid_argument("round outcomes must be indexed by check");
    }
    int i = frame.round + 1;
    Round q = round_of(i);
    // The encoded operators are the round-A representatives, so the first A round is a no-op.
    bool apply = !(q == Round::A && i == 1);
    auto product = [&](const GammaRule &rule) {
        V v(1);
        for (const auto &t : rule.terms) {
            int idx = code.check_index(t.check);
            const auto &src = t.offset == 0 ? outcomes : frame.previous;
            if (idx >= (int)src.size() || !src[idx]) {
                throw std::invalid_argument("sign update needs outcome of " + t.check +
                                            (t.offset == 0 ? " in this round" : " in the previous round"));
            }
            v = v * *src[idx];
        }
        for (int k : rule.stabilizers) {
            v = v * frame.stabilizers[k];
        }
        return v;
    };
    if (apply) {
        frame.gamma_x = frame.gamma_x * product(code.gamma_x[(int)q]);
        frame.gamma_z = frame.gamma_z * product(code.gamma_z[(int)q]);
    }
    frame.previous = outcomes;
    frame.round = i;
}

/// Convenience overload keyed by check name.
void update_sign_frame(const FbsCode &code, SignFrame &frame, const std::map<std::string, int> &outcomes);

}  // namespace floq

#endif
