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

#ifndef FLOQ_FBS_MWPM_HPP
#define FLOQ_FBS_MWPM_HPP

#include <cstddef>
#include <vector>

namespace floq {

/// A detection event on a two-check repetition line: check 0 or 1 at a time slice.
struct LineEvent {
    int slice = 0;
    int check = 0;
};

struct LineMatching {
    int weight = 0;
    bool logical_flip = false;  // matching crosses the edge between the two checks an odd number of times
};

/// Minimum-weight matching on the space-time graph of a line
/// boundary - check 0 - check 1 - boundary, with unit time-like edges between
/// consecutive slices. The logical operator sits on the edge between the two
/// checks. Exact (subset dynamic programming) up to `exact_limit` events,
/// greedy nearest-pair above.
LineMatching decode_line(const std::vector<LineEvent> &events, std::size_t exact_limit = 16);

/// Path weight and crossing parity between two events, or to the boundary.
int line_distance(const LineEvent &a, const LineEvent &b);
bool line_crossing(const LineEvent &a, const LineEvent &b);
constexpr int kBoundaryDistance = 1;

}  // namespace floq

#endif
