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

#include "floq/fbs/mwpm.hpp"

#include <cstdint>
#include <cstdlib>
#include <limits>

namespace floq {

int line_distance(const LineEvent &a, const LineEvent &b) {
    return std::abs(a.slice - b.slice) + std::abs(a.check - b.check);
}

bool line_crossing(const LineEvent &a, const LineEvent &b) { return a.check != b.check; }

namespace {

LineMatching exact(const std::vector<LineEvent> &ev) {
    const std::size_t n = ev.size();
    const uint32_t full = (1u << n) - 1;
    struct Cell {
        int w = std::numeric_limits<int>::max();
        bool flip = false;
    };
    std::vector<Cell> dp(std::size_t(1) << n);
    dp[0] = {0, false};
    // dp[mask]: best matching of the events in mask; extend by the lowest unmatched event.
    for (uint32_t mask = 0; mask < full; mask++) {
        if (dp[mask].w == std::numeric_limits<int>::max()) {
            continue;
        }
        int i = __builtin_ctz(~mask);
        auto relax = [&](uint32_t next, int w, bool flip) {
            if (w < dp[next].w) {
                dp[next] = {w, flip};
            }
        };
        uint32_t with_i = mask | (1u << i);
        relax(with_i, dp[mask].w + kBoundaryDistance, dp[mask].flip);
        for (std::size_t j = i + 1; j < n; j++) {
            if (!(mask >> j & 1)) {
                relax(with_i | (1u << j), dp[mask].w + line_distance(ev[i], ev[j]),
                      dp[mask].flip ^ line_crossing(ev[i], ev[j]));
            }
        }
    }
    return {dp[full].w, dp[full].flip};
}

LineMatching greedy(std::vector<LineEvent> ev) {
    LineMatching out;
    std::vector<bool> used(ev.size(), false);
    std::size_t left = ev.size();
    while (left > 0) {
        int best = std::numeric_limits<int>::max();
        std::size_t bi = 0, bj = 0;
        // Pairs win ties against the boundary.
        for (std::size_t i = 0; i < ev.size(); i++) {
            for (std::size_t j = i + 1; j < ev.size() && !used[i]; j++) {
                if (!used[j] && line_distance(ev[i], ev[j]) < best) {
                    best = line_distance(ev[i], ev[j]);
                    bi = i;
                    bj = j;
                }
            }
        }
        for (std::size_t i = 0; i < ev.size(); i++) {
            if (!used[i] && kBoundaryDistance < best) {
                best = kBoundaryDistance;
                bi = bj = i;
            }
        }
        out.weight += best;
        used[bi] = true;
        left--;
        if (bj != bi) {
            used[bj] = true;
            left--;
            out.logical_flip ^= line_crossing(ev[bi], ev[bj]);
        }
    }
    return out;
}

}  // namespace

LineMatching decode_line(const std::vector<LineEvent> &events, std::size_t exact_limit) {
    if (events.empty()) {
        return {};
    }
    if (events.size() <= exact_limit && events.size() < 31) {
        return exact(events);
    }
    return greedy(events);
}

}  // namespace floq
