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

#include "floq/core/record.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace floq {

void MeasRecord::push(int8_t outcome, const std::string &tag) {
    if (!tag.empty()) {
        index_[tag] = outcomes_.size();
    }
    outcomes_.push_back(outcome);
    tags_.push_back(tag);
}

std::size_t MeasRecord::index_of(const std::string &tag) const {
    auto it = index_.find(tag);
    if (it == index_.end()) {
        throw std::out_of_range("no measurement tagged '" + tag + "'");
    }
    return it->second;
}

int8_t MeasRecord::at(const std::string &tag) const { return outcomes_[index_of(tag)]; }

Parity Parity::of(std::size_t index) {
    Parity p;
    p.idx_.push_back((uint32_t)index);
    return p;
}

Parity Parity::of(const std::vector<std::size_t> &indices) {
    Parity p;
    for (auto k : indices) {
        p *= Parity::of(k);
    }
    return p;
}

Parity &Parity::operator*=(const Parity &other) {
    std::vector<uint32_t> out;
    out.reserve(idx_.size() + other.idx_.size());
    std::set_symmetric_difference(idx_.begin(), idx_.end(), other.idx_.begin(), other.idx_.end(),
                                  std::back_inserter(out));
    idx_ = std::move(out);
    negate_ ^= other.negate_;
    return *this;
}

Parity Parity::operator*(const Parity &other) const {
    Parity r = *this;
    r *= other;
    return r;
}

Parity Parity::operator*(int sign) const {
    Parity r = *this;
    if (sign < 0) {
        r.negate_ = !r.negate_;
    }
    return r;
}

Parity Parity::operator-() const { return *this * -1; }

int Parity::eval(const std::vector<int8_t> &outcomes) const {
    int v = negate_ ? -1 : 1;
    for (auto k : idx_) {
        if (k >= outcomes.size()) {
            throw std::out_of_range("parity refers past the end of the record");
        }
        v *= outcomes[k];
    }
    return v;
}

Parity Parity::restricted_below(std::size_t limit) const {
    Parity r;
    r.negate_ = negate_;
    for (auto k : idx_) {
        if (k < limit) {
            r.idx_.push_back(k);
        }
    }
    return r;
}

Parity Parity::shifted(std::size_t offset) const {
    Parity r = *this;
    for (auto &k : r.idx_) {
        k += (uint32_t)offset;
    }
    return r;
}

std::string Parity::str() const {
    std::string s = negate_ ? "-" : "+";
    s += "[";
    for (std::size_t k = 0; k < idx_.size(); k++) {
        if (k) {
            s += " ";
        }
        s += std::to_string(idx_[k]);
    }
    return s + "]";
}

}  // namespace floq
