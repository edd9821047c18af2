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

#ifndef FLOQ_CORE_RECORD_HPP
#define FLOQ_CORE_RECORD_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace floq {

/// Ordered measurement outcomes (+1/-1) with optional tags.
class MeasRecord {
   public:
    void push(int8_t outcome, const std::string &tag);
    std::size_t size() const { return outcomes_.size(); }
    int8_t operator[](std::size_t k) const { return outcomes_[k]; }
    int8_t &operator[](std::size_t k) { return outcomes_[k]; }
    /// Outcome of the measurement carrying this tag; throws if absent.
    int8_t at(const std::string &tag) const;
    bool has(const std::string &tag) const { return index_.count(tag) != 0; }
    std::size_t index_of(const std::string &tag) const;
    const std::vector<int8_t> &outcomes() const { return outcomes_; }
    const std::vector<std::string> &tags() const { return tags_; }

   private:
    std::vector<int8_t> outcomes_;
    std::vector<std::string> tags_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// A signed product of measurement outcomes, addressed by record index.
///
/// Multiplication takes the symmetric difference of the index sets, so a
/// Parity behaves like a +1/-1 value that has not been evaluated yet.
class Parity {
   public:
    Parity() = default;
    explicit Parity(int sign) : negate_(sign < 0) {}
    static Parity of(std::size_t index);
    static Parity of(const std::vector<std::size_t> &indices);

    const std::vector<uint32_t> &indices() const { return idx_; }
    bool negated() const { return negate_; }
    int constant_sign() const { return negate_ ? -1 : 1; }
    bool is_constant() const { return idx_.empty(); }

    Parity operator*(const Parity &other) const;
    Parity &operator*=(const Parity &other);
    Parity operator*(int sign) const;
    Parity operator-() const;
    bool operator==(const Parity &other) const { return negate_ == other.negate_ && idx_ == other.idx_; }

    int eval(const std::vector<int8_t> &outcomes) const;
    int eval(const MeasRecord &rec) const { return eval(rec.outcomes()); }
    /// Bit form (1 means -1) evaluated on a row-per-measurement bit table word.
    template <class Row>
    uint64_t eval_bits(const Row &rows) const {
        uint64_t acc = negate_ ? ~uint64_t{0} : 0;
        for (auto k : idx_) {
            acc ^= rows[k];
        }
        return acc;
    }
    /// Product of only the terms with index < limit.
    Parity restricted_below(std::size_t limit) const;
    /// Shifts every index by an offset.
    Parity shifted(std::size_t offset) const;
    std::string str() const;

   private:
    std::vector<uint32_t> idx_;
    bool negate_ = false;
};

inline Parity operator*(int sign, const Parity &p) { return p * sign; }

}  // namespace floq

#endif
