// Copyright 2026 The icsim Authors
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

#ifndef ICSIM_SMALLBIAS_HPP
#define ICSIM_SMALLBIAS_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "bits.hpp"
#include "gf2.hpp"

namespace icsim {

/// Field degree for a powering-construction string of l bits with bias
/// 2^-log2_inv_delta: ceil(log2 l + log2_inv_delta), rounded up to the table.
int stretch_degree(uint64_t l, double log2_inv_delta);

/// Seed bits consumed by stretch() for (l, delta).
inline int stretch_seed_len(uint64_t l, double log2_inv_delta) { return 2 * stretch_degree(l, log2_inv_delta); }

/// Powering construction over GF(2^m): seed (a, b), bit t = parity(a^t * b).
/// Holds the field so that windows of an unmaterialized string can be keyed.
class PoweringGenerator {
  public:
    /// seed holds a in bits [0, m) and b in bits [m, 2m).
    PoweringGenerator(int m, const BitString& seed);
    PoweringGenerator(std::shared_ptr<const Field> field, std::vector<Word> a, std::vector<Word> b);

    const Field& field() const { return *field_; }
    std::shared_ptr<const Field> field_ptr() const { return field_; }
    const std::vector<Word>& a() const { return a_; }
    const std::vector<Word>& b() const { return b_; }

    /// Bits [offset, offset+len) of the string.
    BitString bits(uint64_t offset, uint64_t len) const;
    bool bit(uint64_t t) const;

    /// b * a^offset: the key of a window starting at offset.
    std::vector<Word> window_key(uint64_t offset) const;

  private:
    std::shared_ptr<const Field> field_;
    std::vector<Word> a_, b_;
};

/// A materialized delta-biased string.
struct BiasedString {
    BitString bits;
    double log2_inv_delta = 0;  // requested bias 2^-log2_inv_delta
    int source_seed_len = 0;    // 2m
    int m = 0;
    double achieved_bias_bound() const;  // l / 2^m
};

BiasedString stretch(const BitString& seed, uint64_t l, double delta);
BiasedString stretch_log2(const BitString& seed, uint64_t l, double log2_inv_delta);

/// x * y mod the modulus, elements given as the low m bits of word arrays.
std::vector<Word> field_mul(const std::vector<Word>& x, const std::vector<Word>& y, const Modulus& modulus);

/// Largest |Pr[parity = 0] - Pr[parity = 1]| over all nonempty subsets of
/// the first l bits, over all 2^(2m) seeds. Requires l <= 20 and m <= 12.
double exhaustive_max_bias(int m, int l);

}  // namespace icsim

#endif
