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

#ifndef ICSIM_RANDEX_HPP
#define ICSIM_RANDEX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bits.hpp"
#include "smallbias.hpp"

namespace icsim {

/// Each bit repeated `factor` times in place ("10", 3 -> "111000").
BitString repetition_encode(const BitString& msg, int factor);
/// Per-block majority. factor must be odd.
BitString repetition_decode(const BitString& code, int factor);

enum class ExchangeMode { Repetition, Ideal, Hidden };

ExchangeMode parse_exchange_mode(const std::string& s);
const char* exchange_mode_name(ExchangeMode m);

/// Binary entropy in bits.
double binary_entropy(double p);

struct ExchangePlan {
    ExchangeMode mode = ExchangeMode::Hidden;
    uint64_t seed_bits = 0;  // l'
    uint64_t factor = 1;     // repetition factor (Repetition mode)
    uint64_t rounds = 0;     // channel rounds, all sent by Alice
    uint64_t tolerance = 0;  // 2 floor(n eps): corruptions the code must absorb
};

/// Repetition: factor 4 floor(n eps) + 1, rounds l' * factor.
/// Ideal: ceil(4 (l' + n H(eps))) rounds. Hidden: no rounds.
ExchangePlan plan_exchange(ExchangeMode mode, uint64_t seed_bits, uint64_t n, double eps);

/// Bit Alice sends in exchange round q. Repetition mode interleaves the
/// copies: round q carries copy q / l' of bit q mod l'. Ideal mode sends the
/// seed cyclically.
bool exchange_bit(const ExchangePlan& plan, const BitString& seed, uint64_t q);

/// Bob's side of the exchange.
class ExchangeDecoder {
  public:
    explicit ExchangeDecoder(const ExchangePlan& plan);
    /// Records exchange round q. `sent` is only consulted in Ideal mode,
    /// which stands in for a code of the stated length and distance.
    void receive(uint64_t q, bool bit, bool sent);
    BitString decode() const;
    uint64_t corrupted() const { return corrupted_; }

  private:
    ExchangePlan plan_;
    std::vector<uint32_t> ones_, copies_;
    BitString sent_;
    uint64_t corrupted_ = 0;
};

struct SeedWindow {
    uint64_t offset = 0;
    uint64_t len = 0;
};

/// The stretched shared string R with a read cursor. R is never
/// materialized; windows are handed out by offset and keyed by b * a^offset.
class SharedRandomness {
  public:
    SharedRandomness() = default;
    /// seed = (a, b) of 2m bits; `length` is the total of all windows.
    SharedRandomness(int m, const BitString& seed, uint64_t length);

    /// Bits [cursor, cursor + s). Throws std::logic_error past length().
    SeedWindow next_seed(uint64_t s);
    /// next_seed plus the window key b * a^offset, maintained incrementally.
    SeedWindow next_seed_keyed(uint64_t s, std::vector<Word>& key);

    uint64_t cursor() const { return cursor_; }
    uint64_t length() const { return length_; }
    int degree() const { return gen_ ? gen_->field().degree() : 0; }
    const PoweringGenerator& generator() const { return *gen_; }
    BitString materialize(const SeedWindow& w) const { return gen_->bits(w.offset, w.len); }

  private:
    std::shared_ptr<PoweringGenerator> gen_;
    uint64_t length_ = 0, cursor_ = 0;
    std::vector<Word> key_;  // b * a^cursor
    uint64_t step_ = 0;
    std::vector<Word> step_pow_;  // a^step_
};

}  // namespace icsim

#endif
