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

#include "randex.hpp"

#include <cmath>
#include <stdexcept>

namespace icsim {

BitString repetition_encode(const BitString& msg, int factor) {
    if (factor < 1) throw std::invalid_argument("repetition factor must be positive");
    BitString out(msg.size() * factor);
    for (uint64_t i = 0; i < msg.size(); i++) {
        if (!msg.get(i)) continue;
        for (int j = 0; j < factor; j++) out.set(i * factor + j, true);
    }
    return out;
}

BitString repetition_decode(const BitString& code, int factor) {
    if (factor < 1 || factor % 2 == 0) throw std::invalid_argument("repetition factor must be odd");
    if (code.size() % factor) throw std::invalid_argument("codeword length not a multiple of the factor");
    BitString out(code.size() / factor);
    for (uint64_t i = 0; i < out.size(); i++) {
        int ones = 0;
        for (int j = 0; j < factor; j++) ones += code.get(i * factor + j);
        out.set(i, 2 * ones > factor);
    }
    return out;
}

ExchangeMode parse_exchange_mode(const std::string& s) {
    if (s == "repetition") return ExchangeMode::Repetition;
    if (s == "ideal") return ExchangeMode::Ideal;
    if (s == "hidden") return ExchangeMode::Hidden;
    throw std::invalid_argument("unknown exchange mode: " + s);
}

const char* exchange_mode_name(ExchangeMode m) {
    switch (m) {
        case ExchangeMode::Repetition: return "repetition";
        case ExchangeMode::Ideal: return "ideal";
        case ExchangeMode::Hidden: return "hidden";
    }
    return "?";
}

double binary_entropy(double p) {
    if (p <= 0 || p >= 1) return 0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

ExchangePlan plan_exchange(ExchangeMode mode, uint64_t seed_bits, uint64_t n, double eps) {
    ExchangePlan p;
    p.mode = mode;
    p.seed_bits = seed_bits;
    uint64_t ne = (uint64_t)std::floor((double)n * eps + 1e-9);
    p.tolerance = 2 * ne;
    switch (mode) {
        case ExchangeMode::Repetition:
            p.factor = 4 * ne + 1;
            p.rounds = seed_bits * p.factor;
            break;
        case ExchangeMode::Ideal:
            p.rounds = (uint64_t)std::ceil(4.0 * ((double)seed_bits + (double)n * binary_entropy(eps)) - 1e-9);
            break;
        case ExchangeMode::Hidden:
            p.rounds = 0;
            break;
    }
    return p;
}

bool exchange_bit(const ExchangePlan& plan, const BitString& seed, uint64_t q) {
    if (q >= plan.rounds) throw std::out_of_range("exchange round out of range");
    return seed.get(q % plan.seed_bits);
}

ExchangeDecoder::ExchangeDecoder(const ExchangePlan& plan)
    : plan_(plan), ones_(plan.seed_bits, 0), copies_(plan.seed_bits, 0), sent_(plan.seed_bits) {}

void ExchangeDecoder::receive(uint64_t q, bool bit, bool sent) {
    uint64_t i = q % plan_.seed_bits;
    ones_[i] += bit;
    copies_[i]++;
    sent_.set(i, sent);
    corrupted_ += bit != sent;
}

BitString ExchangeDecoder::decode() const {
    if (plan_.mode == ExchangeMode::Ideal && corrupted_ <= plan_.tolerance) return sent_;
    BitString out(plan_.seed_bits);
    for (uint64_t i = 0; i < plan_.seed_bits; i++) out.set(i, 2 * ones_[i] > copies_[i]);
    return out;
}

SharedRandomness::SharedRandomness(int m, const BitString& seed, uint64_t length)
    : gen_(std::make_shared<PoweringGenerator>(m, seed)), length_(length), key_(gen_->b()) {}

SeedWindow SharedRandomness::next_seed(uint64_t s) {
    std::vector<Word> unused;
    return next_seed_keyed(s, unused);
}

SeedWindow SharedRandomness::next_seed_keyed(uint64_t s, std::vector<Word>& key) {
    if (!gen_) throw std::logic_error("shared randomness not initialized");
    if (cursor_ + s > length_) throw std::logic_error("shared randomness exhausted");
    SeedWindow w{cursor_, s};
    key = key_;
    if (s != step_ || step_pow_.empty()) {
        step_ = s;
        step_pow_ = gen_->field().pow(gen_->a(), s);
    }
    gen_->field().mul(key_.data(), step_pow_.data(), key_.data());
    cursor_ += s;
    return w;
}

}  // namespace icsim
