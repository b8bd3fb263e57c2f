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

#include "smallbias.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace icsim {

int stretch_degree(uint64_t l, double log2_inv_delta) {
    if (l == 0) throw std::invalid_argument("stretch length must be positive");
    if (!(log2_inv_delta > 0)) throw std::invalid_argument("bias must be in (0,1)");
    double need = std::log2((double)l) + log2_inv_delta;
    int m = (int)std::ceil(need - 1e-9);
    return supported_degree_at_least(std::max(m, 2));
}

PoweringGenerator::PoweringGenerator(int m, const BitString& seed) {
    if (seed.size() < (uint64_t)2 * m) throw std::invalid_argument("seed shorter than 2m bits");
    field_ = std::make_shared<Field>(m);
    a_ = field_->zero();
    b_ = field_->zero();
    for (int i = 0; i < m; i++) {
        if (seed.get(i)) a_[i >> 6] |= Word(1) << (i & 63);
        if (seed.get(m + i)) b_[i >> 6] |= Word(1) << (i & 63);
    }
}

PoweringGenerator::PoweringGenerator(std::shared_ptr<const Field> field, std::vector<Word> a, std::vector<Word> b)
    : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {}

std::vector<Word> PoweringGenerator::window_key(uint64_t offset) const {
    return field_->mul(field_->pow(a_, offset), b_);
}

BitString PoweringGenerator::bits(uint64_t offset, uint64_t len) const {
    BitString out(len);
    std::vector<Word> cur = window_key(offset);
    const int w = field_->words();
    for (uint64_t t = 0; t < len; t++) {
        Word acc = 0;
        for (int i = 0; i < w; i++) acc ^= cur[i];
        out.set(t, __builtin_parityll(acc));
        field_->mul(cur.data(), a_.data(), cur.data());
    }
    return out;
}

bool PoweringGenerator::bit(uint64_t t) const {
    std::vector<Word> k = window_key(t);
    Word acc = 0;
    for (Word x : k) acc ^= x;
    return __builtin_parityll(acc);
}

double BiasedString::achieved_bias_bound() const { return (double)bits.size() / std::ldexp(1.0, m); }

BiasedString stretch_log2(const BitString& seed, uint64_t l, double log2_inv_delta) {
    int m = stretch_degree(l, log2_inv_delta);
    if (seed.size() < (uint64_t)2 * m) throw std::invalid_argument("seed shorter than 2m bits");
    PoweringGenerator g(m, seed);
    BiasedString r;
    r.bits = g.bits(0, l);
    r.log2_inv_delta = log2_inv_delta;
    r.source_seed_len = 2 * m;
    r.m = m;
    return r;
}

BiasedString stretch(const BitString& seed, uint64_t l, double delta) {
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("bias must be in (0,1)");
    return stretch_log2(seed, l, -std::log2(delta));
}

std::vector<Word> field_mul(const std::vector<Word>& x, const std::vector<Word>& y, const Modulus& modulus) {
    Field f(modulus);
    std::vector<Word> a = f.from_bits(x.data()), b = f.from_bits(y.data());
    return f.mul(a, b);
}

double exhaustive_max_bias(int m, int l) {
    if (m < 2 || m > 12 || l < 1 || l > 20) throw std::invalid_argument("exhaustive bias limited to m<=12, l<=20");
    Field f(m);
    std::vector<int64_t> hist(size_t(1) << l, 0);
    const Word top = Word(1) << m;
    for (Word a = 0; a < top; a++) {
        for (Word b = 0; b < top; b++) {
            Word cur = b, out = 0;
            for (int t = 0; t < l; t++) {
                out |= Word(__builtin_parityll(cur)) << t;
                f.mul(&cur, &a, &cur);
            }
            hist[out]++;
        }
    }
    // Walsh-Hadamard transform: hist[S] becomes sum_w count[w] * (-1)^|w & S|.
    for (size_t h = 1; h < hist.size(); h <<= 1) {
        for (size_t i = 0; i < hist.size(); i += h << 1) {
            for (size_t j = i; j < i + h; j++) {
                int64_t x = hist[j], y = hist[j + h];
                hist[j] = x + y;
                hist[j + h] = x - y;
            }
        }
    }
    double total = (double)top * (double)top, worst = 0;
    for (size_t s = 1; s < hist.size(); s++) worst = std::max(worst, std::abs((double)hist[s]) / total);
    return worst;
}

}  // namespace icsim
