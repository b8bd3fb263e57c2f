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
#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace icsim;

namespace {

BitString random_bits(uint64_t n, std::mt19937_64& rng) {
    BitString b(n);
    for (uint64_t i = 0; i < n; i++) b.set(i, rng() & 1);
    return b;
}

// Independent generator: field arithmetic from the oracle, seed layout a|b.
uint32_t oracle_bits(uint32_t a, uint32_t b, int m, uint32_t full_modulus, int l) {
    uint32_t out = 0, cur = b;
    for (int t = 0; t < l; t++) {
        out |= uint32_t(__builtin_parity(cur)) << t;
        cur = oracle::small_mul(cur, a, full_modulus, m);
    }
    return out;
}

uint32_t full_word(int m) {
    const Modulus* f = table_modulus(m);
    uint32_t v = (1u << m) | 1u;
    for (int i = 0; i < f->nmid; i++) v |= 1u << f->mid[i];
    return v;
}

}  // namespace

TEST_CASE("smallbias: generator matches the oracle construction") {
    const int m = 9, l = 30;
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; t++) {
        BitString seed = random_bits(2 * m, rng);
        PoweringGenerator g(m, seed);
        uint32_t a = (uint32_t)seed.read_uint(0, m), b = (uint32_t)seed.read_uint(m, m);
        // read_uint is MSB-first; the generator reads bit i as coefficient i.
        uint32_t ar = 0, br = 0;
        for (int i = 0; i < m; i++) {
            ar |= uint32_t((a >> (m - 1 - i)) & 1) << i;
            br |= uint32_t((b >> (m - 1 - i)) & 1) << i;
        }
        uint32_t want = oracle_bits(ar, br, m, full_word(m), l);
        BitString got = g.bits(0, l);
        for (int i = 0; i < l; i++) REQUIRE(got.get(i) == ((want >> i) & 1));
        CHECK(g.bits(7, 5) == got.slice(7, 5));
        CHECK(g.bit(13) == got.get(13));
    }
}

TEST_CASE("smallbias: brute-force subset bias agrees with the transform") {
    const int m = 6, l = 8;
    const uint32_t fm = full_word(m);
    std::vector<uint32_t> outs;
    for (uint32_t a = 0; a < (1u << m); a++)
        for (uint32_t b = 0; b < (1u << m); b++) outs.push_back(oracle_bits(a, b, m, fm, l));
    double worst = 0;
    for (uint32_t S = 1; S < (1u << l); S++) {
        int64_t s = 0;
        for (uint32_t w : outs) s += __builtin_parity(w & S) ? -1 : 1;
        worst = std::max(worst, std::abs((double)s) / outs.size());
    }
    CHECK(exhaustive_max_bias(m, l) == doctest::Approx(worst).epsilon(1e-12));
    CHECK(worst <= (double)l / (1 << m));
}

TEST_CASE("smallbias: bias at most l/2^m, exhaustively for m <= 10") {
    for (int m = 3; m <= 10; m++) {
        int l = std::min(2 * m, 20);
        double bias = exhaustive_max_bias(m, l);
        CHECK(bias <= (double)l / std::ldexp(1.0, m) + 1e-12);
    }
    CHECK(exhaustive_max_bias(8, 16) <= 1.0 / 16);
}

TEST_CASE("smallbias: k independent parities are close to uniform") {
    // Tiny instance: m = 8, l = 12, three fixed linearly independent tests.
    const int m = 8, l = 12;
    const uint32_t fm = full_word(m);
    const uint32_t tests[3] = {0b000000000011, 0b000011110000, 0b101000000001};
    std::map<int, int64_t> hist;
    for (uint32_t a = 0; a < (1u << m); a++)
        for (uint32_t b = 0; b < (1u << m); b++) {
            uint32_t w = oracle_bits(a, b, m, fm, l);
            int v = 0;
            for (int i = 0; i < 3; i++) v |= __builtin_parity(w & tests[i]) << i;
            hist[v]++;
        }
    double total = std::ldexp(1.0, 2 * m), dist = 0;
    for (int v = 0; v < 8; v++) dist += std::abs(hist[v] / total - 1.0 / 8);
    dist /= 2;
    CHECK(dist <= (double)l / std::ldexp(1.0, m));
}

TEST_CASE("smallbias: stretch is deterministic and sized") {
    std::mt19937_64 rng(5);
    BitString seed = random_bits(200, rng);
    BiasedString s1 = stretch(seed, 1000, 1.0 / 64), s2 = stretch(seed, 1000, 1.0 / 64);
    CHECK(s1.bits == s2.bits);
    CHECK(s1.bits.size() == 1000);
    CHECK(s1.m == stretch_degree(1000, 6));
    CHECK(s1.m == 16);
    CHECK(s1.source_seed_len == 32);
    CHECK(s1.achieved_bias_bound() <= 1.0 / 64);
    CHECK_THROWS_AS(stretch(seed.slice(0, 31), 1000, 1.0 / 64), std::invalid_argument);
    CHECK_THROWS_AS(stretch(seed, 1000, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(stretch(seed, 0, 0.5), std::invalid_argument);
}

TEST_CASE("smallbias: zero seed gives the zero string") {
    BiasedString s = stretch(BitString(40), 64, 0.25);
    CHECK(s.bits.popcount() == 0);
}

TEST_CASE("smallbias: field_mul worked example") {
    Modulus f{4, 1, {1, 0, 0}};
    CHECK(field_mul({0b0010}, {0b1000}, f)[0] == 0b0011);
}
