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

#include "hashing.hpp"

#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace icsim;

namespace {

BitString random_bits(uint64_t n, std::mt19937_64& rng) {
    BitString b(n);
    for (uint64_t i = 0; i < n; i++) b.set(i, rng() & 1);
    return b;
}

// Reference inner product over an explicit seed, written out independently.
BitString oracle_ip(uint64_t L, int o, const BitString& seed, const BitString& x) {
    BitString xt = x;
    int w = 0;
    while ((uint64_t(1) << w) <= L) w++;
    for (int i = w - 1; i >= 0; i--) xt.push_back((x.size() >> i) & 1);
    BitString out(o);
    for (int i = 0; i < o; i++) {
        int p = 0;
        for (uint64_t t = 0; t < xt.size(); t++) p += xt.get(t) && seed.get(i * 2 * L + t);
        out.set(i, p & 1);
    }
    return out;
}

}  // namespace

TEST_CASE("hashing: length field width") {
    CHECK(length_field_width(1) == 1);
    CHECK(length_field_width(6) == 3);
    CHECK(length_field_width(8) == 4);
    CHECK(length_field_width(1023) == 10);
    CHECK_THROWS_AS(length_field_width(0), std::invalid_argument);
}

TEST_CASE("hashing: ip_hash matches the oracle and rejects bad inputs") {
    std::mt19937_64 rng(1);
    InnerProductHashSpec spec{20, 5};
    for (int t = 0; t < 100; t++) {
        BitString seed = random_bits(spec.required_seed_len(), rng);
        BitString x = random_bits(rng() % 21, rng);
        CHECK(ip_hash(spec, seed, x) == oracle_ip(20, 5, seed, x));
    }
    CHECK(ip_hash(spec, BitString(200), BitString::parse("1011")).popcount() == 0);
    CHECK_THROWS_AS(ip_hash(spec, BitString(199), BitString(3)), std::invalid_argument);
    CHECK_THROWS_AS(ip_hash(spec, BitString(200), BitString(21)), std::invalid_argument);
}

TEST_CASE("hashing: uniform-seed collision is exactly 2^-o") {
    std::mt19937_64 rng(2);
    InnerProductHashSpec spec{6, 2};
    NNHashParams none;
    int pairs = 0;
    while (pairs < 20) {
        BitString x = random_bits(rng() % 7, rng), y = random_bits(rng() % 7, rng);
        if (x == y) continue;
        Rational r = collision_prob_oracle(HashKind::IpUniform, spec, 0, none, x, y);
        CHECK(r.den == (uint64_t(1) << 24));
        CHECK(r.value() == 0.25);
        Rational rb = collision_prob_oracle(HashKind::IpBiased, spec, 8, none, x, y);
        CHECK(rb.value() <= 0.25 + 1.0 / 16);
        pairs++;
    }
    BitString z = BitString::parse("0110");
    CHECK(collision_prob_oracle(HashKind::IpUniform, spec, 0, none, z, z).value() == 1.0);
}

TEST_CASE("hashing: length binding for prefixes") {
    InnerProductHashSpec spec{6, 2};
    NNHashParams none;
    BitString y = BitString::parse("010110");
    for (int k = 0; k < 6; k++) {
        Rational r = collision_prob_oracle(HashKind::IpUniform, spec, 0, none, y.slice(0, k), y);
        CHECK(r.value() == 0.25);
    }
    // Zero-padding is not a collision under every seed.
    Rational r = collision_prob_oracle(HashKind::IpUniform, spec, 0, none, BitString::parse("01"),
                                       BitString::parse("010"));
    CHECK(r.value() == 0.25);
}

TEST_CASE("hashing: powering evaluation equals the materialized seed") {
    std::mt19937_64 rng(4);
    for (int m : {13, 64, 95, 160}) {
        for (int t = 0; t < 10; t++) {
            InnerProductHashSpec spec{40 + rng() % 50, 1 + (int)(rng() % 7)};
            PoweringGenerator gen(m, random_bits(2 * m, rng));
            uint64_t offset = rng() % 5000;
            BitString x = random_bits(rng() % (spec.L + 1), rng);
            BitString seed = gen.bits(offset, spec.required_seed_len());
            CHECK(ip_hash_powering(spec, gen, offset, x) == oracle_ip(spec.L, spec.o, seed, x));
        }
    }
}

TEST_CASE("hashing: nn_hash parameters") {
    NNHashParams a = NNHashParams::make(0.25, 8);
    CHECK(a.o == 3);
    CHECK(a.m == 9);
    CHECK(a.s == 18);
    NNHashParams b = NNHashParams::make(0.1, 1000, 6);
    CHECK(b.o == 6);
    NNHashParams bad = a;
    bad.o = 2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = a;
    bad.s = 16;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(NNHashParams::make(0.0, 8), std::invalid_argument);
}

TEST_CASE("hashing: nn_hash collision bound, exhaustive at small size") {
    NNHashParams nn = NNHashParams::make(0.25, 8);
    std::mt19937_64 rng(6);
    InnerProductHashSpec unused{};
    double worst = 0;
    for (int t = 0; t < 12; t++) {
        BitString x = random_bits(rng() % 9, rng), y = random_bits(rng() % 9, rng);
        if (x == y) continue;
        Rational r = collision_prob_oracle(HashKind::NaorNaor, unused, 0, nn, x, y);
        CHECK(r.den == (uint64_t(1) << 18));
        worst = std::max(worst, r.value());
    }
    CHECK(worst <= 0.25);
}

TEST_CASE("hashing: NNHasher equals the reference nn_hash") {
    std::mt19937_64 rng(8);
    NNHashParams nn = NNHashParams::make(0.1, 300, 6);
    for (int t = 0; t < 30; t++) {
        BitString seed = random_bits(nn.s, rng);
        NNHasher h(nn, seed);
        BitString x = random_bits(rng() % 301, rng);
        BitString want = nn_hash(nn, seed, x);
        CHECK(h.hash(x) == want);
        uint64_t v = h.hash64(x);
        for (int i = 0; i < nn.o; i++) CHECK(((v >> i) & 1) == want.get(i));
    }
}

TEST_CASE("hashing: nn_hash Monte Carlo collision rate") {
    std::mt19937_64 rng(9);
    const double p = 0.25;
    NNHashParams nn = NNHashParams::make(p, 32);
    const int trials = 100000;
    int coll = 0;
    for (int t = 0; t < trials; t++) {
        BitString x = random_bits(32, rng), y = random_bits(32, rng);
        if (x == y) y.flip(0);
        NNHasher h(nn, random_bits(nn.s, rng));
        coll += h.hash64(x) == h.hash64(y);
    }
    double rate = (double)coll / trials;
    double sigma = std::sqrt(p * (1 - p) / trials);
    CHECK(rate <= p + 3 * sigma);
}

TEST_CASE("hashing: disjoint seed windows are jointly near-independent") {
    // Three windows of a powering string at m = 9, one input pair
    // each; compare the joint match pattern with the product distribution.
    const int m = 9, o = 1;
    const uint64_t L = 4;
    auto fp = std::make_shared<const Field>(m);
    const BitString xs[3] = {BitString::parse("1"), BitString::parse("0110"), BitString::parse("")};
    const BitString ys[3] = {BitString::parse("0"), BitString::parse("0111"), BitString::parse("11")};
    InnerProductHashSpec spec{L, o};
    std::vector<double> hist(8, 0);
    for (Word a = 0; a < (Word(1) << m); a++) {
        for (Word b = 0; b < (Word(1) << m); b++) {
            PoweringGenerator g(fp, {a}, {b});
            int v = 0;
            for (int j = 0; j < 3; j++) {
                uint64_t off = (uint64_t)j * spec.required_seed_len();
                v |= (ip_hash_powering(spec, g, off, xs[j]) == ip_hash_powering(spec, g, off, ys[j])) << j;
            }
            hist[v] += 1;
        }
    }
    double total = std::ldexp(1.0, 2 * m), dist = 0;
    for (int v = 0; v < 8; v++) dist += std::abs(hist[v] / total - 1.0 / 8);
    dist /= 2;
    CHECK(dist <= 24.0 / (1 << m));
}

TEST_CASE("hashing: symbol evaluator matches bit serialization") {
    std::mt19937_64 rng(10);
    for (int bits : {1, 7, 8, 13, 64, 91, 128}) {
        const int m = 160;
        const uint64_t L = 4096;
        PoweringGenerator g(m, random_bits(2 * m, rng));
        SymbolEvaluator ev(g.field(), g.a(), bits, L);
        size_t n = L / bits < 30 ? L / bits : 30;
        std::vector<Symbol> syms(n);
        BitString ser;
        for (auto& s : syms) {
            s = ((Symbol)rng() << 64 | rng()) & symbol_mask(bits);
            for (int i = bits - 1; i >= 0; i--) ser.push_back((s >> i) & 1);
        }
        CHECK(ev.xtilde(syms.data(), n) == xtilde_of_bits(g.field(), g.a(), ser, L));
        // Split evaluation: first part plus shifted tail plus length.
        size_t k = n / 3;
        std::vector<Word> x(g.field().words(), 0);
        ev.poly(syms.data(), k, x.data());
        ev.add_shifted(syms.data() + k, n - k, k, x.data());
        ev.add_length(n, x.data());
        CHECK(x == ev.xtilde(syms.data(), n));
    }
}

TEST_CASE("hashing: empty input hashes like its length field") {
    InnerProductHashSpec spec{8, 3};
    std::mt19937_64 rng(12);
    BitString seed = random_bits(spec.required_seed_len(), rng);
    CHECK(ip_hash(spec, seed, BitString()) == oracle_ip(8, 3, seed, BitString()));
    CHECK(ip_hash(spec, BitString(48), BitString()).popcount() == 0);
}

TEST_CASE("hashing: residue evaluation agrees with the byte-table path") {
    std::mt19937_64 rng(21);
    for (int m : {64, 65, 95, 127, 128}) {
        for (int bits : {1, 7, 64, 91, 128}) {
            PoweringGenerator g(m, random_bits(2 * m, rng));
            SymbolEvaluator ev(g.field(), g.a(), bits, 1 << 20);
            CHECK(ev.uses_residue());
            for (size_t n : {16, 17, 100, 513}) {
                std::vector<Symbol> syms(n);
                for (auto& s : syms) s = ((Symbol)rng() << 64 | rng()) & symbol_mask(bits);
                std::vector<Word> fast(g.field().words()), slow(g.field().words());
                ev.poly(syms.data(), n, fast.data());
                ev.poly_direct(syms.data(), n, slow.data());
                INFO("m=" << m << " bits=" << bits << " n=" << n);
                CHECK(fast == slow);
            }
        }
    }
    // a in the prime subfield: no residue path, same answers.
    BitString seed(2 * 95);
    seed.set(0, true);
    seed.set(95, true);
    PoweringGenerator one(95, seed);
    SymbolEvaluator ev(one.field(), one.a(), 8, 4096);
    CHECK_FALSE(ev.uses_residue());
    std::vector<Symbol> syms(40, 0xa5);
    std::vector<Word> x(2);
    ev.poly(syms.data(), syms.size(), x.data());
    CHECK(x == std::vector<Word>{0, 0});
}
