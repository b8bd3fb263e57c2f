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

#include "gf2.hpp"

#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

using namespace icsim;

namespace {

std::vector<Word> random_element(const Field& f, std::mt19937_64& rng) {
    std::vector<Word> x = f.zero();
    for (auto& w : x) w = rng();
    int m = f.degree();
    if (m % 64) x.back() &= (Word(1) << (m % 64)) - 1;
    return x;
}

uint32_t full_word(const Modulus& f) {
    uint32_t v = (1u << f.m) | 1u;
    for (int i = 0; i < f.nmid; i++) v |= 1u << f.mid[i];
    return v;
}

}  // namespace

TEST_CASE("gf2: small table entries are irreducible by trial division") {
    for (int m = 2; m <= 20; m++) {
        const Modulus* f = table_modulus(m);
        REQUIRE(f != nullptr);
        CHECK(oracle::irreducible_small(full_word(*f)));
        CHECK(is_irreducible(*f));
    }
}

TEST_CASE("gf2: Rabin test rejects reducible moduli") {
    // x^4 + x^2 + 1 = (x^2 + x + 1)^2
    Modulus sq{4, 1, {2, 0, 0}};
    CHECK_FALSE(is_irreducible(sq));
    // x^8 + x^4 + x^3 + x + 1 is the AES polynomial.
    Modulus aes{8, 3, {4, 3, 1}};
    CHECK(is_irreducible(aes));
    // Agreement with trial division on every trinomial up to degree 16.
    for (int m = 2; m <= 16; m++) {
        for (int k = 1; k < m; k++) {
            Modulus f{m, 1, {k, 0, 0}};
            CHECK(is_irreducible(f) == oracle::irreducible_small(full_word(f)));
        }
    }
}

TEST_CASE("gf2: every table entry passes Rabin") {
    int checked = 0;
    for (int m = 2; m <= max_table_degree(); m++) {
        const Modulus* f = table_modulus(m);
        if (!f) continue;
        if (m > 1024 && m % 256 != 0) continue;
        REQUIRE(is_irreducible(*f));
        checked++;
    }
    CHECK(checked >= 1023);
    CHECK(supported_degree_at_least(1025) == 1040);
    CHECK_THROWS_AS(supported_degree_at_least(max_table_degree() + 1), std::out_of_range);
}

TEST_CASE("gf2: worked multiplication example") {
    Modulus f{4, 1, {1, 0, 0}};  // x^4 + x + 1
    Field F(f);
    std::vector<Word> x{0b0010}, y{0b1000};
    CHECK(F.mul(x, y)[0] == 0b0011);
}

TEST_CASE("gf2: field axioms hold exhaustively for m <= 6") {
    for (int m = 2; m <= 6; m++) {
        Field F(m);
        const Word n = Word(1) << m;
        for (Word a = 0; a < n; a++) {
            bool has_inverse = a == 0;
            for (Word b = 0; b < n; b++) {
                Word ab, ba;
                F.mul(&a, &b, &ab);
                F.mul(&b, &a, &ba);
                REQUIRE(ab == ba);
                REQUIRE(ab < n);
                if (ab == 1) has_inverse = true;
                for (Word c = 0; c < n; c++) {
                    Word ab_c, bc, a_bc, bpc = b ^ c, a_bpc, ac;
                    F.mul(&ab, &c, &ab_c);
                    F.mul(&b, &c, &bc);
                    F.mul(&a, &bc, &a_bc);
                    REQUIRE(ab_c == a_bc);
                    F.mul(&a, &bpc, &a_bpc);
                    F.mul(&a, &c, &ac);
                    REQUIRE(a_bpc == (ab ^ ac));
                }
            }
            Word one = 1, a1;
            F.mul(&a, &one, &a1);
            REQUIRE(a1 == a);
            REQUIRE(has_inverse);
        }
    }
}

TEST_CASE("gf2: multiplication matches schoolbook oracle") {
    std::mt19937_64 rng(7);
    for (int m : {5, 17, 63, 64, 65, 95, 127, 128, 129, 200, 521, 1024, 2048}) {
        Field F(supported_degree_at_least(m));
        oracle::Poly fp = oracle::modulus_poly(F.modulus());
        for (int t = 0; t < 6; t++) {
            auto x = random_element(F, rng), y = random_element(F, rng);
            auto z = F.mul(x, y);
            auto want = oracle::mulmod(oracle::from_words(x, F.degree()), oracle::from_words(y, F.degree()), fp);
            REQUIRE(z == oracle::to_words(want, F.words()));
            bool par = false;
            for (auto v : want) par ^= v;
            CHECK(F.product_parity(x.data(), y.data()) == par);
        }
    }
}

TEST_CASE("gf2: pow and x_pow agree") {
    std::mt19937_64 rng(11);
    Field F(95);
    std::vector<Word> x = F.zero();
    x[0] = 2;
    for (uint64_t e : {0ull, 1ull, 94ull, 95ull, 190ull, 1000003ull}) CHECK(F.pow(x, e) == F.x_pow(e));
    auto y = random_element(F, rng);
    CHECK(F.mul(F.pow(y, 12), F.pow(y, 30)) == F.pow(y, 42));
    // Frobenius: y^(2^m) = y.
    std::vector<Word> z = y;
    for (int i = 0; i < 95; i++) z = F.mul(z, z);
    CHECK(z == y);
}
