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

// Generates src/irreducibles.inc: one low-weight irreducible per tabulated
// degree, every middle exponent at most m/2 so two reduction folds suffice.

#include <cstdint>
#include <cstdio>
#include <vector>

#include "gf2.hpp"

using icsim::Modulus;

namespace {

int deg32(uint32_t p) { return p ? 31 - __builtin_clz(p) : -1; }

uint32_t mulmod(uint32_t a, uint32_t b, uint32_t g) {
    int dg = deg32(g);
    uint32_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if ((a >> dg) & 1) a ^= g;
    }
    return r;
}

uint32_t xpowmod(int e, uint32_t g) {
    uint32_t r = 1, b = 2;
    if (deg32(g) == 1) b = 2 ^ g;
    while (e) {
        if (e & 1) r = mulmod(r, b, g);
        b = mulmod(b, b, g);
        e >>= 1;
    }
    return r;
}

std::vector<uint32_t> small_irreducibles(int maxdeg) {
    std::vector<uint32_t> out;
    for (uint32_t p = 2; p < (1u << (maxdeg + 1)); p++) {
        int d = deg32(p);
        bool irr = true;
        for (uint32_t q : out) {
            if (2 * deg32(q) > d) break;
            // p mod q
            uint32_t r = p;
            while (deg32(r) >= deg32(q)) r ^= q << (deg32(r) - deg32(q));
            if (r == 0) {
                irr = false;
                break;
            }
        }
        if (irr) out.push_back(p);
    }
    return out;
}

bool has_small_factor(const Modulus& f, const std::vector<uint32_t>& small) {
    for (uint32_t g : small) {
        if (deg32(g) >= f.m) break;
        uint32_t r = xpowmod(f.m, g) ^ 1;
        for (int i = 0; i < f.nmid; i++) r ^= xpowmod(f.mid[i], g);
        if (r == 0) return true;
    }
    return false;
}

bool test(const Modulus& f, const std::vector<uint32_t>& small) {
    if (has_small_factor(f, small)) return false;
    return icsim::is_irreducible(f);
}

Modulus search(int m, const std::vector<uint32_t>& small) {
    int half = m / 2;
    if (m == 2) return Modulus{2, 1, {1, 0, 0}};
    if (m == 3) return Modulus{3, 1, {1, 0, 0}};
    for (int k = 1; k <= half; k++) {
        Modulus f{m, 1, {k, 0, 0}};
        if (test(f, small)) return f;
    }
    for (int a = 3; a <= half; a++) {
        for (int b = 2; b < a; b++) {
            for (int c = 1; c < b; c++) {
                Modulus f{m, 3, {a, b, c}};
                if (test(f, small)) return f;
            }
        }
    }
    return Modulus{};
}

}  // namespace

int main(int argc, char** argv) {
    const char* path = argc > 1 ? argv[1] : "irreducibles.inc";
    auto small = small_irreducibles(12);
    std::vector<int> degrees;
    for (int m = 2; m <= 1024; m++) degrees.push_back(m);
    for (int m = 1040; m <= 4096; m += 16) degrees.push_back(m);
    FILE* out = std::fopen(path, "w");
    if (!out) return 1;
    std::fprintf(out, "// Generated by tools/gen_irreducibles.cpp. Do not edit.\n");
    std::fprintf(out, "// {m, number of middle terms, {middle exponents}}\n");
    for (int m : degrees) {
        Modulus f = search(m, small);
        if (f.m == 0) {
            std::fprintf(stderr, "no low-weight irreducible for m=%d\n", m);
            return 2;
        }
        std::fprintf(out, "{%d, %d, {%d, %d, %d}},\n", f.m, f.nmid, f.mid[0], f.mid[1], f.mid[2]);
        if (m % 256 == 0) std::fprintf(stderr, "m=%d\n", m);
    }
    std::fclose(out);
    return 0;
}
