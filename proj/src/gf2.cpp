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

#include <algorithm>
#include <cstring>
#include <stdexcept>

#if defined(__PCLMUL__)
#include <immintrin.h>
#endif

namespace icsim {

namespace {

constexpr int kMaxWords = 64;

// dst ^= src << s, truncated to ndst words.
void xor_shl(Word* dst, int ndst, const Word* src, int nsrc, int s) {
    int ws = s >> 6, bs = s & 63;
    for (int i = 0; i < nsrc; i++) {
        int j = i + ws;
        if (j >= ndst) break;
        dst[j] ^= src[i] << bs;
        if (bs && j + 1 < ndst) dst[j + 1] ^= src[i] >> (64 - bs);
    }
}

// dst = src >> s (ndst words).
void shr(Word* dst, int ndst, const Word* src, int nsrc, int s) {
    int ws = s >> 6, bs = s & 63;
    for (int i = 0; i < ndst; i++) {
        int j = i + ws;
        Word lo = j < nsrc ? src[j] : 0;
        Word hi = (bs && j + 1 < nsrc) ? src[j + 1] : 0;
        dst[i] = bs ? (lo >> bs) | (hi << (64 - bs)) : lo;
    }
}

int poly_degree(const std::vector<Word>& p) {
    for (int i = (int)p.size() - 1; i >= 0; i--) {
        if (p[i]) return i * 64 + 63 - __builtin_clzll(p[i]);
    }
    return -1;
}

std::vector<Word> poly_gcd(std::vector<Word> a, std::vector<Word> b) {
    int n = (int)std::max(a.size(), b.size());
    a.resize(n, 0);
    b.resize(n, 0);
    int da = poly_degree(a), db = poly_degree(b);
    while (db >= 0) {
        while (da >= db) {
            xor_shl(a.data(), n, b.data(), n, da - db);
            da = poly_degree(a);
        }
        std::swap(a, b);
        std::swap(da, db);
    }
    return a;
}

template <int NZ>
inline void shr_fixed(Word* dst, const Word* src, int s) {
    const int ws = s >> 6, bs = s & 63;
    for (int i = 0; i < NZ; i++) {
        int j = i + ws;
        Word lo = j < NZ ? src[j] : 0;
        Word hi = (bs && j + 1 < NZ) ? src[j + 1] : 0;
        dst[i] = bs ? (lo >> bs) | (hi << (64 - bs)) : lo;
    }
}

template <int NZ>
inline void xor_shl_fixed(Word* dst, const Word* src, int s) {
    const int ws = s >> 6, bs = s & 63;
    for (int i = 0; i + ws < NZ; i++) {
        dst[i + ws] ^= src[i] << bs;
        if (bs && i + ws + 1 < NZ) dst[i + ws + 1] ^= src[i] >> (64 - bs);
    }
}

void sqr_wide(const Word* x, int w, Word* out2) {
    for (int i = 0; i < w; i++) clmul64(x[i], x[i], out2[2 * i], out2[2 * i + 1]);
}

}  // namespace


Field::Field(const Modulus& f) : f_(f) { init(); }

void Field::init() {
    m_ = f_.m;
    if (m_ < 2 || m_ > kMaxWords * 64) throw std::invalid_argument("field degree out of range");
    for (int i = 0; i < f_.nmid; i++) {
        if (f_.mid[i] <= 0 || f_.mid[i] >= m_) throw std::invalid_argument("bad modulus term");
    }
    w_ = (m_ + 63) / 64;
    top_mask_ = (m_ % 64) ? ((Word(1) << (m_ % 64)) - 1) : ~Word(0);
    lambda_.assign(2 * w_, 0);
    std::vector<Word> cur(w_ + 1, 0);
    cur[0] = 1;
    for (int j = 0; j < 2 * m_ - 1; j++) {
        bool p = false;
        for (int i = 0; i < w_; i++) p ^= __builtin_parityll(cur[i]);
        if (p) lambda_[j >> 6] |= Word(1) << (j & 63);
        // cur *= x
        for (int i = w_; i > 0; i--) cur[i] = (cur[i] << 1) | (cur[i - 1] >> 63);
        cur[0] <<= 1;
        if ((cur[m_ >> 6] >> (m_ & 63)) & 1) {
            cur[m_ >> 6] ^= Word(1) << (m_ & 63);
            cur[0] ^= 1;
            for (int i = 0; i < f_.nmid; i++) cur[f_.mid[i] >> 6] ^= Word(1) << (f_.mid[i] & 63);
        }
    }
}

std::vector<Word> Field::one() const {
    std::vector<Word> r(w_, 0);
    r[0] = 1;
    return r;
}

void Field::mul_wide(const Word* x, const Word* y, Word* out2) const {
    std::memset(out2, 0, sizeof(Word) * 2 * w_);
#if defined(__PCLMUL__)
    for (int i = 0; i < w_; i++) {
        __m128i xi = _mm_cvtsi64_si128((long long)x[i]);
        for (int j = 0; j < w_; j++) {
            __m128i r = _mm_clmulepi64_si128(xi, _mm_cvtsi64_si128((long long)y[j]), 0);
            out2[i + j] ^= (Word)_mm_cvtsi128_si64(r);
            out2[i + j + 1] ^= (Word)_mm_extract_epi64(r, 1);
        }
    }
#else
    for (int i = 0; i < w_; i++) {
        for (int j = 0; j < w_; j++) {
            Word lo, hi;
            clmul64(x[i], y[j], lo, hi);
            out2[i + j] ^= lo;
            out2[i + j + 1] ^= hi;
        }
    }
#endif
}

void Field::reduce(Word* z) const {
    const int nz = 2 * w_;
    Word h[2 * kMaxWords + 1];
    const int nh = nz - (m_ >> 6);
    for (;;) {
        shr(h, nh, z, nz, m_);
        bool any = false;
        for (int i = 0; i < nh; i++) any |= h[i] != 0;
        if (!any) return;
        z[w_ - 1] &= top_mask_;
        for (int i = w_; i < nz; i++) z[i] = 0;
        for (int i = 0; i < nh && i < nz; i++) z[i] ^= h[i];
        for (int t = 0; t < f_.nmid; t++) xor_shl(z, nz, h, nh, f_.mid[t]);
    }
}

template <int W>
void Field::mul_small(const Word* x, const Word* y, Word* out) const {
    Word z[2 * W] = {};
    for (int i = 0; i < W; i++) {
        for (int j = 0; j < W; j++) {
            Word lo, hi;
            clmul64(x[i], y[j], lo, hi);
            z[i + j] ^= lo;
            z[i + j + 1] ^= hi;
        }
    }
    for (;;) {
        Word h[2 * W];
        shr_fixed<2 * W>(h, z, m_);
        Word any = 0;
        for (int i = 0; i < 2 * W; i++) any |= h[i];
        if (!any) break;
        z[W - 1] &= top_mask_;
        for (int i = W; i < 2 * W; i++) z[i] = 0;
        for (int i = 0; i < 2 * W; i++) z[i] ^= h[i];
        for (int t = 0; t < f_.nmid; t++) xor_shl_fixed<2 * W>(z, h, f_.mid[t]);
    }
    for (int i = 0; i < W; i++) out[i] = z[i];
}

void Field::mul(const Word* x, const Word* y, Word* out) const {
    if (w_ == 1) return mul_small<1>(x, y, out);
    if (w_ == 2) return mul_small<2>(x, y, out);
    Word z[2 * kMaxWords];
    mul_wide(x, y, z);
    reduce(z);
    std::memcpy(out, z, sizeof(Word) * w_);
}

std::vector<Word> Field::mul(const std::vector<Word>& x, const std::vector<Word>& y) const {
    std::vector<Word> r(w_);
    mul(x.data(), y.data(), r.data());
    return r;
}

bool Field::product_parity(const Word* x, const Word* y) const {
    Word z[2 * kMaxWords];
    mul_wide(x, y, z);
    return and_parity(z, lambda_.data(), 2 * w_);
}

std::vector<Word> Field::pow(const std::vector<Word>& x, uint64_t e) const {
    std::vector<Word> r = one(), b = x;
    while (e) {
        if (e & 1) mul(r.data(), b.data(), r.data());
        e >>= 1;
        if (e) mul(b.data(), b.data(), b.data());
    }
    return r;
}

std::vector<Word> Field::x_pow(uint64_t e) const {
    std::vector<Word> x = zero();
    x[0] = 2;
    return pow(x, e);
}

std::vector<Word> Field::from_bits(const Word* bits) const {
    std::vector<Word> r(bits, bits + w_);
    r[w_ - 1] &= top_mask_;
    return r;
}

bool is_irreducible(const Modulus& f) {
    const int m = f.m;
    if (m < 2) return m == 1;
    Field F(f);
    const int w = F.words();
    // Prime divisors of m.
    std::vector<int> primes;
    {
        int t = m;
        for (int p = 2; p * p <= t; p++) {
            if (t % p == 0) {
                primes.push_back(p);
                while (t % p == 0) t /= p;
            }
        }
        if (t > 1) primes.push_back(t);
    }
    std::vector<int> checkpoints;
    for (int p : primes) checkpoints.push_back(m / p);

    std::vector<Word> fpoly((m + 64) / 64 + 1, 0);
    fpoly[m >> 6] |= Word(1) << (m & 63);
    fpoly[0] |= 1;
    for (int i = 0; i < f.nmid; i++) fpoly[f.mid[i] >> 6] |= Word(1) << (f.mid[i] & 63);

    std::vector<Word> y(w, 0), z(2 * w, 0);
    y[0] = 2;  // x
    for (int k = 1; k <= m; k++) {
        sqr_wide(y.data(), w, z.data());
        F.reduce(z.data());
        std::copy(z.begin(), z.begin() + w, y.begin());
        if (std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end()) {
            std::vector<Word> g = y;
            g[0] ^= 2;  // x^(2^k) - x
            g.resize(fpoly.size(), 0);
            if (poly_degree(g) < 0) return false;
            if (poly_degree(poly_gcd(g, fpoly)) != 0) return false;
        }
    }
    std::vector<Word> x(w, 0);
    x[0] = 2;
    return y == x;
}

}  // namespace icsim
