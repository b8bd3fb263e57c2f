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

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace icsim {

int length_field_width(uint64_t L) {
    if (L == 0) throw std::invalid_argument("input cap must be positive");
    return (int)std::bit_width(L);
}

BitString length_extended(const BitString& x, uint64_t L) {
    if (x.size() > L) throw std::invalid_argument("hash input longer than L");
    BitString out = x;
    out.append_uint(x.size(), length_field_width(L));
    return out;
}

BitString ip_hash(const InnerProductHashSpec& spec, const BitString& seed, const BitString& x) {
    if (spec.o <= 0) throw std::invalid_argument("output length must be positive");
    if (seed.size() < spec.required_seed_len()) throw std::invalid_argument("seed shorter than 2oL bits");
    BitString xt = length_extended(x, spec.L);
    BitString out(spec.o);
    for (int i = 0; i < spec.o; i++) {
        bool p = false;
        uint64_t base = (uint64_t)i * 2 * spec.L;
        for (uint64_t t = 0; t < xt.size(); t++) p ^= xt.get(t) & seed.get(base + t);
        out.set(i, p);
    }
    return out;
}

std::vector<Word> xtilde_of_bits(const Field& f, const std::vector<Word>& a, const BitString& x, uint64_t L) {
    BitString xt = length_extended(x, L);
    std::vector<Word> acc = f.zero(), cur = f.one();
    const int w = f.words();
    for (uint64_t t = 0; t < xt.size(); t++) {
        if (xt.get(t)) {
            for (int i = 0; i < w; i++) acc[i] ^= cur[i];
        }
        f.mul(cur.data(), a.data(), cur.data());
    }
    return acc;
}

HashKeys::HashKeys(const Field& f, const std::vector<Word>& a, const std::vector<Word>& window_key, uint64_t L,
                   int o)
    : w_(f.words()) {
    if (o <= 0) throw std::invalid_argument("output length must be positive");
    std::vector<Word> step = f.pow(a, 2 * L), k = window_key;
    keys_.resize((size_t)o * w_);
    for (int i = 0; i < o; i++) {
        std::memcpy(&keys_[(size_t)i * w_], k.data(), sizeof(Word) * w_);
        if (i + 1 < o) f.mul(k.data(), step.data(), k.data());
    }
}

BitString HashKeys::apply(const Field& f, const Word* xtilde) const {
    int n = o();
    BitString out(n);
    for (int i = 0; i < n; i++) out.set(i, f.product_parity(&keys_[(size_t)i * w_], xtilde));
    return out;
}

uint64_t HashKeys::apply64(const Field& f, const Word* xtilde) const {
    int n = o();
    if (n > 64) throw std::logic_error("apply64 needs o <= 64");
    uint64_t v = 0;
    for (int i = 0; i < n; i++) v |= uint64_t(f.product_parity(&keys_[(size_t)i * w_], xtilde)) << i;
    return v;
}

BitString ip_hash_powering(const InnerProductHashSpec& spec, const PoweringGenerator& gen, uint64_t offset,
                           const BitString& x) {
    const Field& f = gen.field();
    std::vector<Word> xt = xtilde_of_bits(f, gen.a(), x, spec.L);
    HashKeys keys(f, gen.a(), gen.window_key(offset), spec.L, spec.o);
    return keys.apply(f, xt.data());
}

double NNHashParams::log2_inv_delta() const { return std::log2(2.0 / p); }

NNHashParams NNHashParams::make(double p, uint64_t L, int o) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("collision probability must be in (0,1)");
    NNHashParams r;
    r.p = p;
    r.L = L;
    int omin = (int)std::ceil(std::log2(2.0 / p) - 1e-9);
    r.o = o == 0 ? omin : o;
    r.m = stretch_degree(r.stretch_len(), r.log2_inv_delta());
    r.s = 2 * r.m;
    r.validate();
    return r;
}

void NNHashParams::validate() const {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("collision probability must be in (0,1)");
    if (L == 0) throw std::invalid_argument("input cap must be positive");
    int omin = (int)std::ceil(std::log2(2.0 / p) - 1e-9);
    if (o < omin) throw std::invalid_argument("output length too short for collision bound p");
    if (m != stretch_degree(stretch_len(), log2_inv_delta())) throw std::invalid_argument("field degree inconsistent");
    if (s != 2 * m) throw std::invalid_argument("seed length must be 2m");
}

BitString nn_hash(const NNHashParams& params, const BitString& seed, const BitString& x) {
    params.validate();
    if (seed.size() < (uint64_t)params.s) throw std::invalid_argument("seed shorter than s bits");
    BiasedString r = stretch_log2(seed, params.stretch_len(), params.log2_inv_delta());
    return ip_hash(InnerProductHashSpec{params.L, params.o}, r.bits, x);
}

NNHasher::NNHasher(const NNHashParams& params, const BitString& seed)
    : params_(params), gen_((params.validate(), params.m), seed) {
    field_ = gen_.field_ptr();
    keys_ = HashKeys(*field_, gen_.a(), gen_.b(), params.L, params.o);
}

BitString NNHasher::hash(const BitString& x) const {
    std::vector<Word> xt = xtilde_of_bits(*field_, gen_.a(), x, params_.L);
    return keys_.apply(*field_, xt.data());
}

uint64_t NNHasher::hash64(const BitString& x) const {
    std::vector<Word> xt = xtilde_of_bits(*field_, gen_.a(), x, params_.L);
    return keys_.apply64(*field_, xt.data());
}

SymbolEvaluator::SymbolEvaluator(const Field& f, const std::vector<Word>& a, int bits_per_symbol, uint64_t L)
    : f_(f), a_(a), b_(bits_per_symbol), L_(L), lw_(length_field_width(L)), w_(f.words()) {
    if (b_ < 1 || b_ > kMaxSymbolBits) throw std::invalid_argument("bits per symbol out of range");
    nbytes_ = (b_ + 7) / 8;
    int npow = std::max(b_, lw_);
    std::vector<Word> pw((size_t)npow * w_, 0);
    std::vector<Word> cur = f.one();
    for (int e = 0; e < npow; e++) {
        std::memcpy(&pw[(size_t)e * w_], cur.data(), sizeof(Word) * w_);
        f.mul(cur.data(), a_.data(), cur.data());
    }
    ab_ = f.pow(a_, b_);
    apow_.assign(pw.begin(), pw.begin() + (size_t)lw_ * w_);
    table_.assign((size_t)nbytes_ * 256 * w_, 0);
    for (int by = 0; by < nbytes_; by++) {
        Word* t = &table_[(size_t)by * 256 * w_];
        for (int z = 1; z < 256; z++) {
            int i = __builtin_ctz(z);
            int v = 8 * by + i;
            Word* dst = t + (size_t)z * w_;
            const Word* prev = t + (size_t)(z & (z - 1)) * w_;
            std::memcpy(dst, prev, sizeof(Word) * w_);
            if (v < b_) {
                const Word* p = &pw[(size_t)(b_ - 1 - v) * w_];
                for (int k = 0; k < w_; k++) dst[k] ^= p[k];
            }
        }
    }
    init_residue();
}

namespace {

Word rev64(Word x) {
    x = __builtin_bswap64(x);
    x = ((x >> 4) & 0x0f0f0f0f0f0f0f0full) | ((x & 0x0f0f0f0f0f0f0f0full) << 4);
    x = ((x >> 2) & 0x3333333333333333ull) | ((x & 0x3333333333333333ull) << 2);
    x = ((x >> 1) & 0x5555555555555555ull) | ((x & 0x5555555555555555ull) << 1);
    return x;
}


}  // namespace

void SymbolEvaluator::init_residue() {
    const int m = f_.degree();
    if (w_ > 2 || m < 64) return;
    // Minimal polynomial of a: first linear dependency among 1, a, a^2, ...
    struct Row {
        Word v[2];
        Word c[3];
        int pivot;
    };
    std::vector<Row> rows;
    std::vector<Word> cur = f_.one();
    Word mu[3] = {0, 0, 0};
    int d = -1;
    for (int i = 0; i <= m; i++) {
        Row r{{cur[0], w_ > 1 ? cur[1] : 0}, {0, 0, 0}, -1};
        r.c[i >> 6] |= Word(1) << (i & 63);
        for (const Row& q : rows) {
            if ((r.v[q.pivot >> 6] >> (q.pivot & 63)) & 1) {
                for (int k = 0; k < 2; k++) r.v[k] ^= q.v[k];
                for (int k = 0; k < 3; k++) r.c[k] ^= q.c[k];
            }
        }
        if (!r.v[0] && !r.v[1]) {
            std::memcpy(mu, r.c, sizeof mu);
            d = i;
            break;
        }
        r.pivot = r.v[1] ? 64 + 63 - __builtin_clzll(r.v[1]) : 63 - __builtin_clzll(r.v[0]);
        rows.push_back(r);
        f_.mul(cur.data(), a_.data(), cur.data());
    }
    if (d < 64 || d > 128) return;
    // z^j mod mu for j in [d, d + 64), by repeated multiplication by z.
    const Word hi_mask = d == 128 ? ~Word(0) : d == 64 ? 0 : (Word(1) << (d - 64)) - 1;
    Word low[2] = {mu[0], mu[1] & hi_mask};  // mu - z^d
    std::vector<Word> zp((size_t)64 * 2);
    Word z[2] = {low[0], low[1]};
    for (int j = 0; j < 64; j++) {
        zp[2 * j] = z[0];
        zp[2 * j + 1] = z[1];
        bool top = d == 64 ? (z[0] >> 63) & 1 : (z[1] >> (d - 65)) & 1;
        z[1] = (z[1] << 1) | (z[0] >> 63);
        z[0] <<= 1;
        z[1] &= hi_mask;
        if (top) {
            z[0] ^= low[0];
            z[1] ^= low[1];
        }
    }
    for (int j = d + 64; j <= 192; j++) {
        if (j == 192) {
            k192_[0] = z[0];
            k192_[1] = z[1];
            break;
        }
        bool top = d == 64 ? (z[0] >> 63) & 1 : (z[1] >> (d - 65)) & 1;
        z[1] = (z[1] << 1) | (z[0] >> 63);
        z[0] <<= 1;
        z[1] &= hi_mask;
        if (top) {
            z[0] ^= low[0];
            z[1] ^= low[1];
        }
    }
    fold_.assign((size_t)8 * 256 * 2, 0);
    for (int k = 0; k < 8; k++) {
        Word* t = &fold_[(size_t)k * 512];
        for (int v = 1; v < 256; v++) {
            int bit = __builtin_ctz(v);
            const Word* prev = t + (size_t)(v & (v - 1)) * 2;
            t[2 * v] = prev[0] ^ zp[2 * (8 * k + bit)];
            t[2 * v + 1] = prev[1] ^ zp[2 * (8 * k + bit) + 1];
        }
    }
    abasis_.assign((size_t)d * w_, 0);
    cur = f_.one();
    for (int i = 0; i < d; i++) {
        std::memcpy(&abasis_[(size_t)i * w_], cur.data(), sizeof(Word) * w_);
        f_.mul(cur.data(), a_.data(), cur.data());
    }
    mu_deg_ = d;
}

void SymbolEvaluator::poly_residue(const Symbol* syms, size_t n, Word* out) const {
    const int d = mu_deg_;
    const uint64_t nbits = (uint64_t)n * b_;
    const size_t K = (size_t)((nbits + 63) / 64);
    std::vector<Word> buf(K + 3, 0);
    const int rs = 128 - b_;
    uint64_t off = 0;
    for (size_t q = 0; q < n; q++, off += b_) {
        // Symbol bits reversed, so bit i holds serialization position i.
        Word h = rev64((Word)syms[q]), l = rev64((Word)(syms[q] >> 64));
        Word v0 = rs == 0 ? l : rs < 64 ? (l >> rs) | (h << (64 - rs)) : h >> (rs - 64);
        Word v1 = rs == 0 ? h : rs < 64 ? h >> rs : 0;
        Word* dst = &buf[off >> 6];
        const int sh = off & 63;
        if (sh) {
            dst[0] |= v0 << sh;
            dst[1] |= (v0 >> (64 - sh)) | (v1 << sh);
            dst[2] |= v1 >> (64 - sh);
        } else {
            dst[0] |= v0;
            dst[1] |= v1;
        }
    }
    // Unreduced 192-bit accumulator S, congruent to the residue of the
    // chunks seen so far; S z^64 + c = s2 z^192 + (s1, s0, c).
    Word s0 = 0, s1 = 0, s2 = 0;
    for (size_t k = K; k-- > 0;) {
        Word a0, a1, b0, b1;
        clmul64(s2, k192_[0], a0, a1);
        clmul64(s2, k192_[1], b0, b1);
        Word n1 = s0 ^ a1 ^ b0;
        Word n2 = s1 ^ b1;
        s0 = buf[k] ^ a0;
        s1 = n1;
        s2 = n2;
    }
    const Word lo_mask = d == 128 ? ~Word(0) : (Word(1) << (d - 64)) - 1;
    Word r0 = 0, r1 = 0;
    for (Word c : {s2, s1, s0}) {
        Word hi = d == 128 ? r1 : d == 64 ? r0 : (r1 << (128 - d)) | (r0 >> (d - 64));
        Word lo = d == 64 ? 0 : r0 & lo_mask;
        r0 = c;
        r1 = lo;
        for (int j = 0; j < 8; j++) {
            const Word* e = &fold_[((size_t)j * 256 + ((hi >> (8 * j)) & 255)) * 2];
            r0 ^= e[0];
            r1 ^= e[1];
        }
    }
    std::memset(out, 0, sizeof(Word) * w_);
    for (int i = 0; i < d; i++) {
        Word bit = i < 64 ? (r0 >> i) & 1 : (r1 >> (i - 64)) & 1;
        if (bit) {
            for (int k = 0; k < w_; k++) out[k] ^= abasis_[(size_t)i * w_ + k];
        }
    }
}

void SymbolEvaluator::sym_poly(Symbol s, Word* out) const {
    std::memset(out, 0, sizeof(Word) * w_);
    for (int by = 0; by < nbytes_; by++) {
        unsigned z = (unsigned)(s >> (8 * by)) & 255u;
        const Word* e = &table_[((size_t)by * 256 + z) * w_];
        for (int k = 0; k < w_; k++) out[k] ^= e[k];
    }
}

void SymbolEvaluator::poly(const Symbol* syms, size_t n, Word* out) const {
    if (mu_deg_ && n >= 16) return poly_residue(syms, n, out);
    poly_direct(syms, n, out);
}

void SymbolEvaluator::poly_direct(const Symbol* syms, size_t n, Word* out) const {
    std::memset(out, 0, sizeof(Word) * w_);
    Word tmp[64];
    for (size_t q = n; q-- > 0;) {
        f_.mul(out, ab_.data(), out);
        sym_poly(syms[q], tmp);
        for (int k = 0; k < w_; k++) out[k] ^= tmp[k];
    }
}

void SymbolEvaluator::length_term(uint64_t len, Word* out) const {
    if (len > L_) throw std::invalid_argument("transcript longer than hash input cap");
    std::memset(out, 0, sizeof(Word) * w_);
    for (int u = 0; u < lw_; u++) {
        if ((len >> (lw_ - 1 - u)) & 1) {
            for (int k = 0; k < w_; k++) out[k] ^= apow_[(size_t)u * w_ + k];
        }
    }
}

void SymbolEvaluator::add_length(size_t n, Word* x) const {
    uint64_t len = (uint64_t)n * b_;
    std::vector<Word> lp(w_);
    length_term(len, lp.data());
    std::vector<Word> sh = f_.pow(a_, len);
    f_.mul(lp.data(), sh.data(), lp.data());
    for (int k = 0; k < w_; k++) x[k] ^= lp[k];
}

void SymbolEvaluator::add_shifted(const Symbol* syms, size_t n, size_t start, Word* x) const {
    std::vector<Word> p(w_), sh = f_.pow(a_, (uint64_t)start * b_);
    poly(syms, n, p.data());
    f_.mul(p.data(), sh.data(), p.data());
    for (int k = 0; k < w_; k++) x[k] ^= p[k];
}

std::vector<Word> SymbolEvaluator::xtilde(const Symbol* syms, size_t n) const {
    std::vector<Word> x(w_);
    poly(syms, n, x.data());
    add_length(n, x.data());
    return x;
}

namespace {

Word low_word(const BitString& b) { return b.size() ? b.data()[0] : 0; }

// Collisions over all seeds of a string family given as explicit seed words.
template <typename SeedFn>
Rational count_collisions(uint64_t nseeds, const InnerProductHashSpec& spec, Word d, SeedFn seed_bits) {
    Rational r;
    r.den = nseeds;
    const uint64_t win = 2 * spec.L;
    for (uint64_t s = 0; s < nseeds; s++) {
        Word bits = seed_bits(s);
        bool collide = true;
        for (int i = 0; i < spec.o && collide; i++) collide = !__builtin_parityll(d & (bits >> (i * win)));
        r.num += collide;
    }
    return r;
}

}  // namespace

Rational collision_prob_oracle(HashKind kind, const InnerProductHashSpec& spec_in, int m, const NNHashParams& nn,
                               const BitString& x, const BitString& y) {
    InnerProductHashSpec spec = spec_in;
    if (kind == HashKind::NaorNaor) {
        nn.validate();
        spec = InnerProductHashSpec{nn.L, nn.o};
        m = nn.m;
    }
    if (spec.o <= 0 || spec.L == 0) throw std::invalid_argument("bad hash spec");
    if (spec.required_seed_len() > 64) throw std::invalid_argument("oracle needs 2oL <= 64");
    Word d = low_word(length_extended(x, spec.L)) ^ low_word(length_extended(y, spec.L));
    const int seedbits = kind == HashKind::IpUniform ? (int)spec.required_seed_len() : 2 * m;
    if (seedbits > 24) throw std::invalid_argument("seed space larger than 2^24");
    const uint64_t nseeds = uint64_t(1) << seedbits;
    if (kind == HashKind::IpUniform) return count_collisions(nseeds, spec, d, [](uint64_t s) { return (Word)s; });
    Field f(m);
    const int len = (int)spec.required_seed_len();
    const Word top = Word(1) << m;
    // For fixed a the string is linear in b, so tabulate it over all b.
    std::vector<Word> strings(top);
    Rational r;
    r.den = nseeds;
    for (Word a = 0; a < top; a++) {
        strings[0] = 0;
        for (int i = 0; i < m; i++) {
            Word cur = Word(1) << i, out = 0;
            for (int t = 0; t < len; t++) {
                out |= Word(__builtin_parityll(cur)) << t;
                f.mul(&cur, &a, &cur);
            }
            strings[Word(1) << i] = out;
        }
        for (Word b = 1; b < top; b++) strings[b] = strings[b & (b - 1)] ^ strings[b & (~b + 1)];
        r.num += count_collisions(top, spec, d, [&](uint64_t b) { return strings[b]; }).num;
    }
    return r;
}

}  // namespace icsim
