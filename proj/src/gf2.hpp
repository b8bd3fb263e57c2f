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

#ifndef ICSIM_GF2_HPP
#define ICSIM_GF2_HPP

#include <cstdint>
#include <vector>

#if defined(__PCLMUL__)
#include <immintrin.h>
#endif

namespace icsim {

using Word = uint64_t;

/// Sparse modulus x^m + x^e[0] + ... + x^e[k-1] + 1 with m > e[0] > ... > 0.
struct Modulus {
    int m = 0;
    int nmid = 0;
    int mid[3] = {0, 0, 0};
};

/// Largest degree present in the built-in table.
int max_table_degree();

/// Exact table entry, or nullptr when m is not tabulated.
const Modulus* table_modulus(int m);

/// Smallest tabulated degree >= m. Throws std::out_of_range past the table.
int supported_degree_at_least(int m);

/// Rabin irreducibility test for a sparse modulus.
bool is_irreducible(const Modulus& f);

/// Carryless 64x64 -> 128 product.
inline void clmul64(Word a, Word b, Word& lo, Word& hi) {
#if defined(__PCLMUL__)
    __m128i r = _mm_clmulepi64_si128(_mm_cvtsi64_si128((long long)a), _mm_cvtsi64_si128((long long)b), 0);
    lo = (Word)_mm_cvtsi128_si64(r);
    hi = (Word)_mm_extract_epi64(r, 1);
#else
    Word l = 0, h = 0;
    for (int i = 0; i < 64; i++) {
        if ((b >> i) & 1) {
            l ^= a << i;
            if (i) h ^= a >> (64 - i);
        }
    }
    lo = l;
    hi = h;
#endif
}

/// Arithmetic in GF(2)[x] / f for a sparse modulus f. Elements are
/// little-endian word arrays of words() entries (bit i = coefficient of x^i).
class Field {
  public:
    explicit Field(const Modulus& f);
    /// Field of exactly degree m from the table.
    explicit Field(int m);

    int degree() const { return m_; }
    int words() const { return w_; }
    const Modulus& modulus() const { return f_; }

    std::vector<Word> zero() const { return std::vector<Word>(w_, 0); }
    std::vector<Word> one() const;

    /// out = x*y mod f. out may alias x or y.
    void mul(const Word* x, const Word* y, Word* out) const;
    std::vector<Word> mul(const std::vector<Word>& x, const std::vector<Word>& y) const;

    /// Unreduced carryless product into 2*words() words.
    void mul_wide(const Word* x, const Word* y, Word* out2) const;

    /// Reduces a 2*words()-word polynomial in place; result in the low words().
    void reduce(Word* z2) const;

    /// parity(x*y mod f) computed without the reduction step.
    bool product_parity(const Word* x, const Word* y) const;

    std::vector<Word> pow(const std::vector<Word>& x, uint64_t e) const;

    /// x^e mod f for the polynomial x.
    std::vector<Word> x_pow(uint64_t e) const;

    /// Element from the low m bits of a word array.
    std::vector<Word> from_bits(const Word* bits) const;

  private:
    void init();
    template <int W>
    void mul_small(const Word* x, const Word* y, Word* out) const;

    Modulus f_;
    int m_ = 0;
    int w_ = 0;
    Word top_mask_ = 0;
    std::vector<Word> lambda_;  // parity(x^j mod f) for j < 2m
};

/// Parity of the bitwise AND of two word arrays.
inline bool and_parity(const Word* a, const Word* b, int n) {
    Word acc = 0;
    for (int i = 0; i < n; i++) acc ^= a[i] & b[i];
    return __builtin_parityll(acc);
}

}  // namespace icsim

#endif
