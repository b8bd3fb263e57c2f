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

#ifndef ICSIM_HASHING_HPP
#define ICSIM_HASHING_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "bits.hpp"
#include "gf2.hpp"
#include "smallbias.hpp"
#include "symbol.hpp"

namespace icsim {

/// Width of the length field appended to hash inputs: ceil(log2(L+1)).
int length_field_width(uint64_t L);

struct InnerProductHashSpec {
    uint64_t L = 0;  // input cap in bits
    int o = 0;       // output bits
    uint64_t required_seed_len() const { return 2 * (uint64_t)o * L; }
};

/// x~ = x || binary(|x|) with the fixed-width length field.
BitString length_extended(const BitString& x, uint64_t L);

/// Reference inner product hash over a materialized seed.
BitString ip_hash(const InnerProductHashSpec& spec, const BitString& seed, const BitString& x);

/// Same hash when the seed is the window [offset, offset + 2oL) of a
/// powering-construction string; evaluated without materializing it.
BitString ip_hash_powering(const InnerProductHashSpec& spec, const PoweringGenerator& gen, uint64_t offset,
                           const BitString& x);

/// Parameters of the short-seed hash: ip_hash over a seed stretched from
/// (a, b) with bias p/2.
struct NNHashParams {
    double p = 0;
    int o = 0;
    int s = 0;  // 2m
    int m = 0;
    uint64_t L = 0;

    /// Consistent parameters for collision bound p on inputs of at most L
    /// bits. o = 0 selects the smallest admissible output length.
    static NNHashParams make(double p, uint64_t L, int o = 0);
    /// Throws std::invalid_argument unless o >= ceil(log2(2/p)) and s = 2m.
    void validate() const;
    double log2_inv_delta() const;
    uint64_t stretch_len() const { return 2 * (uint64_t)o * L; }
};

/// Reference short-seed hash (materializes the stretched seed).
BitString nn_hash(const NNHashParams& params, const BitString& seed, const BitString& x);

/// Keys b*a^(c + i*2L) for the o output bits of an inner product hash whose
/// seed window starts at c in the string generated by (a, b). Output bit i of
/// input x is parity(key_i * X~(a)), where X~(a) = sum_t x~_t a^t.
class HashKeys {
  public:
    HashKeys() = default;
    HashKeys(const Field& f, const std::vector<Word>& a, const std::vector<Word>& window_key, uint64_t L, int o);
    int o() const { return (int)keys_.size() / std::max(1, w_); }
    /// Hash bits (bit i at position i) of an input given by its X~(a).
    BitString apply(const Field& f, const Word* xtilde) const;
    uint64_t apply64(const Field& f, const Word* xtilde) const;  // requires o <= 64

  private:
    int w_ = 0;
    std::vector<Word> keys_;
};

/// X~(a) for a plain bit string of at most L bits.
std::vector<Word> xtilde_of_bits(const Field& f, const std::vector<Word>& a, const BitString& x, uint64_t L);

/// Fast short-seed hasher for one seed.
class NNHasher {
  public:
    NNHasher(const NNHashParams& params, const BitString& seed);
    BitString hash(const BitString& x) const;
    uint64_t hash64(const BitString& x) const;
    const Field& field() const { return *field_; }
    const std::vector<Word>& a() const { return gen_.a(); }
    const HashKeys& keys() const { return keys_; }
    const NNHashParams& params() const { return params_; }

  private:
    NNHashParams params_;
    std::shared_ptr<const Field> field_;
    PoweringGenerator gen_;
    HashKeys keys_;
};

/// X~(a) for transcripts of fixed-width symbols; symbol bits are serialized
/// most significant first and the length field counts bits.
class SymbolEvaluator {
  public:
    SymbolEvaluator(const Field& f, const std::vector<Word>& a, int bits_per_symbol, uint64_t L);
    /// X~(a) of the first n symbols.
    std::vector<Word> xtilde(const Symbol* syms, size_t n) const;
    /// X(a) of the symbols without the length field.
    void poly(const Symbol* syms, size_t n, Word* out) const;
    /// Adds a^(n*b) * Len(n*b) to x.
    void add_length(size_t n, Word* x) const;
    /// Len(nbits) = sum of a^u over the set bits u of the length field (unshifted).
    void length_term(uint64_t nbits, Word* out) const;
    /// Adds a^(start*b) * poly(syms) to x.
    void add_shifted(const Symbol* syms, size_t n, size_t start, Word* x) const;

    /// Table-driven evaluation, bypassing the residue path (reference).
    void poly_direct(const Symbol* syms, size_t n, Word* out) const;
    /// True when poly() reduces the bit polynomial modulo the minimal
    /// polynomial of a instead of evaluating symbol by symbol.
    bool uses_residue() const { return mu_deg_ > 0; }

  private:
    void sym_poly(Symbol s, Word* out) const;
    void init_residue();
    void poly_residue(const Symbol* syms, size_t n, Word* out) const;

    const Field& f_;
    std::vector<Word> a_;
    int b_;
    uint64_t L_;
    int lw_;
    int w_;
    int nbytes_;
    std::vector<Word> table_;  // [byte][256][w]
    std::vector<Word> ab_;     // a^b
    std::vector<Word> apow_;   // a^u for u < lw_
    // Residue path (fields of at most two words, minimal polynomial degree d >= 64).
    int mu_deg_ = 0;
    std::vector<Word> fold_;   // [8][256][2]: (v z^(d + 8k)) mod mu
    Word k192_[2] = {0, 0};    // z^192 mod mu
    std::vector<Word> abasis_; // a^i for i < d
};

enum class HashKind { IpUniform, IpBiased, NaorNaor };

struct Rational {
    uint64_t num = 0, den = 1;
    double value() const { return (double)num / (double)den; }
};

/// Exact collision fraction of two inputs over every seed of the family.
/// IpUniform: all 2^(2oL) seeds of ip_hash(spec). IpBiased: ip_hash(spec)
/// over the stretched string of every (a, b) in GF(2^m)^2. NaorNaor: nn_hash
/// over every 2m-bit seed. Rejects seed spaces above 2^24.
Rational collision_prob_oracle(HashKind kind, const InnerProductHashSpec& spec, int m, const NNHashParams& nn,
                               const BitString& x, const BitString& y);

}  // namespace icsim

#endif
