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

#ifndef ICSIM_BITS_HPP
#define ICSIM_BITS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gf2.hpp"

namespace icsim {

/// Packed bit string, bit i at word i/64, position i%64.
class BitString {
  public:
    BitString() = default;
    explicit BitString(uint64_t n) : n_(n), w_((n + 63) / 64, 0) {}

    /// From text of '0'/'1' characters, first character is bit 0.
    static BitString parse(std::string_view s) {
        BitString b(s.size());
        for (size_t i = 0; i < s.size(); i++) {
            if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("bit string must be 0/1");
            b.set(i, s[i] == '1');
        }
        return b;
    }

    /// The low `width` bits of v, most significant first.
    static BitString from_uint(uint64_t v, int width) {
        BitString b(width);
        for (int i = 0; i < width; i++) b.set(i, (v >> (width - 1 - i)) & 1);
        return b;
    }

    uint64_t size() const { return n_; }
    bool empty() const { return n_ == 0; }
    bool get(uint64_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(uint64_t i, bool v) {
        Word m = Word(1) << (i & 63);
        if (v) w_[i >> 6] |= m;
        else w_[i >> 6] &= ~m;
    }
    void flip(uint64_t i) { w_[i >> 6] ^= Word(1) << (i & 63); }
    void push_back(bool v) {
        if ((n_ & 63) == 0) w_.push_back(0);
        n_++;
        set(n_ - 1, v);
    }
    void append(const BitString& o) {
        for (uint64_t i = 0; i < o.size(); i++) push_back(o.get(i));
    }
    /// Appends the low `width` bits of v, most significant first.
    void append_uint(uint64_t v, int width) {
        for (int i = width - 1; i >= 0; i--) push_back((v >> i) & 1);
    }
    /// Reads `width` bits starting at pos as an unsigned value, most significant first.
    uint64_t read_uint(uint64_t pos, int width) const {
        uint64_t v = 0;
        for (int i = 0; i < width; i++) v = (v << 1) | (get(pos + i) ? 1 : 0);
        return v;
    }
    BitString slice(uint64_t pos, uint64_t len) const {
        BitString b(len);
        for (uint64_t i = 0; i < len; i++) b.set(i, get(pos + i));
        return b;
    }
    const Word* data() const { return w_.data(); }
    Word* data() { return w_.data(); }
    uint64_t popcount() const {
        uint64_t c = 0;
        for (Word x : w_) c += __builtin_popcountll(x);
        return c;
    }
    std::string str() const {
        std::string s(n_, '0');
        for (uint64_t i = 0; i < n_; i++) s[i] = get(i) ? '1' : '0';
        return s;
    }
    bool operator==(const BitString& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitString& o) const { return !(*this == o); }

  private:
    uint64_t n_ = 0;
    std::vector<Word> w_;
};

}  // namespace icsim

#endif
