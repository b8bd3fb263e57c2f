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

#ifndef ICSIM_SYMBOL_HPP
#define ICSIM_SYMBOL_HPP

#include <cstdint>
#include <string>

namespace icsim {

/// One channel symbol; alphabets of up to 128 bits.
using Symbol = unsigned __int128;

constexpr int kMaxSymbolBits = 128;

inline Symbol symbol_mask(int bits) {
    return bits >= 128 ? ~Symbol(0) : ((Symbol(1) << bits) - 1);
}

/// Lowercase hex without leading zeros ("0" for zero).
inline std::string symbol_hex(Symbol s) {
    static const char* d = "0123456789abcdef";
    if (s == 0) return "0";
    std::string out;
    while (s) {
        out.insert(out.begin(), d[(unsigned)(s & 15)]);
        s >>= 4;
    }
    return out;
}

}  // namespace icsim

#endif
