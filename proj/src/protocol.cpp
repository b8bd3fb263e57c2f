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

#include "protocol.hpp"

#include <stdexcept>

namespace icsim {

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

namespace {

uint64_t fold(Symbol s) { return (uint64_t)s ^ mix64((uint64_t)(s >> 64)); }

Symbol wide(uint64_t a, uint64_t b, int bits) { return (((Symbol)a << 64) | b) & symbol_mask(bits); }

class Base : public InputProtocol {
  public:
    Base(uint64_t n, int bits, uint64_t seed) : n_(n), bits_(bits), seed_(seed) {
        if (n == 0) throw std::invalid_argument("protocol length must be positive");
        if (bits < 1 || bits > kMaxSymbolBits) throw std::invalid_argument("bits per symbol out of range");
    }
    uint64_t length() const override { return n_; }
    Alphabet alphabet() const override { return {bits_}; }

  protected:
    uint64_t n_;
    int bits_;
    uint64_t seed_;
};

// Each symbol is a keyed function of the sender's input and a hash chain
// over the whole received prefix.
class PrfProtocol : public Base {
  public:
    using Base::Base;
    std::string name() const override { return "prf"; }
    Symbol emit(Party p, uint64_t input, const ProtoState& st, uint64_t round) const override {
        uint64_t k = mix64(input ^ seed_ ^ ((uint64_t)p << 63));
        uint64_t x = mix64(st.h ^ k ^ round);
        return wide(mix64(x ^ 0x5bd1e995u), x, bits_);
    }
    ProtoState advance(const ProtoState& st, uint64_t round, Symbol s) const override {
        return {mix64(st.h ^ mix64(fold(s) + round)), s};
    }
};

// The sender maps the last symbol through its private function.
class PointerProtocol : public Base {
  public:
    using Base::Base;
    std::string name() const override { return "pointer"; }
    Symbol emit(Party p, uint64_t input, const ProtoState& st, uint64_t) const override {
        uint64_t key = mix64(input ^ seed_ ^ ((uint64_t)p << 63));
        uint64_t v = fold(st.last) % kTable;
        uint64_t e = mix64(key + v);
        return wide(mix64(e), e, bits_);
    }
    ProtoState advance(const ProtoState& st, uint64_t, Symbol s) const override { return {st.h, s}; }

  private:
    static constexpr uint64_t kTable = 256;
};

// Alice streams her input; Bob echoes the last symbol he received.
class EchoProtocol : public Base {
  public:
    using Base::Base;
    std::string name() const override { return "echo"; }
    Symbol emit(Party p, uint64_t input, const ProtoState& st, uint64_t round) const override {
        if (p == Party::Bob) return st.last;
        uint64_t x = mix64(input ^ seed_ ^ mix64(round));
        return wide(mix64(x), x, bits_);
    }
    ProtoState advance(const ProtoState& st, uint64_t, Symbol s) const override { return {st.h, s}; }
};

class Padded : public InputProtocol {
  public:
    Padded(std::shared_ptr<const InputProtocol> base, uint64_t len) : base_(std::move(base)), len_(len) {}
    std::string name() const override { return base_->name(); }
    uint64_t length() const override { return len_; }
    Alphabet alphabet() const override { return base_->alphabet(); }
    ProtoState initial() const override { return base_->initial(); }
    Symbol emit(Party p, uint64_t input, const ProtoState& st, uint64_t round) const override {
        return round < base_->length() ? base_->emit(p, input, st, round) : Symbol(0);
    }
    ProtoState advance(const ProtoState& st, uint64_t round, Symbol s) const override {
        return round < base_->length() ? base_->advance(st, round, s) : st;
    }

  private:
    std::shared_ptr<const InputProtocol> base_;
    uint64_t len_;
};

}  // namespace

Symbol InputProtocol::next_symbol(Party party, uint64_t input, const std::vector<Symbol>& prefix) const {
    ProtoState st = initial();
    for (uint64_t i = 0; i < prefix.size(); i++) st = advance(st, i, prefix[i]);
    return emit(party, input, st, prefix.size());
}

const std::vector<std::string>& protocol_families() {
    static const std::vector<std::string> f{"prf", "pointer", "echo"};
    return f;
}

std::shared_ptr<const InputProtocol> make_protocol(const std::string& family, uint64_t n, int bits, uint64_t seed) {
    if (family == "prf") return std::make_shared<PrfProtocol>(n, bits, seed);
    if (family == "pointer") return std::make_shared<PointerProtocol>(n, bits, seed);
    if (family == "echo") return std::make_shared<EchoProtocol>(n, bits, seed);
    throw std::invalid_argument("unknown protocol family: " + family);
}

std::shared_ptr<const InputProtocol> pad_with_confirmations(std::shared_ptr<const InputProtocol> pi,
                                                           uint64_t target_len) {
    if (target_len < pi->length()) throw std::invalid_argument("padding target shorter than protocol");
    if (target_len == pi->length()) return pi;
    return std::make_shared<Padded>(std::move(pi), target_len);
}

void Transcript::rollback(size_t new_len) {
    if (new_len > syms_.size()) throw std::invalid_argument("rollback past transcript end");
    syms_.resize(new_len);
    states_.resize(new_len + 1);
}

void extend(Transcript& t, const InputProtocol& pi, Party me, uint64_t input, const std::vector<Symbol>& received) {
    for (Symbol r : received) {
        uint64_t round = t.size();
        t.push(pi, pi.sender(round) == me ? t.my_next(pi, me, input) : r);
    }
}

std::vector<Symbol> run_noiseless(const InputProtocol& pi, uint64_t input_a, uint64_t input_b, uint64_t rounds) {
    std::vector<Symbol> out;
    out.reserve(rounds);
    ProtoState st = pi.initial();
    for (uint64_t i = 0; i < rounds; i++) {
        Party p = pi.sender(i);
        Symbol s = pi.emit(p, p == Party::Alice ? input_a : input_b, st, i);
        st = pi.advance(st, i, s);
        out.push_back(s);
    }
    return out;
}

}  // namespace icsim
