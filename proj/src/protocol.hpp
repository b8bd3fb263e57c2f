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

#ifndef ICSIM_PROTOCOL_HPP
#define ICSIM_PROTOCOL_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "symbol.hpp"

namespace icsim {

enum class Party : int { Alice = 0, Bob = 1 };

inline Party other(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }
inline const char* party_name(Party p) { return p == Party::Alice ? "A" : "B"; }

struct Alphabet {
    int bits_per_symbol = 1;
};

/// Protocol state after a transcript prefix. Every built-in protocol is a
/// deterministic function of the prefix, so states are cached per position
/// and rollback reduces to truncation.
struct ProtoState {
    uint64_t h = 0;
    Symbol last = 0;
    bool operator==(const ProtoState& o) const { return h == o.h && last == o.last; }
};

/// A noiseless alternating two-party protocol: 0-based round i is sent by
/// Alice when i is even.
class InputProtocol {
  public:
    virtual ~InputProtocol() = default;

    virtual std::string name() const = 0;
    virtual uint64_t length() const = 0;
    virtual Alphabet alphabet() const = 0;

    Party sender(uint64_t round) const { return (round & 1) ? Party::Bob : Party::Alice; }

    virtual ProtoState initial() const { return {}; }
    /// Symbol sent at `round` by `party` (who must be the sender).
    virtual Symbol emit(Party party, uint64_t input, const ProtoState& st, uint64_t round) const = 0;
    /// State after appending symbol `s` at `round`.
    virtual ProtoState advance(const ProtoState& st, uint64_t round, Symbol s) const = 0;

    /// The pure definition: replays the prefix from the initial state.
    Symbol next_symbol(Party party, uint64_t input, const std::vector<Symbol>& prefix) const;
};

/// Protocol family by name: "prf", "pointer", "echo".
std::shared_ptr<const InputProtocol> make_protocol(const std::string& family, uint64_t n, int bits_per_symbol,
                                                   uint64_t seed);

/// Names of the built-in families.
const std::vector<std::string>& protocol_families();

/// Pads to target_len rounds; padding rounds send 0 and leave the state unchanged.
std::shared_ptr<const InputProtocol> pad_with_confirmations(std::shared_ptr<const InputProtocol> pi,
                                                           uint64_t target_len);

/// One party's transcript with the protocol state after every prefix.
class Transcript {
  public:
    explicit Transcript(const InputProtocol& pi) : states_{pi.initial()} {}

    size_t size() const { return syms_.size(); }
    const std::vector<Symbol>& symbols() const { return syms_; }
    const ProtoState& state() const { return states_.back(); }

    /// What `party` would send at the next position.
    Symbol my_next(const InputProtocol& pi, Party party, uint64_t input) const {
        return pi.emit(party, input, states_.back(), syms_.size());
    }
    void push(const InputProtocol& pi, Symbol s) {
        states_.push_back(pi.advance(states_.back(), syms_.size(), s));
        syms_.push_back(s);
    }
    /// Truncates to new_len symbols. Throws std::invalid_argument if new_len > size().
    void rollback(size_t new_len);

    bool operator==(const Transcript& o) const { return syms_ == o.syms_; }

  private:
    std::vector<Symbol> syms_;
    std::vector<ProtoState> states_;
};

/// Extends t by received.size() rounds: own rounds append next_symbol, the
/// other party's rounds append the received symbol.
void extend(Transcript& t, const InputProtocol& pi, Party me, uint64_t input, const std::vector<Symbol>& received);

/// Noiseless execution of the first `rounds` rounds.
std::vector<Symbol> run_noiseless(const InputProtocol& pi, uint64_t input_a, uint64_t input_b, uint64_t rounds);

/// Deterministic 64-bit mixer.
uint64_t mix64(uint64_t x);

}  // namespace icsim

#endif
