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

#ifndef ICSIM_CHANNEL_HPP
#define ICSIM_CHANNEL_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "symbol.hpp"

namespace icsim {

struct RoundAction {
    bool send = false;
    Symbol sym = 0;
    static RoundAction Send(Symbol s) { return {true, s}; }
    static RoundAction Listen() { return {false, 0}; }
};

struct ChannelEvent {
    uint64_t round = 0;
    RoundAction alice, bob;
    std::optional<Symbol> to_alice, to_bob;
    bool corrupted = false;
};

/// Corruption allowance and spend. Unbounded budgets count but never refuse.
class Budget {
  public:
    Budget() = default;
    explicit Budget(uint64_t total) : total_(total) {}
    static Budget unbounded() {
        Budget b;
        b.bounded_ = false;
        return b;
    }
    /// floor(eps * N), computed without floating error at exact products.
    static uint64_t allowance(double eps, uint64_t N);

    uint64_t total() const { return total_; }
    uint64_t spent() const { return spent_; }
    bool bounded() const { return bounded_; }
    uint64_t remaining() const { return bounded_ ? total_ - spent_ : UINT64_MAX; }
    /// Records one corruption. Throws std::logic_error past the allowance.
    void charge();

  private:
    uint64_t total_ = 0, spent_ = 0;
    bool bounded_ = true;
};

/// What the adversary may see of a round before it acts: both actions.
struct RoundView {
    uint64_t round = 0;
    RoundAction alice, bob;
    int bits = 1;
    const Budget* budget = nullptr;
};

class Adversary {
  public:
    virtual ~Adversary() = default;
    virtual std::string name() const = 0;
    /// False for the unbudgeted random channel.
    virtual bool budgeted() const { return true; }
    /// Called once before round 0 with the run length and budget.
    virtual void begin(uint64_t N, const Budget& budget, int bits) {
        (void)N;
        (void)budget;
        (void)bits;
    }
    /// Symbol delivered in a round with one sender; returning `sent` means no corruption.
    virtual Symbol deliver(const RoundView& v, Symbol sent) {
        (void)v;
        return sent;
    }
    /// Symbols heard by (Alice, Bob) when both listen; free of charge.
    virtual std::pair<Symbol, Symbol> fill(const RoundView& v) {
        (void)v;
        return {0, 0};
    }
    /// Sees every resolved round.
    virtual void observe(const ChannelEvent& e) { (void)e; }
};

/// The four-case round table. adversary may be null (clean channel, fill 0).
ChannelEvent resolve_round(uint64_t round, const RoundAction& alice, const RoundAction& bob, Adversary* adversary,
                           Budget& budget, int bits);

/// One party as seen by the channel.
class PartyMachine {
  public:
    virtual ~PartyMachine() = default;
    virtual RoundAction act(uint64_t round) = 0;
    virtual void receive(uint64_t round, std::optional<Symbol> s) = 0;
};

struct EngineResult {
    uint64_t rounds = 0;
    uint64_t corruptions = 0;
    Budget budget;
    std::vector<ChannelEvent> log;  // filled only when requested
};

struct EngineOptions {
    bool keep_log = false;
    std::function<void(const ChannelEvent&)> on_event;
};

/// Runs exactly N rounds.
EngineResult run_engine(PartyMachine& alice, PartyMachine& bob, Adversary* adversary, uint64_t N, Budget budget,
                        int bits, const EngineOptions& opt = {});

// Built-in channel-level adversaries.

std::unique_ptr<Adversary> make_clean_adversary();

/// Unbudgeted i.i.d. channel: each delivered symbol is replaced with
/// probability eps by a uniformly random different symbol (a bit flip when
/// bits = 1).
std::unique_ptr<Adversary> make_random_bsc(double eps, uint64_t seed);

/// A corruption committed before the run: XOR mask applied at a round.
struct PlannedCorruption {
    uint64_t round;
    Symbol mask;
};

/// Fixed corruption list, applied to one-sender rounds only.
std::unique_ptr<Adversary> make_oblivious(std::vector<PlannedCorruption> plan, std::string name = "oblivious");

/// Each round independently with probability eps, truncated to `budget` entries.
std::vector<PlannedCorruption> plan_binomial(double eps, uint64_t N, uint64_t budget, int bits, uint64_t seed);

/// `bursts` contiguous runs of floor(budget/bursts) rounds at random starts.
std::vector<PlannedCorruption> plan_bursts(uint64_t N, uint64_t budget, int bursts, int bits, uint64_t seed);

/// From split_round on, corrupts one symbol Bob sends to Alice in each
/// targeted round (every Bob-to-Alice round when `targets` is empty) until
/// the budget is exhausted; Bob is always answered faithfully.
std::unique_ptr<Adversary> make_mitm_desync(uint64_t split_round, std::function<bool(uint64_t)> targets = {});

/// Adaptive adversary driven by a callback over its observed history.
using DecisionFn = std::function<std::optional<Symbol>(const RoundView&, Symbol sent,
                                                       const std::vector<ChannelEvent>& history)>;
std::unique_ptr<Adversary> make_adaptive(DecisionFn fn, std::string name = "adaptive");

/// Uniformly random nonzero symbol of `bits` bits.
Symbol random_nonzero_symbol(std::mt19937_64& rng, int bits);

/// Trace format: round,sender,sent,delivered_A,delivered_B,corrupted
void write_trace_header(std::ostream& os);
void write_trace_line(std::ostream& os, const ChannelEvent& e);

}  // namespace icsim

#endif
