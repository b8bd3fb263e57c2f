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

#include "channel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace icsim {

uint64_t Budget::allowance(double eps, uint64_t N) {
    if (!(eps >= 0)) throw std::invalid_argument("eps must be non-negative");
    return (uint64_t)std::floor(eps * (double)N + 1e-9);
}

void Budget::charge() {
    if (bounded_ && spent_ >= total_) throw std::logic_error("adversary exceeded its corruption budget");
    spent_++;
}

ChannelEvent resolve_round(uint64_t round, const RoundAction& alice, const RoundAction& bob, Adversary* adversary,
                           Budget& budget, int bits) {
    ChannelEvent e;
    e.round = round;
    e.alice = alice;
    e.bob = bob;
    RoundView v{round, alice, bob, bits, &budget};
    if (alice.send && bob.send) return e;
    if (!alice.send && !bob.send) {
        auto f = adversary ? adversary->fill(v) : std::pair<Symbol, Symbol>{0, 0};
        e.to_alice = f.first & symbol_mask(bits);
        e.to_bob = f.second & symbol_mask(bits);
        return e;
    }
    Symbol sent = alice.send ? alice.sym : bob.sym;
    Symbol got = sent;
    if (adversary && (budget.remaining() > 0 || !budget.bounded())) got = adversary->deliver(v, sent) & symbol_mask(bits);
    if (got != sent) {
        budget.charge();
        e.corrupted = true;
    }
    if (alice.send) e.to_bob = got;
    else e.to_alice = got;
    return e;
}

EngineResult run_engine(PartyMachine& alice, PartyMachine& bob, Adversary* adversary, uint64_t N, Budget budget,
                        int bits, const EngineOptions& opt) {
    EngineResult res;
    if (adversary) adversary->begin(N, budget, bits);
    if (opt.keep_log) res.log.reserve(N);
    for (uint64_t r = 0; r < N; r++) {
        RoundAction a = alice.act(r), b = bob.act(r);
        ChannelEvent e = resolve_round(r, a, b, adversary, budget, bits);
        if (adversary) adversary->observe(e);
        alice.receive(r, e.to_alice);
        bob.receive(r, e.to_bob);
        res.corruptions += e.corrupted;
        if (opt.on_event) opt.on_event(e);
        if (opt.keep_log) res.log.push_back(e);
    }
    res.rounds = N;
    res.budget = budget;
    return res;
}

Symbol random_nonzero_symbol(std::mt19937_64& rng, int bits) {
    for (;;) {
        Symbol s = (((Symbol)rng() << 64) | rng()) & symbol_mask(bits);
        if (s) return s;
    }
}

namespace {

bool bernoulli(std::mt19937_64& rng, double p) {
    return (double)(rng() >> 11) * 0x1.0p-53 < p;
}

class Clean : public Adversary {
  public:
    std::string name() const override { return "none"; }
};

class RandomBsc : public Adversary {
  public:
    RandomBsc(double eps, uint64_t seed) : eps_(eps), rng_(seed) {}
    std::string name() const override { return "bsc"; }
    bool budgeted() const override { return false; }
    Symbol deliver(const RoundView& v, Symbol sent) override {
        if (!bernoulli(rng_, eps_)) return sent;
        return sent ^ random_nonzero_symbol(rng_, v.bits);
    }

  private:
    double eps_;
    std::mt19937_64 rng_;
};

class Oblivious : public Adversary {
  public:
    Oblivious(std::vector<PlannedCorruption> plan, std::string name) : plan_(std::move(plan)), name_(std::move(name)) {
        std::sort(plan_.begin(), plan_.end(), [](auto& x, auto& y) { return x.round < y.round; });
    }
    std::string name() const override { return name_; }
    Symbol deliver(const RoundView& v, Symbol sent) override {
        while (next_ < plan_.size() && plan_[next_].round < v.round) next_++;
        if (next_ < plan_.size() && plan_[next_].round == v.round) return sent ^ plan_[next_].mask;
        return sent;
    }

  private:
    std::vector<PlannedCorruption> plan_;
    std::string name_;
    size_t next_ = 0;
};

class Mitm : public Adversary {
  public:
    Mitm(uint64_t split, std::function<bool(uint64_t)> targets) : split_(split), targets_(std::move(targets)) {}
    std::string name() const override { return "mitm"; }
    Symbol deliver(const RoundView& v, Symbol sent) override {
        if (v.round < split_ || v.alice.send || !v.bob.send) return sent;
        if (targets_ && !targets_(v.round)) return sent;
        return sent ^ Symbol(1);
    }

  private:
    uint64_t split_;
    std::function<bool(uint64_t)> targets_;
};

class Callback : public Adversary {
  public:
    Callback(DecisionFn fn, std::string name) : fn_(std::move(fn)), name_(std::move(name)) {}
    std::string name() const override { return name_; }
    Symbol deliver(const RoundView& v, Symbol sent) override {
        auto r = fn_(v, sent, history_);
        return r ? *r : sent;
    }
    void observe(const ChannelEvent& e) override { history_.push_back(e); }

  private:
    DecisionFn fn_;
    std::string name_;
    std::vector<ChannelEvent> history_;
};

}  // namespace

std::unique_ptr<Adversary> make_clean_adversary() { return std::make_unique<Clean>(); }

std::unique_ptr<Adversary> make_random_bsc(double eps, uint64_t seed) { return std::make_unique<RandomBsc>(eps, seed); }

std::unique_ptr<Adversary> make_oblivious(std::vector<PlannedCorruption> plan, std::string name) {
    return std::make_unique<Oblivious>(std::move(plan), std::move(name));
}

std::vector<PlannedCorruption> plan_binomial(double eps, uint64_t N, uint64_t budget, int bits, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<PlannedCorruption> out;
    for (uint64_t r = 0; r < N && out.size() < budget; r++) {
        if (bernoulli(rng, eps)) out.push_back({r, random_nonzero_symbol(rng, bits)});
    }
    return out;
}

std::vector<PlannedCorruption> plan_bursts(uint64_t N, uint64_t budget, int bursts, int bits, uint64_t seed) {
    if (bursts < 1) throw std::invalid_argument("need at least one burst");
    std::mt19937_64 rng(seed);
    uint64_t len = budget / bursts;
    std::vector<uint64_t> rounds;
    if (len == 0 || N == 0) return {};
    for (int i = 0; i < bursts; i++) {
        uint64_t start = N > len ? rng() % (N - len + 1) : 0;
        for (uint64_t t = 0; t < len && start + t < N; t++) rounds.push_back(start + t);
    }
    std::sort(rounds.begin(), rounds.end());
    rounds.erase(std::unique(rounds.begin(), rounds.end()), rounds.end());
    std::vector<PlannedCorruption> out;
    for (uint64_t r : rounds) out.push_back({r, random_nonzero_symbol(rng, bits)});
    return out;
}

std::unique_ptr<Adversary> make_mitm_desync(uint64_t split_round, std::function<bool(uint64_t)> targets) {
    return std::make_unique<Mitm>(split_round, std::move(targets));
}

std::unique_ptr<Adversary> make_adaptive(DecisionFn fn, std::string name) {
    return std::make_unique<Callback>(std::move(fn), std::move(name));
}

namespace {

const char* sender_tag(const ChannelEvent& e) {
    if (e.alice.send && e.bob.send) return "AB";
    if (e.alice.send) return "A";
    if (e.bob.send) return "B";
    return "-";
}

void put_opt(std::ostream& os, const std::optional<Symbol>& s) {
    if (s) os << symbol_hex(*s);
    else os << '-';
}

}  // namespace

void write_trace_header(std::ostream& os) { os << "round,sender,sent,delivered_A,delivered_B,corrupted\n"; }

void write_trace_line(std::ostream& os, const ChannelEvent& e) {
    os << e.round << ',' << sender_tag(e) << ',';
    if (e.alice.send && e.bob.send) os << symbol_hex(e.alice.sym) << '/' << symbol_hex(e.bob.sym);
    else if (e.alice.send) os << symbol_hex(e.alice.sym);
    else if (e.bob.send) os << symbol_hex(e.bob.sym);
    else os << '-';
    os << ',';
    put_opt(os, e.to_alice);
    os << ',';
    put_opt(os, e.to_bob);
    os << ',' << (e.corrupted ? 1 : 0) << '\n';
}

}  // namespace icsim
