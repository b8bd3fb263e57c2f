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

#include "schemes.hpp"

#include <algorithm>
#include <cstring>
#include <ostream>
#include <random>
#include <stdexcept>

namespace icsim {

const std::vector<std::string>& adversary_kinds() {
    static const std::vector<std::string> k{"none", "bsc", "obsc", "burst", "mitm", "greedy"};
    return k;
}

namespace {

BitString random_bits(std::mt19937_64& rng, uint64_t n) {
    BitString b(n);
    for (uint64_t i = 0; i < n; i += 64) {
        uint64_t w = rng();
        for (uint64_t j = 0; j < 64 && i + j < n; j++) b.set(i + j, (w >> j) & 1);
    }
    return b;
}

BitString low_bits(uint64_t v, int n) {
    BitString b(n);
    for (int i = 0; i < n; i++) b.set(i, (v >> i) & 1);
    return b;
}

std::vector<Word> element_from(const BitString& s, uint64_t pos, int m, int words) {
    std::vector<Word> x(words, 0);
    for (int i = 0; i < m; i++) {
        if (s.get(pos + i)) x[i >> 6] |= Word(1) << (i & 63);
    }
    return x;
}

/// Incremental X~(a) of a transcript at block boundaries.
class PrefixHasher {
  public:
    PrefixHasher(std::shared_ptr<const Field> f, const std::vector<Word>& a, int bits, uint64_t L, uint64_t r)
        : f_(std::move(f)), a_(a), bits_(bits), r_(r), w_(f_->words()), ev_(*f_, a_, bits, L), ev64_(*f_, a_, 64, L) {
        arb_ = f_->pow(a_, r * (uint64_t)bits);
        P_ = f_->zero();
        A_ = f_->one();
    }

    size_t blocks() const { return P_.size() / w_ - 1; }

    void push_block(const Symbol* syms) {
        size_t j = blocks();
        std::vector<Word> p(w_);
        ev_.poly(syms, r_, p.data());
        f_->mul(p.data(), &A_[j * w_], p.data());
        for (int k = 0; k < w_; k++) p[k] ^= P_[j * w_ + k];
        P_.insert(P_.end(), p.begin(), p.end());
        std::vector<Word> an(w_);
        f_->mul(&A_[j * w_], arb_.data(), an.data());
        A_.insert(A_.end(), an.begin(), an.end());
    }

    void pop_to(size_t blocks) {
        P_.resize((blocks + 1) * w_);
        A_.resize((blocks + 1) * w_);
    }

    /// X~ of the first `blocks` blocks.
    std::vector<Word> prefix(size_t blocks) const {
        std::vector<Word> len(w_), out(w_);
        ev_.length_term(blocks * r_ * bits_, len.data());
        f_->mul(len.data(), &A_[blocks * w_], out.data());
        for (int k = 0; k < w_; k++) out[k] ^= P_[blocks * w_ + k];
        return out;
    }

    std::vector<Word> value64(uint64_t v) const {
        Symbol s = v;
        return ev64_.xtilde(&s, 1);
    }

  private:
    std::shared_ptr<const Field> f_;
    std::vector<Word> a_;
    int bits_;
    uint64_t r_;
    int w_;
    SymbolEvaluator ev_, ev64_;
    std::vector<Word> arb_;
    std::vector<Word> P_, A_;  // per block boundary: X(prefix), a^(position bits)
};

/// What a party did in the current iteration, read by the session.
struct IterInfo {
    uint64_t len_start = 0;
    uint64_t k = 0;
    MeetingPoints mp;
    bool computing = false;
    bool status_reset = false;
    Vote vote = Vote::None;
    Transition transition = Transition::None;
    std::vector<Symbol> sent, recv;
    uint64_t h1[4] = {0, 0, 0, 0};   // own first-layer values of k, T, MP1, MP2
    uint64_t own[4] = {0, 0, 0, 0};  // own values compared with the received fields
    bool match[6] = {false, false, false, false, false, false};
    uint64_t other_len = 0;          // large-alphabet scheme: received l'
};

// Pairs compared by the meeting-point schemes: (own item, received item).
constexpr int kPairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}};

class SchemeParty : public PartyMachine {
  public:
    SchemeParty(const SchemeParams& P, std::shared_ptr<const InputProtocol> pi, Party me, uint64_t input,
                uint64_t private_seed)
        : P_(P), pi_(std::move(pi)), me_(me), input_(input), T_(*pi_), rng_(private_seed) {}

    RoundAction act(uint64_t t) override {
        const uint64_t X = P_.exchange.rounds;
        if (t < X) return exchange_act(t);
        uint64_t q = (t - X) % P_.iter_rounds;
        if (q == 0) {
            info_ = IterInfo{};
            info_.len_start = T_.size();
            info_.recv.assign(P_.rc, 0);
            begin_iteration();
        }
        const uint64_t V = P_.rc;
        if (q < V) return me_ == Party::Alice ? RoundAction::Send(info_.sent[q]) : RoundAction::Listen();
        if (q < 2 * V) return me_ == Party::Bob ? RoundAction::Send(info_.sent[q - V]) : RoundAction::Listen();
        if (info_.computing) {
            if (pi_->sender(T_.size()) != me_) return RoundAction::Listen();
            pending_ = T_.my_next(*pi_, me_, input_);
            return RoundAction::Send(pending_);
        }
        uint64_t pos = info_.len_start + (q - 2 * V);
        return pi_->sender(pos) == me_ ? RoundAction::Send(0) : RoundAction::Listen();
    }

    void receive(uint64_t t, std::optional<Symbol> s) override {
        const uint64_t X = P_.exchange.rounds;
        if (t < X) {
            exchange_receive(t, s.value_or(0));
            return;
        }
        uint64_t q = (t - X) % P_.iter_rounds;
        const uint64_t V = P_.rc;
        if (q < 2 * V) {
            bool mine = (q < V) == (me_ == Party::Bob);
            if (mine) info_.recv[q % V] = s.value_or(0);
            if (q == 2 * V - 1) end_verification();
            return;
        }
        if (info_.computing) {
            bool sender = pi_->sender(T_.size()) == me_;
            T_.push(*pi_, sender ? pending_ : s.value_or(0));
        }
        if (q == P_.iter_rounds - 1) end_iteration();
    }

    const Transcript& transcript() const { return T_; }
    const IterInfo& info() const { return info_; }
    IterInfo& info_mut() { return info_; }
    virtual Status status() const { return {}; }
    Party party() const { return me_; }

  protected:
    virtual RoundAction exchange_act(uint64_t) { return RoundAction::Listen(); }
    virtual void exchange_receive(uint64_t, Symbol) {}
    virtual void begin_iteration() = 0;
    virtual void end_verification() = 0;
    virtual void end_iteration() = 0;

    const SchemeParams& P_;
    std::shared_ptr<const InputProtocol> pi_;
    Party me_;
    uint64_t input_;
    Transcript T_;
    std::mt19937_64 rng_;
    IterInfo info_;
    Symbol pending_ = 0;
};

// ---------------------------------------------------------------------------
// Large-alphabet scheme.

/// hash_S(T) for the large-alphabet scheme. Both parties hash under the same
/// seed within an iteration, so X~ values are memoized per seed with
/// checkpoints every kBlock symbols and reused across the common prefix.
class A1Hash {
  public:
    explicit A1Hash(const SchemeParams& P) : P_(P), f_(std::make_shared<Field>(P.a1_hash.m)) {}

    /// S = (a, b) as the first 2m bits of seed.
    BitString operator()(const BitString& seed, const std::vector<Symbol>& T) {
        const int m = P_.a1_hash.m, w = f_->words();
        std::vector<Word> a = element_from(seed, 0, m, w), b = element_from(seed, m, m, w);
        Entry& e = lookup(a);
        uint64_t c = 0, lim = std::min(T.size(), e.ref.size());
        while (c < lim && T[c] == e.ref[c]) c++;
        size_t j = std::min<size_t>(c / kBlock, e.P.size() / w - 1);
        std::vector<Word> x(e.P.begin() + j * w, e.P.begin() + (j + 1) * w);
        if (e.ref.empty() || j * kBlock < T.size()) extend(e, T, j, x);
        e.ev->add_length(T.size(), x.data());
        HashKeys keys(*f_, a, b, P_.L, P_.a1_hash.o);
        return keys.apply(*f_, x.data());
    }

  private:
    static constexpr size_t kBlock = 1024;

    struct Entry {
        std::vector<Word> a;
        std::unique_ptr<SymbolEvaluator> ev;
        std::vector<Word> abk;      // a^(kBlock * bits)
        std::vector<Symbol> ref;    // transcript the checkpoints describe
        std::vector<Word> P, A;     // per checkpoint: X(prefix), a^(position bits)
        uint64_t used = 0;
    };

    Entry& lookup(const std::vector<Word>& a) {
        tick_++;
        for (auto& e : cache_) {
            if (e.a == a) {
                e.used = tick_;
                return e;
            }
        }
        Entry* slot = nullptr;
        if (cache_.size() < 4) {
            slot = &cache_.emplace_back();
        } else {
            slot = &*std::min_element(cache_.begin(), cache_.end(),
                                      [](const Entry& x, const Entry& y) { return x.used < y.used; });
        }
        Entry& e = *slot;
        e.a = a;
        e.ev = std::make_unique<SymbolEvaluator>(*f_, a, P_.bits, P_.L);
        e.abk = f_->pow(a, kBlock * (uint64_t)P_.bits);
        e.ref.clear();
        e.P = f_->zero();
        e.A = f_->one();
        e.used = tick_;
        return e;
    }

    // x holds X of T[0, j*kBlock); adds the rest of T, and re-points the
    // entry's checkpoints at T.
    void extend(Entry& e, const std::vector<Symbol>& T, size_t j, std::vector<Word>& x) {
        const int w = f_->words();
        e.P.resize((j + 1) * w);
        e.A.resize((j + 1) * w);
        e.ref.assign(T.begin(), T.end());
        std::vector<Word> p(w), an(w);
        for (size_t pos = j * kBlock; pos < T.size(); pos += kBlock) {
            size_t len = std::min(kBlock, T.size() - pos);
            size_t blk = pos / kBlock;
            e.ev->poly(T.data() + pos, len, p.data());
            f_->mul(p.data(), &e.A[blk * w], p.data());
            for (int k = 0; k < w; k++) x[k] ^= p[k];
            if (len == kBlock) {
                e.P.insert(e.P.end(), x.begin(), x.end());
                f_->mul(&e.A[blk * w], e.abk.data(), an.data());
                e.A.insert(e.A.end(), an.begin(), an.end());
            }
        }
    }

    const SchemeParams& P_;
    std::shared_ptr<const Field> f_;
    std::vector<Entry> cache_;
    uint64_t tick_ = 0;
};

struct A1Message {
    BitString seed, hash;
    uint64_t len = 0;
};

std::vector<Symbol> a1_pack(const SchemeParams& P, const A1Message& msg) {
    BitString bits = msg.seed;
    bits.append(msg.hash);
    bits.append_uint(msg.len, P.a1_len_width);
    std::vector<Symbol> out(P.rc, 0);
    for (uint64_t q = 0; q < P.rc; q++) {
        Symbol s = 0;
        for (int i = 0; i < P.bits; i++) {
            uint64_t pos = q * P.bits + i;
            s = (s << 1) | Symbol(pos < bits.size() && bits.get(pos));
        }
        out[q] = s;
    }
    return out;
}

A1Message a1_unpack(const SchemeParams& P, const std::vector<Symbol>& syms) {
    BitString bits(P.rc * P.bits);
    for (uint64_t q = 0; q < P.rc; q++) {
        for (int i = 0; i < P.bits; i++) bits.set(q * P.bits + i, (syms[q] >> (P.bits - 1 - i)) & 1);
    }
    A1Message m;
    const uint64_t s = P.a1_hash.s, o = P.a1_hash.o;
    m.seed = bits.slice(0, s);
    m.hash = bits.slice(s, o);
    m.len = bits.read_uint(s + o, P.a1_len_width);
    return m;
}

class A1Party : public SchemeParty {
  public:
    A1Party(const SchemeParams& P, std::shared_ptr<const InputProtocol> pi, Party me, uint64_t input, uint64_t seed,
            std::shared_ptr<A1Hash> hash)
        : SchemeParty(P, std::move(pi), me, input, seed), hash_(std::move(hash)) {}

    const BitString& seed() const { return seed_; }

  protected:
    void begin_iteration() override {
        seed_ = random_bits(rng_, P_.a1_hash.s);
        A1Message m{seed_, (*hash_)(seed_, T_.symbols()), T_.size()};
        info_.sent = a1_pack(P_, m);
    }

    void end_verification() override {
        A1Message got = a1_unpack(P_, info_.recv);
        info_.other_len = got.len;
        bool match = (*hash_)(got.seed, T_.symbols()) == got.hash;
        info_.match[1] = match;
        info_.computing = match;
    }

    void end_iteration() override {
        if (!info_.match[1] && info_.len_start >= info_.other_len) {
            T_.rollback(T_.size() >= P_.r ? T_.size() - P_.r : 0);
        }
    }

  private:
    std::shared_ptr<A1Hash> hash_;
    BitString seed_;
};

// ---------------------------------------------------------------------------
// Meeting-point schemes.

class MPParty : public SchemeParty {
  public:
    MPParty(const SchemeParams& P, std::shared_ptr<const InputProtocol> pi, Party me, uint64_t input, uint64_t seed,
            const BitString* shared_seed, const std::vector<uint8_t>* exchange_sent)
        : SchemeParty(P, std::move(pi), me, input, seed), exchange_sent_(exchange_sent) {
        if (shared_seed) R_ = *shared_seed;
        if (P.exchange.mode != ExchangeMode::Hidden && me == Party::Bob) {
            R_ = BitString();
            got_.assign(P.exchange.rounds, 0);
        }
    }

    Status status() const override { return st_; }
    const BitString& shared_seed() const { return R_; }
    bool ready() const { return sr_.length() > 0; }
    const SharedRandomness& shared() const { return sr_; }
    const Field& field() const { return *field_; }
    std::shared_ptr<const Field> field_ptr() const { return field_; }
    const std::vector<Word>& a() const { return sr_.generator().a(); }
    const HashKeys& keys() const { return keys_; }
    /// Second-layer hash under a given seed (adversarial scheme).
    uint64_t layer2(const BitString& s2, uint64_t h1) const {
        NNHasher h(P_.h2, s2);
        return h.hash64(low_bits(h1, P_.o1));
    }

  protected:
    RoundAction exchange_act(uint64_t q) override {
        if (me_ == Party::Bob) return RoundAction::Listen();
        return RoundAction::Send(exchange_bit(P_.exchange, R_, q) ? 1 : 0);
    }

    void exchange_receive(uint64_t q, Symbol s) override {
        if (me_ == Party::Bob) got_[q] = (uint8_t)(s & 1);
    }

    void setup() {
        if (R_.size() == 0) {
            ExchangeDecoder dec(P_.exchange);
            for (uint64_t q = 0; q < P_.exchange.rounds; q++) {
                bool sent = exchange_sent_ ? (*exchange_sent_)[q] != 0 : got_[q] != 0;
                dec.receive(q, got_[q] != 0, sent);
            }
            R_ = dec.decode();
        }
        sr_ = SharedRandomness(P_.m_R, R_, P_.shared_len);
        field_ = sr_.generator().field_ptr();
        hasher_ = std::make_unique<PrefixHasher>(field_, sr_.generator().a(), P_.bits, P_.L, P_.r);
    }

    void begin_iteration() override {
        if (!hasher_) setup();
        st_.k++;
        info_.k = st_.k;
        info_.mp = meeting_points(st_.k, T_.size(), P_.r);
        std::vector<Word> key;
        sr_.next_seed_keyed(P_.s1, key);
        keys_ = HashKeys(*field_, sr_.generator().a(), key, P_.L, P_.o1);
        std::vector<Word> x[4] = {hasher_->value64(st_.k), hasher_->prefix(T_.size() / P_.r),
                                  hasher_->prefix(info_.mp.mp1 / P_.r), hasher_->prefix(info_.mp.mp2 / P_.r)};
        for (int f = 0; f < 4; f++) info_.h1[f] = keys_.apply64(*field_, x[f].data());
        info_.sent.assign(P_.rc, 0);
        if (P_.cfg.scheme == SchemeKind::A3) {
            for (int f = 0; f < 4; f++) put_field(info_.sent, f * P_.o1, info_.h1[f], P_.o1);
        } else {
            s2_ = random_bits(rng_, P_.h2.s);
            for (int i = 0; i < P_.h2.s; i++) info_.sent[i] = s2_.get(i);
            for (int f = 0; f < 4; f++) put_field(info_.sent, P_.h2.s + f * P_.h2.o, layer2(s2_, info_.h1[f]), P_.h2.o);
        }
    }

    void end_verification() override {
        uint64_t rf[4];
        if (P_.cfg.scheme == SchemeKind::A3) {
            for (int f = 0; f < 4; f++) {
                rf[f] = get_field(info_.recv, f * P_.o1, P_.o1);
                info_.own[f] = info_.h1[f];
            }
        } else {
            BitString s2(P_.h2.s);
            for (int i = 0; i < P_.h2.s; i++) s2.set(i, info_.recv[i] & 1);
            NNHasher h(P_.h2, s2);
            for (int f = 0; f < 4; f++) {
                rf[f] = get_field(info_.recv, P_.h2.s + f * P_.h2.o, P_.h2.o);
                info_.own[f] = h.hash64(low_bits(info_.h1[f], P_.o1));
            }
        }
        for (int p = 0; p < 6; p++) info_.match[p] = info_.own[kPairs[p][0]] == rf[kPairs[p][1]];
        info_.vote = apply_vote(st_, info_.match[0], info_.match[2] || info_.match[3], info_.match[4] || info_.match[5]);
        info_.computing = should_compute(st_, info_.match[1]);
    }

    void end_iteration() override {
        if (info_.computing) {
            hasher_->push_block(T_.symbols().data() + info_.len_start);
            st_.reset();
            info_.status_reset = true;
        }
        info_.transition = apply_transition(st_, info_.mp.k_tilde);
        switch (info_.transition) {
            case Transition::RollbackMP1: rollback(info_.mp.mp1); break;
            case Transition::RollbackMP2: rollback(info_.mp.mp2); break;
            default: break;
        }
        if (info_.transition == Transition::ErrorReset || info_.transition == Transition::RollbackMP1 ||
            info_.transition == Transition::RollbackMP2)
            info_.status_reset = true;
    }

  private:
    static void put_field(std::vector<Symbol>& msg, uint64_t off, uint64_t v, int bits) {
        for (int i = 0; i < bits; i++) msg[off + i] = (v >> i) & 1;
    }
    static uint64_t get_field(const std::vector<Symbol>& msg, uint64_t off, int bits) {
        uint64_t v = 0;
        for (int i = 0; i < bits; i++) v |= uint64_t(msg[off + i] & 1) << i;
        return v;
    }

    void rollback(uint64_t len) {
        T_.rollback(len);
        hasher_->pop_to(len / P_.r);
    }

    const std::vector<uint8_t>* exchange_sent_;
    BitString R_;
    std::vector<uint8_t> got_;
    SharedRandomness sr_;
    std::shared_ptr<const Field> field_;
    std::unique_ptr<PrefixHasher> hasher_;
    HashKeys keys_;
    Status st_;
    BitString s2_;
};

// ---------------------------------------------------------------------------

uint64_t derive(uint64_t seed, uint64_t tag) { return mix64(seed ^ mix64(tag * 0x9e3779b97f4a7c15ull + 1)); }

class Session;

/// Seed-aware adaptive attacker. It reads both parties' transcripts and
/// public values, never a private seed before it is transmitted.
class Greedy : public Adversary {
  public:
    explicit Greedy(Session& s) : s_(s) {}
    std::string name() const override { return "greedy"; }
    Symbol deliver(const RoundView& v, Symbol sent) override;

  private:
    void plan_iteration(uint64_t j);
    Symbol verification(const RoundView& v, uint64_t b, Party receiver, Symbol sent);
    Symbol compute(const RoundView& v, Symbol sent);
    bool collides(const std::vector<Word>& d) const;

    Session& s_;
    uint64_t iter_ = UINT64_MAX;
    bool diverged_ = false;      // equal lengths and k, different transcripts
    bool sync_compute_ = false;  // both compute from equal lengths and k
    bool forge_[2] = {false, false};
    bool decided_[2] = {false, false};
    std::vector<Symbol> forged_[2];
    std::vector<Word> diff_, apos_;
    HashKeys next_keys_;
    bool a1_flipped_ = false;
};

class Session {
  public:
    Session(const SchemeParams& P, const AdversarySpec& adv, uint64_t seed, const RunOptions& opt)
        : P_(P), spec_(adv), seed_(seed), opt_(opt) {
        base_ = make_protocol(P.cfg.protocol, P.cfg.n, P.bits, derive(seed, 1));
        padded_ = pad_with_confirmations(base_, P.padded_len);
        input_a_ = derive(seed, 2);
        input_b_ = derive(seed, 3);
        reference_ = run_noiseless(*base_, input_a_, input_b_, P.cfg.n);
        if (P.cfg.scheme == SchemeKind::A1) {
            auto h = std::make_shared<A1Hash>(P);
            a1_hash_ = h;
            alice_ = std::make_unique<A1Party>(P, padded_, Party::Alice, input_a_, derive(seed, 4), h);
            bob_ = std::make_unique<A1Party>(P, padded_, Party::Bob, input_b_, derive(seed, 5), h);
        } else {
            std::mt19937_64 rng(derive(seed, 6));
            shared_seed_ = random_bits(rng, 2 * (uint64_t)P.m_R);
            exchange_sent_.assign(P.exchange.rounds, 0);
            const std::vector<uint8_t>* oracle = P.exchange.mode == ExchangeMode::Ideal ? &exchange_sent_ : nullptr;
            alice_ = std::make_unique<MPParty>(P, padded_, Party::Alice, input_a_, derive(seed, 4), &shared_seed_,
                                               nullptr);
            bob_ = std::make_unique<MPParty>(P, padded_, Party::Bob, input_b_, derive(seed, 5), &shared_seed_, oracle);
        }
        adversary_ = make_adversary();
    }

    RunResult run() {
        RunResult res;
        res.n = P_.cfg.n;
        res.N = P_.N;
        res.overhead = P_.overhead();
        res.budgeted = adversary_->budgeted();
        Budget budget = res.budgeted ? Budget(P_.budget) : Budget::unbounded();
        res.budget = P_.budget;
        if (opt_.channel_trace) write_trace_header(*opt_.channel_trace);
        if (opt_.iteration_trace) write_iteration_header(*opt_.iteration_trace);
        EngineOptions eo;
        eo.on_event = [this](const ChannelEvent& e) { on_event(e); };
        EngineResult er = run_engine(*alice_, *bob_, adversary_.get(), P_.N, budget, P_.bits, eo);
        res.spent = er.budget.spent();
        auto ok = [&](const SchemeParty& p) {
            const auto& t = p.transcript().symbols();
            return t.size() >= reference_.size() && std::equal(reference_.begin(), reference_.end(), t.begin());
        };
        res.alice_ok = ok(*alice_);
        res.bob_ok = ok(*bob_);
        res.success = res.alice_ok && res.bob_ok;
        if (P_.cfg.scheme != SchemeKind::A1) {
            auto& a = static_cast<MPParty&>(*alice_);
            auto& b = static_cast<MPParty&>(*bob_);
            res.exchange_ok = a.shared_seed() == b.shared_seed();
            res.shared_consumed_a = a.shared().cursor();
            res.shared_consumed_b = b.shared().cursor();
        }
        res.max_len_gap = max_gap_;
        res.collisions = count_collisions(traces_);
        res.final_phi = phi_;
        res.final_len_a = alice_->transcript().size();
        res.final_len_b = bob_->transcript().size();
        if (opt_.keep_iterations) res.iterations = std::move(traces_);
        return res;
    }

    const SchemeParams& params() const { return P_; }
    SchemeParty& party(Party p) { return p == Party::Alice ? *alice_ : *bob_; }
    uint64_t lcp() const { return lcp_; }
    A1Hash& a1_hash() { return *a1_hash_; }

  private:
    std::unique_ptr<Adversary> make_adversary() {
        const std::string& k = spec_.kind;
        uint64_t as = derive(seed_, 7);
        if (k == "none") return make_clean_adversary();
        if (k == "bsc") return make_random_bsc(P_.cfg.eps, as);
        if (k == "obsc") return make_oblivious(plan_binomial(P_.cfg.eps, P_.N, P_.budget, P_.bits, as), "obsc");
        if (k == "burst")
            return make_oblivious(plan_bursts(P_.N, P_.budget, spec_.bursts, P_.bits, as), "burst");
        if (k == "mitm") {
            const SchemeParams& P = P_;
            uint64_t split = P.iteration_start((uint64_t)std::max<int64_t>(0, spec_.split_iteration));
            return make_mitm_desync(split, [&P](uint64_t t) {
                return t >= P.exchange.rounds && (t - P.exchange.rounds) % P.iter_rounds == P.rc;
            });
        }
        if (k == "greedy") return std::make_unique<Greedy>(*this);
        throw std::invalid_argument("unknown adversary: " + k);
    }

    void on_event(const ChannelEvent& e) {
        if (opt_.channel_trace) write_trace_line(*opt_.channel_trace, e);
        const uint64_t X = P_.exchange.rounds;
        if (e.round < X) {
            exchange_sent_[e.round] = (uint8_t)(e.alice.sym & 1);
            return;
        }
        iter_corruptions_ += e.corrupted;
        uint64_t q = (e.round - X) % P_.iter_rounds;
        if (q == P_.iter_rounds - 1) end_of_iteration((e.round - X) / P_.iter_rounds);
    }

    bool prefix_eq(uint64_t x, uint64_t y) const { return x == y && x <= lcp_; }

    void update_lcp() {
        const auto& ta = alice_->transcript().symbols();
        const auto& tb = bob_->transcript().symbols();
        uint64_t m = std::min(ta.size(), tb.size());
        lcp_ = std::min(lcp_, m);
        while (lcp_ < m && ta[lcp_] == tb[lcp_]) lcp_++;
    }

    void end_of_iteration(uint64_t j) {
        const IterInfo& A = alice_->info();
        const IterInfo& B = bob_->info();
        IterationTrace t;
        t.iter = j;
        t.corruptions = iter_corruptions_;
        t.had_error = iter_corruptions_ > 0;
        t.dangerous = prev_.l_minus > 0 || prev_.k_a + prev_.k_b > 0;
        const IterInfo* info[2] = {&A, &B};
        if (P_.cfg.scheme == SchemeKind::A1) {
            for (int p = 0; p < 2; p++) {
                const IterInfo& me = *info[p];
                const IterInfo& ot = *info[1 - p];
                bool truly_equal = prefix_eq(me.len_start, ot.len_start);
                if (!truly_equal && me.match[1] && me.recv == ot.sent) {
                    t.h1_collision = true;
                    t.collision_parties++;
                }
            }
        } else {
            bool k_equal = A.k == B.k;
            int events = 0;
            for (int p = 0; p < 2; p++) {
                const IterInfo& me = *info[p];
                const IterInfo& ot = *info[1 - p];
                bool m1 = prefix_eq(me.mp.mp1, ot.mp.mp1) || prefix_eq(me.mp.mp1, ot.mp.mp2);
                bool m2 = prefix_eq(me.mp.mp2, ot.mp.mp1) || prefix_eq(me.mp.mp2, ot.mp.mp2);
                VoteOutcome v = expected_vote(k_equal, m1, m2);
                v.voted1 = me.vote == Vote::V1;
                v.voted2 = me.vote == Vote::V2;
                events += bvc_events(v);
                t.collision_parties += classify_collisions(me, ot, t);
            }
            t.bvc_events = events;
            bvc_a_ += events;
            bvc_b_ += events;
            if (A.status_reset) bvc_a_ = 0;
            if (B.status_reset) bvc_b_ = 0;
        }
        t.had_collision = t.h1_collision || t.h2_collision;
        update_lcp();
        PotentialState ps;
        ps.len_a = alice_->transcript().size();
        ps.len_b = bob_->transcript().size();
        ps.lcp = lcp_;
        ps.r = P_.r;
        Status sa = alice_->status(), sb = bob_->status();
        ps.k_a = (int64_t)sa.k;
        ps.k_b = (int64_t)sb.k;
        ps.e_a = (int64_t)sa.E;
        ps.e_b = (int64_t)sb.E;
        ps.bvc_a = bvc_a_;
        ps.bvc_b = bvc_b_;
        t.l_plus = l_plus(ps);
        t.l_minus = l_minus(ps);
        t.k_a = ps.k_a;
        t.k_b = ps.k_b;
        t.e_a = ps.e_a;
        t.e_b = ps.e_b;
        t.bvc = bvc_a_ + bvc_b_;
        t.phi = P_.cfg.scheme == SchemeKind::A1 ? simple_potential(ps) : potential(ps, P_.cfg.constants);
        t.len_a = ps.len_a;
        t.len_b = ps.len_b;
        phi_ = t.phi;
        prev_ = t;
        max_gap_ = std::max(max_gap_, ps.len_a > ps.len_b ? ps.len_a - ps.len_b : ps.len_b - ps.len_a);
        if (opt_.iteration_trace) write_iteration_row(*opt_.iteration_trace, t);
        traces_.push_back(t);
        iter_corruptions_ = 0;
    }

    // Collisions seen by receiver `me` against sender `ot`, per compared
    // quantity (k, T, MP1 in {MP1', MP2'}, MP2 in {MP1', MP2'}): the true
    // answer is "differ", yet a pair whose field and any transmitted seed
    // arrived intact produced a match.
    bool classify_collisions(const IterInfo& me, const IterInfo& ot, IterationTrace& t) const {
        const bool a4 = P_.cfg.scheme == SchemeKind::A4;
        const int seed_bits = a4 ? P_.h2.s : 0;
        const int o = a4 ? P_.h2.o : P_.o1;
        for (int i = 0; i < seed_bits; i++) {
            if (me.recv[i] != ot.sent[i]) return false;
        }
        bool any = false;
        uint64_t mine[4] = {me.k, me.len_start, me.mp.mp1, me.mp.mp2};
        uint64_t theirs[4] = {ot.k, ot.len_start, ot.mp.mp1, ot.mp.mp2};
        auto truly_equal = [&](int p) {
            int i = kPairs[p][0], jf = kPairs[p][1];
            return i == 0 ? mine[0] == theirs[0] : prefix_eq(mine[i], theirs[jf]);
        };
        static constexpr int groups[4][3] = {{0, -1, 0}, {1, -1, 0}, {2, 3, 0}, {4, 5, 0}};
        for (const auto& g : groups) {
            bool truth = false;
            for (int k = 0; k < 2; k++) truth |= g[k] >= 0 && truly_equal(g[k]);
            if (truth) continue;
            for (int k = 0; k < 2; k++) {
                int p = g[k];
                if (p < 0 || !me.match[p]) continue;
                int i = kPairs[p][0], jf = kPairs[p][1];
                bool intact = true;
                for (int b = 0; b < o && intact; b++) {
                    uint64_t pos = seed_bits + (uint64_t)jf * o + b;
                    intact = me.recv[pos] == ot.sent[pos];
                }
                CollisionKind c = classify_collision(false, intact, true, a4, me.h1[i] == ot.h1[jf]);
                if (c == CollisionKind::None) continue;
                if (c == CollisionKind::H2) t.h2_collision = true;
                else t.h1_collision = true;
                any = true;
            }
        }
        return any;
    }

    const SchemeParams& P_;
    AdversarySpec spec_;
    uint64_t seed_;
    RunOptions opt_;
    std::shared_ptr<const InputProtocol> base_, padded_;
    uint64_t input_a_ = 0, input_b_ = 0;
    std::vector<Symbol> reference_;
    std::shared_ptr<A1Hash> a1_hash_;
    BitString shared_seed_;
    std::vector<uint8_t> exchange_sent_;
    std::unique_ptr<SchemeParty> alice_, bob_;
    std::unique_ptr<Adversary> adversary_;

    uint64_t lcp_ = 0;
    int64_t bvc_a_ = 0, bvc_b_ = 0;
    uint64_t iter_corruptions_ = 0;
    IterationTrace prev_;
    double phi_ = 0;
    uint64_t max_gap_ = 0;
    std::vector<IterationTrace> traces_;
};

// ---------------------------------------------------------------------------

void Greedy::plan_iteration(uint64_t j) {
    iter_ = j;
    forge_[0] = forge_[1] = false;
    decided_[0] = decided_[1] = false;
    a1_flipped_ = false;
    sync_compute_ = false;
    const auto& ta = s_.party(Party::Alice).transcript().symbols();
    const auto& tb = s_.party(Party::Bob).transcript().symbols();
    const IterInfo& A = s_.party(Party::Alice).info();
    const IterInfo& B = s_.party(Party::Bob).info();
    diverged_ = ta.size() == tb.size() && ta != tb && A.k == B.k;
}

Symbol Greedy::deliver(const RoundView& v, Symbol sent) {
    const SchemeParams& P = s_.params();
    const uint64_t X = P.exchange.rounds;
    if (v.round < X) return sent;
    uint64_t j = (v.round - X) / P.iter_rounds, q = (v.round - X) % P.iter_rounds;
    if (j != iter_) plan_iteration(j);
    if (q < 2 * P.rc) return verification(v, q % P.rc, q < P.rc ? Party::Bob : Party::Alice, sent);
    return compute(v, sent);
}

Symbol Greedy::verification(const RoundView& v, uint64_t b, Party receiver, Symbol sent) {
    if (!diverged_) return sent;
    const SchemeParams& P = s_.params();
    const int d = receiver == Party::Alice ? 0 : 1;
    SchemeParty& rp = s_.party(receiver);
    SchemeParty& sp = s_.party(other(receiver));
    if (P.cfg.scheme == SchemeKind::A1) {
        if (!decided_[d]) {
            decided_[d] = true;
            A1Message m = a1_unpack(P, sp.info().sent);
            m.hash = s_.a1_hash()(m.seed, rp.transcript().symbols());
            m.len = rp.transcript().size();
            forged_[d] = a1_pack(P, m);
            uint64_t cost = 0;
            for (uint64_t i = 0; i < P.rc; i++) cost += forged_[d][i] != sp.info().sent[i];
            forge_[d] = cost <= v.budget->remaining();
        }
        return forge_[d] ? forged_[d][b] : sent;
    }
    auto& mp = static_cast<MPParty&>(rp);
    const int s2 = P.cfg.scheme == SchemeKind::A4 ? P.h2.s : 0;
    const int o = P.cfg.scheme == SchemeKind::A4 ? P.h2.o : P.o1;
    if ((int64_t)b < s2) return sent;
    if (!decided_[d]) {
        decided_[d] = true;
        // Receiver's own values of k and T under the seed it will use.
        forged_[d] = sp.info().sent;
        uint64_t want[2];
        if (s2) {
            BitString seed(s2);
            for (int i = 0; i < s2; i++) seed.set(i, rp.info().recv[i] & 1);
            for (int f = 0; f < 2; f++) want[f] = mp.layer2(seed, rp.info().h1[f]);
        } else {
            for (int f = 0; f < 2; f++) want[f] = rp.info().h1[f];
        }
        uint64_t cost = 0;
        for (int f = 0; f < 2; f++) {
            for (int i = 0; i < o; i++) {
                Symbol bit = (want[f] >> i) & 1;
                uint64_t pos = s2 + (uint64_t)f * o + i;
                cost += forged_[d][pos] != bit;
                forged_[d][pos] = bit;
            }
        }
        forge_[d] = cost > 0 && cost <= v.budget->remaining();
    }
    return forge_[d] ? forged_[d][b] : sent;
}

bool Greedy::collides(const std::vector<Word>& d) const {
    auto& a = static_cast<MPParty&>(s_.party(Party::Alice));
    const Field& f = a.field();
    BitString h = next_keys_.apply(f, d.data());
    return h.popcount() == 0;
}

Symbol Greedy::compute(const RoundView& v, Symbol sent) {
    const SchemeParams& P = s_.params();
    if (v.alice.send == v.bob.send) return sent;
    SchemeParty& A = s_.party(Party::Alice);
    SchemeParty& B = s_.party(Party::Bob);
    const uint64_t q = (v.round - P.exchange.rounds) % P.iter_rounds;
    if (q == 2 * P.rc) {
        sync_compute_ = A.info().computing && B.info().computing && A.info().len_start == B.info().len_start &&
                        A.info().k == B.info().k;
        if (sync_compute_ && P.cfg.scheme != SchemeKind::A1) {
            auto& ma = static_cast<MPParty&>(A);
            auto& mb = static_cast<MPParty&>(B);
            if (!(ma.shared_seed() == mb.shared_seed())) {
                sync_compute_ = false;
            } else {
                const Field& f = ma.field();
                const auto& ta = A.transcript().symbols();
                const auto& tb = B.transcript().symbols();
                diff_ = f.zero();
                for (uint64_t p = s_.lcp(); p < ta.size(); p++) {
                    if (ta[p] == tb[p]) continue;
                    std::vector<Word> t = f.pow(ma.a(), p);
                    for (int w = 0; w < f.words(); w++) diff_[w] ^= t[w];
                }
                apos_ = f.pow(ma.a(), ta.size());
                std::vector<Word> key = ma.shared().generator().window_key(ma.shared().cursor());
                next_keys_ = HashKeys(f, ma.a(), key, P.L, P.o1);
            }
        }
    } else if (sync_compute_ && P.cfg.scheme != SchemeKind::A1) {
        auto& ma = static_cast<MPParty&>(A);
        ma.field().mul(apos_.data(), ma.a().data(), apos_.data());
    }
    if (!sync_compute_ || v.budget->remaining() == 0) return sent;
    if (P.cfg.scheme == SchemeKind::A1) {
        // Start a divergence once per iteration while budget remains to hide it.
        if (a1_flipped_ || s_.lcp() < A.info().len_start || v.budget->remaining() < 1 + 2 * P.rc) return sent;
        a1_flipped_ = true;
        return sent ^ Symbol(1);
    }
    bool zero = std::all_of(diff_.begin(), diff_.end(), [](Word w) { return w == 0; });
    if (!zero && collides(diff_)) return sent;
    std::vector<Word> cand = diff_;
    for (size_t w = 0; w < cand.size(); w++) cand[w] ^= apos_[w];
    if (!collides(cand)) return sent;
    diff_ = cand;
    return sent ^ Symbol(1);
}

}  // namespace

RunResult run_scheme(const SchemeConfig& cfg, const AdversarySpec& adv, uint64_t seed, const RunOptions& opt) {
    SchemeParams P = derive_params(cfg);
    Session s(P, adv, seed, opt);
    return s.run();
}

}  // namespace icsim
