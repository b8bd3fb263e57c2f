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

#ifndef ICSIM_SCHEMES_HPP
#define ICSIM_SCHEMES_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "channel.hpp"
#include "hashing.hpp"
#include "protocol.hpp"
#include "randex.hpp"

namespace icsim {

enum class SchemeKind { A1, A3, A4 };

SchemeKind parse_scheme(const std::string& s);
const char* scheme_name(SchemeKind k);

struct SchemeConfig {
    SchemeKind scheme = SchemeKind::A3;
    uint64_t n = 1024;
    double eps = 0.002;
    std::string protocol = "prf";
    ExchangeMode exchange = ExchangeMode::Ideal;
    int o = 6;           // output bits of the oblivious scheme's hash
    int o2 = 6;          // output bits of the second-layer hash
    double p2 = 0.1;     // collision bound of the second-layer hash
    int a1_rc = 3;       // verification symbols per direction, large-alphabet scheme
    double a1_slack = 32, a3_slack = 65, a4_slack = 65;
    int max_field_degree = 16384;
    PotentialConstants constants;
};

/// Every derived quantity of a configuration.
struct SchemeParams {
    SchemeConfig cfg;
    int bits = 1;              // bits per channel symbol
    uint64_t rc = 0;           // verification symbols per direction
    uint64_t r = 0;            // computation rounds per iteration
    uint64_t R_total = 0;      // iterations
    uint64_t padded_len = 0;   // R_total * r
    uint64_t L = 0;            // hash input cap in bits

    // Large-alphabet scheme: private seeds of the short-seed hash.
    NNHashParams a1_hash;
    int a1_len_width = 0;

    // Preshared-randomness schemes.
    int o1 = 0;                  // first-layer output bits
    uint64_t s1 = 0;             // seed bits per iteration: 2 o1 L
    double log2_inv_delta = 0;   // requested bias exponent
    double effective_log2_inv_delta = 0;
    int m_R = 0;                 // field degree of the shared string
    uint64_t shared_len = 0;     // R_total * s1
    NNHashParams h2;             // second-layer hash
    ExchangePlan exchange;

    uint64_t iter_rounds = 0;    // 2 rc + r
    uint64_t N = 0;              // total rounds
    uint64_t budget = 0;         // floor(eps N)

    uint64_t exchange_rounds() const { return exchange.rounds; }
    double overhead() const { return ((double)N - (double)cfg.n) / (double)cfg.n; }
    /// Round at which iteration j starts.
    uint64_t iteration_start(uint64_t j) const { return exchange.rounds + j * iter_rounds; }
};

/// Throws std::invalid_argument for unusable configurations.
SchemeParams derive_params(const SchemeConfig& cfg);

/// r = ceil(sqrt(rc / eps)).
uint64_t block_length(uint64_t rc, double eps);

struct MeetingPoints {
    uint64_t k_tilde = 0, mp1 = 0, mp2 = 0;
};

/// k_tilde = 2^floor(log2 k); mp1 = k_tilde r floor(len / (k_tilde r));
/// mp2 = mp1 - k_tilde r, or 0 when that is negative. Requires k >= 1.
MeetingPoints meeting_points(uint64_t k, uint64_t len, uint64_t r);

/// Status counters of the meeting-point schemes.
struct Status {
    uint64_t k = 0, E = 0, v1 = 0, v2 = 0;
    void reset() { k = E = v1 = v2 = 0; }
};

enum class Vote { None, Error, V1, V2 };
enum class Transition { None, ErrorReset, RollbackMP1, RollbackMP2, VoteReset };

/// Vote step. hk_match: H_k agreed; mp1_in / mp2_in: own meeting-point hash
/// found among the received pair.
Vote apply_vote(Status& st, bool hk_match, bool mp1_in, bool mp2_in);
/// Computation condition: k = 1, H_T agreed, E = 0.
bool should_compute(const Status& st, bool ht_match);
/// Transition step; resets or clears votes as listed and reports the branch.
Transition apply_transition(Status& st, uint64_t k_tilde);

const char* transition_name(Transition t);

struct AdversarySpec {
    std::string kind = "none";  // none, bsc, obsc, burst, mitm, greedy
    int bursts = 4;
    int64_t split_iteration = 0;  // mitm: first attacked iteration
};

const std::vector<std::string>& adversary_kinds();

struct RunOptions {
    std::ostream* channel_trace = nullptr;    // round,sender,sent,delivered_A,delivered_B,corrupted
    std::ostream* iteration_trace = nullptr;  // iter,l_plus,l_minus,...
    bool keep_iterations = true;
};

struct RunResult {
    bool success = false;
    bool alice_ok = false, bob_ok = false;
    uint64_t n = 0, N = 0;
    double overhead = 0;
    uint64_t budget = 0;        // allowance of budgeted adversaries
    bool budgeted = true;
    uint64_t spent = 0;         // corruptions applied
    bool exchange_ok = true;    // both parties hold the same shared seed
    uint64_t shared_consumed_a = 0, shared_consumed_b = 0;
    uint64_t max_len_gap = 0;   // max over iterations of ||T_A| - |T_B||
    std::vector<IterationTrace> iterations;
    CollisionCounts collisions;
    double final_phi = 0;
    uint64_t final_len_a = 0, final_len_b = 0;
};

/// Runs one trial. All randomness (inputs, private seeds, shared seed,
/// adversary) derives from `seed`.
RunResult run_scheme(const SchemeConfig& cfg, const AdversarySpec& adv, uint64_t seed, const RunOptions& opt = {});

/// Drop bound of the potential used by the scheme (3 for the simple potential).
double potential_drop_bound(const SchemeParams& p);
/// R_total + 20 C2 n eps (or R_total for the simple potential).
double potential_final_cap(const SchemeParams& p);

}  // namespace icsim

#endif
