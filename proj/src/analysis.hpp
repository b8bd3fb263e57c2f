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

#ifndef ICSIM_ANALYSIS_HPP
#define ICSIM_ANALYSIS_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace icsim {

struct PotentialConstants {
    double C2 = 2, C3 = 64, C4 = 512, C5 = 4096, C6 = 32768;
    /// Throws std::invalid_argument unless 1 < C2 < C3 < C4 < C5 < C6.
    void validate() const;
    /// Largest one-iteration drop the potential can show: every term moving
    /// by its largest per-iteration amount in the harmful direction.
    double drop_bound() const;
};

/// Ground-truth snapshot of both parties at an iteration boundary.
struct PotentialState {
    uint64_t len_a = 0, len_b = 0;  // symbols
    uint64_t lcp = 0;               // longest common prefix, symbols
    uint64_t r = 1;
    int64_t k_a = 0, k_b = 0, e_a = 0, e_b = 0;
    int64_t bvc_a = 0, bvc_b = 0;
};

/// Blocks of length r on which the transcripts agree.
int64_t l_plus(const PotentialState& s);
/// (|T_A| + |T_B|) / r - 2 l_plus.
int64_t l_minus(const PotentialState& s);

/// Two-branch potential of the oblivious and adversarial schemes.
double potential(const PotentialState& s, const PotentialConstants& c);
/// l_plus - l_minus, the potential of the large-alphabet scheme.
double simple_potential(const PotentialState& s);

/// One party's vote outcome in an iteration against the ground truth.
struct VoteOutcome {
    bool voted1 = false, voted2 = false;      // v1 / v2 incremented
    bool expected1 = false, expected2 = false; // what a corruption- and collision-free iteration does
};

/// Number of bad or uncounted vote events in an outcome (0 or 1).
int bvc_events(const VoteOutcome& v);

/// What a party's vote should be. k_equal is whether both k counters agree
/// after the increment; mp1_match / mp2_match are true prefix matches of the
/// party's meeting points against either meeting point of the other party.
VoteOutcome expected_vote(bool k_equal, bool mp1_match, bool mp2_match);

struct IterationTrace {
    uint64_t iter = 0;
    int64_t l_plus = 0, l_minus = 0;
    int64_t k_a = 0, k_b = 0, e_a = 0, e_b = 0;
    int64_t bvc = 0;  // BVC_A + BVC_B
    double phi = 0;
    bool had_error = false;      // a corruption landed in this iteration's rounds
    bool had_collision = false;  // h1 or h2 collision
    bool h1_collision = false, h2_collision = false;
    bool dangerous = false;      // l_minus > 0 or k_AB > 0 at the start
    uint64_t len_a = 0, len_b = 0;
    uint64_t corruptions = 0;
    int bvc_events = 0;       // bad or missing votes this iteration (both parties)
    int collision_parties = 0;  // receivers that saw a collision this iteration
};

enum class CollisionKind { None, H1, H2 };

/// One compared pair: a collision needs truly different values, an intact
/// transmitted field (and seed) and an observed match. With two hash layers
/// it is charged to the first layer when the first-layer values already
/// agree, otherwise to the second.
CollisionKind classify_collision(bool truly_equal, bool intact, bool matched, bool two_layer, bool h1_equal);

struct CollisionCounts {
    uint64_t h1 = 0, h2 = 0, dangerous = 0;
    uint64_t total() const { return h1 + h2; }
};

CollisionCounts count_collisions(const std::vector<IterationTrace>& iters);

/// Header and rows of the per-iteration CSV:
/// iter,l_plus,l_minus,kA,kB,EA,EB,bvc,phi,err,coll
void write_iteration_header(std::ostream& os);
void write_iteration_row(std::ostream& os, const IterationTrace& t);

/// Checks of the potential properties over one run.
struct LemmaReport {
    uint64_t clean_iterations = 0;
    uint64_t clean_violations = 0;  // clean iteration without an increase of at least 1
    uint64_t drop_violations = 0;   // drop larger than the bound
    double max_drop = 0;            // largest observed one-iteration decrease
    double min_clean_gain = 0;      // smallest increase over clean iterations
    bool final_bound_ok = true;     // final phi <= R_total + 20 C2 n eps
    bool success_link_ok = true;    // final phi >= ceil(n/r) implies success
};

/// The potential before the first iteration is 0 (fresh parties).
LemmaReport check_lemmas(const std::vector<IterationTrace>& iters, double drop_bound, double final_cap,
                         double success_threshold, bool success);

}  // namespace icsim

#endif
