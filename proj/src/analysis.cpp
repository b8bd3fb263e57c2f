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

#include "analysis.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace icsim {

void PotentialConstants::validate() const {
    if (!(1 < C2 && C2 < C3 && C3 < C4 && C4 < C5 && C5 < C6))
        throw std::invalid_argument("potential constants must satisfy 1 < C2 < C3 < C4 < C5 < C6");
}

double PotentialConstants::drop_bound() const {
    // l+ down one block and l- up two; k_AB down by two increments (or the
    // k branch switching); E_AB up two; two bad-vote events at both parties.
    return 1 + 2 * C3 + 2 * C2 + 2 * C5 + 8 * C6 + 1.8 * C4 + 2 * C4;
}

int64_t l_plus(const PotentialState& s) { return (int64_t)(s.lcp / s.r); }

int64_t l_minus(const PotentialState& s) {
    return (int64_t)((s.len_a + s.len_b) / s.r) - 2 * l_plus(s);
}

double potential(const PotentialState& s, const PotentialConstants& c) {
    double lp = (double)l_plus(s), lm = (double)l_minus(s);
    double k = (double)(s.k_a + s.k_b), e = (double)(s.e_a + s.e_b), bvc = (double)(s.bvc_a + s.bvc_b);
    if (s.k_a == s.k_b) return lp - c.C3 * lm + c.C2 * k - c.C5 * e - 2 * c.C6 * bvc;
    return lp - c.C3 * lm - 0.9 * c.C4 * k + c.C4 * e - c.C6 * bvc;
}

double simple_potential(const PotentialState& s) { return (double)(l_plus(s) - l_minus(s)); }

int bvc_events(const VoteOutcome& v) {
    return (v.voted1 != v.expected1 || v.voted2 != v.expected2) ? 1 : 0;
}

VoteOutcome expected_vote(bool k_equal, bool mp1_match, bool mp2_match) {
    VoteOutcome v;
    v.expected1 = k_equal && mp1_match;
    v.expected2 = k_equal && !mp1_match && mp2_match;
    return v;
}

CollisionKind classify_collision(bool truly_equal, bool intact, bool matched, bool two_layer, bool h1_equal) {
    if (truly_equal || !intact || !matched) return CollisionKind::None;
    return two_layer && !h1_equal ? CollisionKind::H2 : CollisionKind::H1;
}

CollisionCounts count_collisions(const std::vector<IterationTrace>& iters) {
    CollisionCounts c;
    for (const auto& t : iters) {
        c.h1 += t.h1_collision;
        c.h2 += t.h2_collision;
        c.dangerous += t.dangerous;
    }
    return c;
}

void write_iteration_header(std::ostream& os) { os << "iter,l_plus,l_minus,kA,kB,EA,EB,bvc,phi,err,coll\n"; }

void write_iteration_row(std::ostream& os, const IterationTrace& t) {
    os << t.iter << ',' << t.l_plus << ',' << t.l_minus << ',' << t.k_a << ',' << t.k_b << ',' << t.e_a << ','
       << t.e_b << ',' << t.bvc << ',' << t.phi << ',' << (t.had_error ? 1 : 0) << ',' << (t.had_collision ? 1 : 0)
       << '\n';
}

LemmaReport check_lemmas(const std::vector<IterationTrace>& iters, double drop_bound, double final_cap,
                         double success_threshold, bool success) {
    LemmaReport rep;
    rep.min_clean_gain = std::numeric_limits<double>::infinity();
    double prev = 0;
    for (const auto& t : iters) {
        double d = t.phi - prev;
        if (!t.had_error && !t.had_collision) {
            rep.clean_iterations++;
            rep.min_clean_gain = std::min(rep.min_clean_gain, d);
            if (d < 1) rep.clean_violations++;
        }
        rep.max_drop = std::max(rep.max_drop, -d);
        if (-d > drop_bound) rep.drop_violations++;
        prev = t.phi;
    }
    if (!iters.empty()) {
        rep.final_bound_ok = prev <= final_cap;
        rep.success_link_ok = !(prev >= success_threshold) || success;
    }
    return rep;
}

}  // namespace icsim
