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

#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "hashing.hpp"
#include "schemes.hpp"

using namespace icsim;

TEST_CASE("analysis: potential worked examples") {
    PotentialConstants c;
    PotentialState s;
    s.r = 10;
    CHECK(potential(s, c) == 0);
    CHECK(simple_potential(s) == 0);

    s.len_a = s.len_b = s.lcp = 50;
    CHECK(l_plus(s) == 5);
    CHECK(l_minus(s) == 0);
    CHECK(potential(s, c) == 5);

    PotentialState u;
    u.r = 10;
    u.k_a = 1;
    CHECK(potential(u, c) == doctest::Approx(-460.8));

    PotentialState d;
    d.r = 4;
    d.len_a = 40;
    d.len_b = 32;
    d.lcp = 9;
    CHECK(l_plus(d) == 2);
    CHECK(l_minus(d) == 14);
    CHECK(simple_potential(d) == -12);
}

TEST_CASE("analysis: constants must be increasing") {
    PotentialConstants c;
    CHECK_NOTHROW(c.validate());
    c.C4 = c.C3;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    PotentialConstants d;
    d.C2 = 1;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("analysis: bad vote events") {
    // A true match that is counted.
    VoteOutcome v = expected_vote(true, true, false);
    v.voted1 = true;
    CHECK(bvc_events(v) == 0);
    // A vote without a true match.
    v = expected_vote(true, false, false);
    v.voted1 = true;
    CHECK(bvc_events(v) == 1);
    // A true match that goes uncounted.
    v = expected_vote(true, false, true);
    CHECK(bvc_events(v) == 1);
    // Unequal k counters: no vote is expected.
    v = expected_vote(false, true, true);
    CHECK_FALSE(v.expected1);
    CHECK_FALSE(v.expected2);
    CHECK(bvc_events(v) == 0);
}

TEST_CASE("analysis: forced collision is counted once") {
    InnerProductHashSpec spec{5, 2};
    std::mt19937_64 rng(1);
    BitString seed(spec.required_seed_len());
    for (uint64_t i = 0; i < seed.size(); i++) seed.set(i, rng() & 1);

    BitString x = BitString::parse("10110"), y;
    bool found = false;
    for (uint64_t v = 0; v < 32 && !found; v++) {
        BitString cand = BitString::from_uint(v, 5);
        if (cand != x && ip_hash(spec, seed, cand) == ip_hash(spec, seed, x)) {
            y = cand;
            found = true;
        }
    }
    REQUIRE(found);

    std::vector<IterationTrace> iters(3);
    bool match = ip_hash(spec, seed, x) == ip_hash(spec, seed, y);
    CollisionKind k = classify_collision(x == y, true, match, false, false);
    CHECK(k == CollisionKind::H1);
    iters[1].h1_collision = true;
    iters[1].had_collision = true;
    CollisionCounts c = count_collisions(iters);
    CHECK(c.h1 == 1);
    CHECK(c.h2 == 0);
    CHECK(c.total() == 1);

    CHECK(classify_collision(true, true, true, false, false) == CollisionKind::None);
    CHECK(classify_collision(false, false, true, false, false) == CollisionKind::None);
    CHECK(classify_collision(false, true, false, false, false) == CollisionKind::None);
    CHECK(classify_collision(false, true, true, true, true) == CollisionKind::H1);
    CHECK(classify_collision(false, true, true, true, false) == CollisionKind::H2);
}

TEST_CASE("analysis: lemma checks over a synthetic log") {
    std::vector<IterationTrace> iters(4);
    double phis[] = {1, 2, -10, -9};
    for (int i = 0; i < 4; i++) iters[i].phi = phis[i];
    iters[2].had_error = true;
    LemmaReport rep = check_lemmas(iters, 20, 10, 3, false);
    CHECK(rep.clean_iterations == 3);
    CHECK(rep.clean_violations == 0);
    CHECK(rep.max_drop == 12);
    CHECK(rep.drop_violations == 0);
    CHECK(rep.final_bound_ok);
    CHECK(rep.success_link_ok);

    iters[3].phi = 5;
    rep = check_lemmas(iters, 11, 4, 3, false);
    CHECK(rep.drop_violations == 1);
    CHECK_FALSE(rep.final_bound_ok);
    CHECK_FALSE(rep.success_link_ok);
}

TEST_CASE("analysis: iteration CSV row") {
    std::ostringstream os;
    write_iteration_header(os);
    IterationTrace t;
    t.iter = 3;
    t.l_plus = 4;
    t.k_a = 1;
    t.phi = 2.5;
    t.had_error = true;
    write_iteration_row(os, t);
    CHECK(os.str() == "iter,l_plus,l_minus,kA,kB,EA,EB,bvc,phi,err,coll\n3,4,0,1,0,0,0,0,2.5,1,0\n");
}

TEST_CASE("analysis: attacked runs charge bad votes to corruptions or collisions") {
    for (SchemeKind k : {SchemeKind::A3, SchemeKind::A4}) {
        for (uint64_t seed = 1; seed <= 5; seed++) {
            SchemeConfig c;
            c.scheme = k;
            c.n = 2048;
            c.eps = 0.005;
            AdversarySpec a;
            a.kind = "mitm";
            RunResult res = run_scheme(c, a, seed);
            uint64_t events = 0, budget = 0;
            for (const auto& t : res.iterations) {
                events += t.bvc_events;
                budget += t.corruptions + t.collision_parties;
            }
            CHECK(events <= budget);
            SchemeParams p = derive_params(c);
            LemmaReport rep = check_lemmas(res.iterations, potential_drop_bound(p), potential_final_cap(p),
                                           (double)((c.n + p.r - 1) / p.r), res.success);
            CHECK(rep.clean_violations == 0);
            CHECK(rep.drop_violations == 0);
            CHECK(rep.final_bound_ok);
            CHECK(rep.success_link_ok);
        }
    }
}
