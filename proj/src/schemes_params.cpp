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

#include <bit>
#include <cmath>
#include <stdexcept>

#include "schemes.hpp"

namespace icsim {

SchemeKind parse_scheme(const std::string& s) {
    if (s == "a1") return SchemeKind::A1;
    if (s == "a3") return SchemeKind::A3;
    if (s == "a4") return SchemeKind::A4;
    throw std::invalid_argument("unknown scheme: " + s);
}

const char* scheme_name(SchemeKind k) {
    switch (k) {
        case SchemeKind::A1: return "a1";
        case SchemeKind::A3: return "a3";
        case SchemeKind::A4: return "a4";
    }
    return "?";
}

namespace {

uint64_t ceil_div_real(double x) { return (uint64_t)std::ceil(x - 1e-9); }

void finish(SchemeParams& p) {
    p.iter_rounds = 2 * p.rc + p.r;
    p.N = p.exchange.rounds + p.R_total * p.iter_rounds;
    p.budget = Budget::allowance(p.cfg.eps, p.N);
}

void shared_string(SchemeParams& p) {
    p.s1 = 2 * (uint64_t)p.o1 * p.L;
    p.shared_len = p.R_total * p.s1;
    int m = stretch_degree(p.shared_len, p.log2_inv_delta);
    int cap = std::min(p.cfg.max_field_degree, max_table_degree());
    if (m > cap) {
        m = cap;
        while (m > 2 && !table_modulus(m)) m--;
    }
    p.m_R = m;
    p.effective_log2_inv_delta = (double)m - std::log2((double)p.shared_len);
    p.exchange = plan_exchange(p.cfg.exchange, 2 * (uint64_t)m, p.cfg.n, p.cfg.eps);
}

}  // namespace

SchemeParams derive_params(const SchemeConfig& cfg) {
    if (cfg.n == 0) throw std::invalid_argument("n must be positive");
    if (!(cfg.eps > 0 && cfg.eps < 1)) throw std::invalid_argument("eps must be in (0,1)");
    cfg.constants.validate();
    SchemeParams p;
    p.cfg = cfg;
    const double n = (double)cfg.n, eps = cfg.eps;
    switch (cfg.scheme) {
        case SchemeKind::A1: {
            if (cfg.a1_rc < 1) throw std::invalid_argument("verification symbols must be positive");
            p.rc = cfg.a1_rc;
            p.r = block_length(p.rc, eps);
            p.R_total = ceil_div_real(n / (double)p.r + cfg.a1_slack * n * eps);
            p.padded_len = p.R_total * p.r;
            const double pcol = std::pow(n, -5.0);
            int b = std::max(1, (int)std::ceil(std::log2(n)));
            p.a1_len_width = (int)std::bit_width(p.padded_len);
            for (int it = 0;; it++) {
                p.L = p.padded_len * (uint64_t)b;
                p.a1_hash = NNHashParams::make(pcol, p.L);
                int need = 2 * p.a1_hash.m + p.a1_hash.o + p.a1_len_width;
                int nb = (need + (int)p.rc - 1) / (int)p.rc;
                if (nb <= b) break;
                b = nb;
                if (it > 32 || b > kMaxSymbolBits) throw std::invalid_argument("verification message does not fit the alphabet");
            }
            p.bits = b;
            p.exchange = plan_exchange(ExchangeMode::Hidden, 0, cfg.n, eps);
            break;
        }
        case SchemeKind::A3: {
            if (cfg.o < 1 || cfg.o > 64) throw std::invalid_argument("hash output bits must be in [1,64]");
            p.o1 = cfg.o;
            p.rc = 4 * (uint64_t)p.o1;
            p.r = block_length(p.rc, eps);
            p.R_total = ceil_div_real(n / (double)p.r + cfg.a3_slack * n * eps);
            p.padded_len = p.R_total * p.r;
            p.L = std::max<uint64_t>(p.padded_len, 64);
            p.log2_inv_delta = (double)ceil_div_real(n / (double)p.r * p.o1);
            shared_string(p);
            break;
        }
        case SchemeKind::A4: {
            p.o1 = std::max(1, (int)ceil_div_real(std::log2(1.0 / eps)));
            if (p.o1 > 64) throw std::invalid_argument("eps too small for 64-bit first-layer hashes");
            p.h2 = NNHashParams::make(cfg.p2, (uint64_t)p.o1, cfg.o2);
            p.rc = (uint64_t)p.h2.s + 4 * (uint64_t)p.h2.o;
            p.r = block_length(p.rc, eps);
            p.R_total = ceil_div_real(n / (double)p.r) + ceil_div_real(cfg.a4_slack * n * eps);
            p.padded_len = p.R_total * p.r;
            p.L = std::max<uint64_t>(p.padded_len, 64);
            p.log2_inv_delta = (double)ceil_div_real(n / (double)p.r);
            shared_string(p);
            break;
        }
    }
    if (p.r < 2) throw std::invalid_argument("eps too large: block length below 2");
    finish(p);
    return p;
}

uint64_t block_length(uint64_t rc, double eps) { return ceil_div_real(std::sqrt((double)rc / eps)); }

MeetingPoints meeting_points(uint64_t k, uint64_t len, uint64_t r) {
    if (k == 0) throw std::invalid_argument("meeting points need k >= 1");
    MeetingPoints m;
    m.k_tilde = std::bit_floor(k);
    uint64_t unit = m.k_tilde * r;
    m.mp1 = unit * (len / unit);
    m.mp2 = m.mp1 >= unit ? m.mp1 - unit : 0;
    return m;
}

Vote apply_vote(Status& st, bool hk_match, bool mp1_in, bool mp2_in) {
    if (!hk_match) {
        st.E++;
        return Vote::Error;
    }
    if (mp1_in) {
        st.v1++;
        return Vote::V1;
    }
    if (mp2_in) {
        st.v2++;
        return Vote::V2;
    }
    return Vote::None;
}

bool should_compute(const Status& st, bool ht_match) { return st.k == 1 && ht_match && st.E == 0; }

Transition apply_transition(Status& st, uint64_t k_tilde) {
    if (2 * st.E >= st.k) {
        st.reset();
        return Transition::ErrorReset;
    }
    if (st.k == k_tilde && 10 * st.v1 >= 4 * k_tilde) {
        st.reset();
        return Transition::RollbackMP1;
    }
    if (st.k == k_tilde && 10 * st.v2 >= 4 * k_tilde) {
        st.reset();
        return Transition::RollbackMP2;
    }
    if (st.k == k_tilde) {
        st.v1 = st.v2 = 0;
        return Transition::VoteReset;
    }
    return Transition::None;
}

const char* transition_name(Transition t) {
    switch (t) {
        case Transition::None: return "none";
        case Transition::ErrorReset: return "error_reset";
        case Transition::RollbackMP1: return "rollback_mp1";
        case Transition::RollbackMP2: return "rollback_mp2";
        case Transition::VoteReset: return "vote_reset";
    }
    return "?";
}

double potential_drop_bound(const SchemeParams& p) {
    return p.cfg.scheme == SchemeKind::A1 ? 3.0 : p.cfg.constants.drop_bound();
}

double potential_final_cap(const SchemeParams& p) {
    if (p.cfg.scheme == SchemeKind::A1) return (double)p.R_total;
    return (double)p.R_total + 20 * p.cfg.constants.C2 * (double)p.cfg.n * p.cfg.eps;
}

}  // namespace icsim
