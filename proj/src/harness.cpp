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


#include "harness.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace icsim {

namespace fs = std::filesystem;
using nlohmann::json;

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (n == 0) throw std::invalid_argument("n must be positive");
    if (eps.empty()) throw std::invalid_argument("no eps values");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
    constants.validate();
    for (double e : eps) {
        if (!(e > 0 && e < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
        derive_params(scheme_config(*this, e));
    }
}

SchemeConfig scheme_config(const ExperimentConfig& cfg, double eps) {
    SchemeConfig c;
    c.scheme = cfg.scheme;
    c.n = cfg.n;
    c.eps = eps;
    c.protocol = cfg.protocol;
    c.exchange = cfg.exchange;
    c.constants = cfg.constants;
    return c;
}

uint64_t trial_seed(uint64_t master, size_t eps_index, uint64_t trial) {
    return mix64(mix64(master ^ 0x5eed0000ull) + mix64(eps_index + 0x100) * 31 + trial);
}

uint64_t TrialSummary::lemma_violations() const {
    return lemmas.clean_violations + lemmas.drop_violations + !lemmas.final_bound_ok + !lemmas.success_link_ok;
}

namespace {

std::string eps_tag(double e) {
    std::ostringstream os;
    os << std::setprecision(6) << e;
    return os.str();
}

TrialSummary summarize(const RunResult& r, const SchemeParams& p, uint64_t trial, uint64_t seed) {
    TrialSummary t;
    t.trial = trial;
    t.seed = seed;
    t.success = r.success;
    t.exchange_ok = r.exchange_ok;
    t.spent = r.spent;
    t.collisions = r.collisions;
    t.final_phi = r.final_phi;
    t.max_len_gap = r.max_len_gap;
    t.lemmas = check_lemmas(r.iterations, potential_drop_bound(p), potential_final_cap(p),
                            std::ceil((double)p.cfg.n / (double)p.r), r.success);
    for (const auto& it : r.iterations) {
        t.bvc_events += it.bvc_events;
        t.corruptions += it.corruptions;
        t.collision_parties += it.collision_parties;
    }
    return t;
}

json trial_json(const TrialSummary& t, double eps) {
    return json{{"kind", "trial"},
                {"eps", eps},
                {"trial", t.trial},
                {"seed", t.seed},
                {"success", t.success},
                {"exchange_ok", t.exchange_ok},
                {"spent", t.spent},
                {"h1_collisions", t.collisions.h1},
                {"h2_collisions", t.collisions.h2},
                {"dangerous_iterations", t.collisions.dangerous},
                {"max_drop", t.lemmas.max_drop},
                {"final_phi", t.final_phi},
                {"max_len_gap", t.max_len_gap},
                {"lemma_violations", t.lemma_violations()}};
}

// Runs jobs 0..count-1 on `threads` workers.
template <typename F>
void parallel_for(size_t count, int threads, F&& job) {
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; i++) job(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < threads && (size_t)w < count; w++) {
        pool.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace

std::string params_json(const SchemeParams& p, const ExperimentConfig& cfg, double eps) {
    const auto& c = p.cfg.constants;
    json j{{"kind", "params"},
           {"scheme", scheme_name(p.cfg.scheme)},
           {"n", p.cfg.n},
           {"eps", eps},
           {"protocol", p.cfg.protocol},
           {"adversary", cfg.adversary.kind},
           {"exchange", exchange_mode_name(p.cfg.exchange)},
           {"master_seed", cfg.seed},
           {"trials", cfg.trials},
           {"bits_per_symbol", p.bits},
           {"r", p.r},
           {"rc", p.rc},
           {"R_total", p.R_total},
           {"padded_len", p.padded_len},
           {"L", p.L},
           {"exchange_rounds", p.exchange.rounds},
           {"N", p.N},
           {"budget", p.budget},
           {"overhead", p.overhead()},
           {"constants", {{"C2", c.C2}, {"C3", c.C3}, {"C4", c.C4}, {"C5", c.C5}, {"C6", c.C6}}},
           {"drop_bound", potential_drop_bound(p)},
           {"final_cap", potential_final_cap(p)}};
    if (p.cfg.scheme == SchemeKind::A1) {
        j["hash"] = {{"p", p.a1_hash.p}, {"o", p.a1_hash.o}, {"s", p.a1_hash.s}, {"m", p.a1_hash.m}};
    } else {
        j["o1"] = p.o1;
        j["s1"] = p.s1;
        j["log2_inv_delta"] = p.log2_inv_delta;
        j["effective_log2_inv_delta"] = p.effective_log2_inv_delta;
        j["field_degree"] = p.m_R;
        j["shared_len"] = p.shared_len;
        if (p.cfg.scheme == SchemeKind::A4)
            j["hash2"] = {{"p", p.h2.p}, {"o", p.h2.o}, {"s", p.h2.s}, {"m", p.h2.m}};
    }
    return j.dump();
}

void write_rates_header(std::ostream& os) {
    os << "scheme,adversary,n,eps,N,overhead,budget,trials,failures,failure_rate,mean_collisions,mean_spent,"
          "max_drop,lemma_violations,collision_overruns\n";
}

void write_rate_row(std::ostream& os, const RateRow& r) {
    os << scheme_name(r.scheme) << ',' << r.adversary << ',' << r.n << ',' << eps_tag(r.eps) << ',' << r.N << ','
       << std::setprecision(8) << r.overhead << ',' << r.budget << ',' << r.trials << ',' << r.failures << ','
       << r.failure_rate << ',' << r.mean_collisions << ',' << r.mean_spent << ',' << r.max_drop << ','
       << r.lemma_violations << ',' << r.collision_overruns << '\n';
}

RateReport sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    RateReport rep;
    const size_t E = cfg.eps.size(), T = (size_t)cfg.trials;
    for (double e : cfg.eps) rep.params.push_back(derive_params(scheme_config(cfg, e)));
    rep.trials.assign(E, std::vector<TrialSummary>(T));
    const bool files = !cfg.out_dir.empty();
    fs::path out(cfg.out_dir);
    if (files) fs::create_directories(out / "trace");

    parallel_for(E * T, cfg.threads, [&](size_t job) {
        size_t ei = job / T, t = job % T;
        const SchemeParams& p = rep.params[ei];
        uint64_t seed = trial_seed(cfg.seed, ei, t);
        RunOptions opt;
        std::ofstream ch, it;
        if (files && (int64_t)t < cfg.trace_trials) {
            std::string stem = std::string(scheme_name(cfg.scheme)) + "_" + cfg.adversary.kind + "_eps" +
                               eps_tag(cfg.eps[ei]) + "_t" + std::to_string(t);
            ch.open(out / "trace" / (stem + "_channel.csv"), std::ios::binary);
            it.open(out / "trace" / (stem + "_iterations.csv"), std::ios::binary);
            opt.channel_trace = &ch;
            opt.iteration_trace = &it;
        }
        RunResult r = run_scheme(p.cfg, cfg.adversary, seed, opt);
        rep.trials[ei][t] = summarize(r, p, t, seed);
    });

    for (size_t ei = 0; ei < E; ei++) {
        const SchemeParams& p = rep.params[ei];
        RateRow row;
        row.scheme = cfg.scheme;
        row.adversary = cfg.adversary.kind;
        row.n = cfg.n;
        row.eps = cfg.eps[ei];
        row.N = p.N;
        row.overhead = p.overhead();
        row.budget = p.budget;
        row.trials = cfg.trials;
        const uint64_t coll_cap = 20 * (uint64_t)std::floor((double)cfg.n * cfg.eps[ei] + 1e-9);
        double coll = 0, spent = 0;
        for (const auto& t : rep.trials[ei]) {
            row.failures += !t.success;
            coll += (double)t.collisions.total();
            spent += (double)t.spent;
            row.max_drop = std::max(row.max_drop, t.lemmas.max_drop);
            row.lemma_violations += t.lemma_violations();
            row.collision_overruns += t.collisions.total() > coll_cap;
        }
        row.failure_rate = (double)row.failures / cfg.trials;
        row.mean_collisions = coll / cfg.trials;
        row.mean_spent = spent / cfg.trials;
        rep.rows.push_back(row);
    }

    if (files) {
        std::ofstream rates(out / "rates.csv", std::ios::binary);
        write_rates_header(rates);
        for (const auto& r : rep.rows) write_rate_row(rates, r);
        std::ofstream meta(out / "meta.jsonl", std::ios::binary);
        for (size_t ei = 0; ei < E; ei++) {
            meta << params_json(rep.params[ei], cfg, cfg.eps[ei]) << '\n';
            for (const auto& t : rep.trials[ei]) meta << trial_json(t, cfg.eps[ei]).dump() << '\n';
        }
    }
    return rep;
}

std::vector<StressRow> stress(const ExperimentConfig& base, const std::vector<SchemeKind>& schemes,
                              const std::vector<std::string>& adversaries) {
    std::vector<StressRow> rows;
    for (SchemeKind s : schemes) {
        for (const auto& a : adversaries) {
            ExperimentConfig cfg = base;
            cfg.scheme = s;
            cfg.adversary.kind = a;
            cfg.eps = {base.eps.at(0)};
            cfg.out_dir.clear();
            RateReport rep = sweep(cfg);
            const RateRow& r = rep.rows[0];
            rows.push_back({s, a, r.eps, r.trials, r.failures, r.failure_rate, r.max_drop, r.mean_collisions});
        }
    }
    return rows;
}

void write_stress_csv(std::ostream& os, const std::vector<StressRow>& rows) {
    os << "scheme,adversary,eps,trials,failures,failure_rate,max_drop,mean_collisions\n";
    for (const auto& r : rows) {
        os << scheme_name(r.scheme) << ',' << r.adversary << ',' << eps_tag(r.eps) << ',' << r.trials << ','
           << r.failures << ',' << std::setprecision(8) << r.failure_rate << ',' << r.max_drop << ','
           << r.mean_collisions << '\n';
    }
}

}  // namespace icsim
