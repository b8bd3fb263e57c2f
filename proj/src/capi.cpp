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


#include "icsim/icsim.h"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "harness.hpp"

using namespace icsim;

struct icsim_experiment {
    ExperimentConfig cfg;
};

struct icsim_result {
    RateReport rep;
    std::vector<std::string> scheme_names, adversaries;
};

namespace {

thread_local std::string g_error;

icsim_status fail(icsim_status s, const std::string& msg) {
    g_error = msg;
    return s;
}

template <typename F>
icsim_status guarded(F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        return fail(ICSIM_ERR_INVALID_ARG, e.what());
    } catch (const std::out_of_range& e) {
        return fail(ICSIM_ERR_RANGE, e.what());
    } catch (const std::exception& e) {
        return fail(ICSIM_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ICSIM_ERR_INTERNAL, "unknown error");
    }
}

template <typename T>
T parse_int(const std::string& key, const std::string& v) {
    T x{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) throw std::invalid_argument("bad integer for " + key + ": " + v);
    return x;
}

double parse_double(const std::string& key, const std::string& v) {
    double x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) throw std::invalid_argument("bad number for " + key + ": " + v);
    return x;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t c = s.find(',', start);
        if (c == std::string::npos) c = s.size();
        if (c > start) out.push_back(s.substr(start, c - start));
        start = c + 1;
    }
    return out;
}

void set_key(ExperimentConfig& c, const std::string& k, const std::string& v) {
    if (k == "scheme") c.scheme = parse_scheme(v);
    else if (k == "n") c.n = parse_int<uint64_t>(k, v);
    else if (k == "eps") {
        c.eps.clear();
        for (const auto& e : split(v)) c.eps.push_back(parse_double(k, e));
    } else if (k == "trials") c.trials = parse_int<int>(k, v);
    else if (k == "adversary") {
        bool known = false;
        for (const auto& a : adversary_kinds()) known |= a == v;
        if (!known) throw std::invalid_argument("unknown adversary: " + v);
        c.adversary.kind = v;
    } else if (k == "exchange") c.exchange = parse_exchange_mode(v);
    else if (k == "protocol") {
        bool known = false;
        for (const auto& f : protocol_families()) known |= f == v;
        if (!known) throw std::invalid_argument("unknown protocol family: " + v);
        c.protocol = v;
    } else if (k == "seed") c.seed = parse_int<uint64_t>(k, v);
    else if (k == "out") c.out_dir = v;
    else if (k == "trace_trials") c.trace_trials = parse_int<int>(k, v);
    else if (k == "threads") c.threads = parse_int<int>(k, v);
    else if (k == "bursts") c.adversary.bursts = parse_int<int>(k, v);
    else if (k == "split_iteration") c.adversary.split_iteration = parse_int<int64_t>(k, v);
    else if (k == "C2") c.constants.C2 = parse_double(k, v);
    else if (k == "C3") c.constants.C3 = parse_double(k, v);
    else if (k == "C4") c.constants.C4 = parse_double(k, v);
    else if (k == "C5") c.constants.C5 = parse_double(k, v);
    else if (k == "C6") c.constants.C6 = parse_double(k, v);
    else throw std::invalid_argument("unknown key: " + k);
}

void fill_trial(const TrialSummary& t, icsim_trial* out) {
    out->success = t.success;
    out->exchange_ok = t.exchange_ok;
    out->seed = t.seed;
    out->spent = t.spent;
    out->h1_collisions = t.collisions.h1;
    out->h2_collisions = t.collisions.h2;
    out->dangerous_iterations = t.collisions.dangerous;
    out->max_drop = t.lemmas.max_drop;
    out->final_phi = t.final_phi;
    out->lemma_violations = t.lemma_violations();
    out->max_len_gap = t.max_len_gap;
}

}  // namespace

extern "C" {

const char* icsim_version(void) { return "1.0.0"; }

const char* icsim_status_name(icsim_status s) {
    switch (s) {
        case ICSIM_OK: return "ok";
        case ICSIM_ERR_NULL: return "null pointer";
        case ICSIM_ERR_INVALID_ARG: return "invalid argument";
        case ICSIM_ERR_RANGE: return "out of range";
        case ICSIM_ERR_IO: return "i/o error";
        case ICSIM_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* icsim_last_error(void) { return g_error.c_str(); }

icsim_status icsim_experiment_create(icsim_experiment** out) {
    if (!out) return fail(ICSIM_ERR_NULL, "out is NULL");
    return guarded([&] {
        *out = new icsim_experiment();
        return ICSIM_OK;
    });
}

void icsim_experiment_destroy(icsim_experiment* e) { delete e; }

icsim_status icsim_experiment_set(icsim_experiment* e, const char* key, const char* value) {
    if (!e || !key || !value) return fail(ICSIM_ERR_NULL, "NULL argument");
    return guarded([&] {
        ExperimentConfig c = e->cfg;
        set_key(c, key, value);
        e->cfg = c;
        return ICSIM_OK;
    });
}

icsim_status icsim_experiment_validate(const icsim_experiment* e) {
    if (!e) return fail(ICSIM_ERR_NULL, "NULL experiment");
    return guarded([&] {
        e->cfg.validate();
        return ICSIM_OK;
    });
}

icsim_status icsim_experiment_params_json(const icsim_experiment* e, size_t i, char* buf, size_t cap,
                                          size_t* needed) {
    if (!e) return fail(ICSIM_ERR_NULL, "NULL experiment");
    return guarded([&] {
        if (i >= e->cfg.eps.size()) return fail(ICSIM_ERR_RANGE, "eps index out of range");
        SchemeParams p = derive_params(scheme_config(e->cfg, e->cfg.eps[i]));
        std::string s = params_json(p, e->cfg, e->cfg.eps[i]);
        if (needed) *needed = s.size() + 1;
        if (!buf || cap < s.size() + 1) return fail(ICSIM_ERR_RANGE, "buffer too small");
        std::memcpy(buf, s.c_str(), s.size() + 1);
        return ICSIM_OK;
    });
}

icsim_status icsim_run_trial(const icsim_experiment* e, size_t i, uint64_t seed, const char* channel_trace_path,
                             const char* iteration_trace_path, icsim_trial* out) {
    if (!e || !out) return fail(ICSIM_ERR_NULL, "NULL argument");
    return guarded([&] {
        if (i >= e->cfg.eps.size()) return fail(ICSIM_ERR_RANGE, "eps index out of range");
        SchemeParams p = derive_params(scheme_config(e->cfg, e->cfg.eps[i]));
        RunOptions opt;
        std::ofstream ch, it;
        if (channel_trace_path) {
            ch.open(channel_trace_path, std::ios::binary);
            if (!ch) return fail(ICSIM_ERR_IO, std::string("cannot open ") + channel_trace_path);
            opt.channel_trace = &ch;
        }
        if (iteration_trace_path) {
            it.open(iteration_trace_path, std::ios::binary);
            if (!it) return fail(ICSIM_ERR_IO, std::string("cannot open ") + iteration_trace_path);
            opt.iteration_trace = &it;
        }
        RunResult r = run_scheme(p.cfg, e->cfg.adversary, seed, opt);
        TrialSummary t;
        t.seed = seed;
        t.success = r.success;
        t.exchange_ok = r.exchange_ok;
        t.spent = r.spent;
        t.collisions = r.collisions;
        t.final_phi = r.final_phi;
        t.max_len_gap = r.max_len_gap;
        t.lemmas = check_lemmas(r.iterations, potential_drop_bound(p), potential_final_cap(p),
                                std::ceil((double)p.cfg.n / (double)p.r), r.success);
        fill_trial(t, out);
        return ICSIM_OK;
    });
}

icsim_status icsim_sweep(const icsim_experiment* e, icsim_result** out) {
    if (!e || !out) return fail(ICSIM_ERR_NULL, "NULL argument");
    return guarded([&] {
        auto* r = new icsim_result();
        try {
            r->rep = sweep(e->cfg);
        } catch (...) {
            delete r;
            throw;
        }
        for (const auto& row : r->rep.rows) {
            r->scheme_names.push_back(scheme_name(row.scheme));
            r->adversaries.push_back(row.adversary);
        }
        *out = r;
        return ICSIM_OK;
    });
}

size_t icsim_result_rows(const icsim_result* r) { return r ? r->rep.rows.size() : 0; }

icsim_status icsim_result_row(const icsim_result* r, size_t i, icsim_rate_row* out) {
    if (!r || !out) return fail(ICSIM_ERR_NULL, "NULL argument");
    if (i >= r->rep.rows.size()) return fail(ICSIM_ERR_RANGE, "row index out of range");
    const RateRow& x = r->rep.rows[i];
    out->scheme = r->scheme_names[i].c_str();
    out->adversary = r->adversaries[i].c_str();
    out->n = x.n;
    out->eps = x.eps;
    out->rounds = x.N;
    out->overhead = x.overhead;
    out->budget = x.budget;
    out->trials = x.trials;
    out->failures = x.failures;
    out->failure_rate = x.failure_rate;
    out->mean_collisions = x.mean_collisions;
    out->mean_spent = x.mean_spent;
    out->max_drop = x.max_drop;
    out->lemma_violations = x.lemma_violations;
    out->collision_overruns = x.collision_overruns;
    return ICSIM_OK;
}

size_t icsim_result_trials(const icsim_result* r, size_t row) {
    return r && row < r->rep.trials.size() ? r->rep.trials[row].size() : 0;
}

icsim_status icsim_result_trial(const icsim_result* r, size_t row, size_t t, icsim_trial* out) {
    if (!r || !out) return fail(ICSIM_ERR_NULL, "NULL argument");
    if (row >= r->rep.trials.size() || t >= r->rep.trials[row].size())
        return fail(ICSIM_ERR_RANGE, "trial index out of range");
    fill_trial(r->rep.trials[row][t], out);
    return ICSIM_OK;
}

icsim_status icsim_result_write_csv(const icsim_result* r, const char* path) {
    if (!r || !path) return fail(ICSIM_ERR_NULL, "NULL argument");
    return guarded([&] {
        std::ofstream os(path, std::ios::binary);
        if (!os) return fail(ICSIM_ERR_IO, std::string("cannot open ") + path);
        write_rates_header(os);
        for (const auto& row : r->rep.rows) write_rate_row(os, row);
        return os ? ICSIM_OK : fail(ICSIM_ERR_IO, std::string("write failed: ") + path);
    });
}

void icsim_result_destroy(icsim_result* r) { delete r; }

icsim_status icsim_stress(const icsim_experiment* e, const char* schemes, const char* adversaries,
                          const char* csv_path) {
    if (!e || !schemes || !adversaries || !csv_path) return fail(ICSIM_ERR_NULL, "NULL argument");
    return guarded([&] {
        std::vector<SchemeKind> ks;
        for (const auto& s : split(schemes)) ks.push_back(parse_scheme(s));
        std::vector<std::string> advs = split(adversaries);
        for (const auto& a : advs) {
            ExperimentConfig probe = e->cfg;
            set_key(probe, "adversary", a);
        }
        auto rows = stress(e->cfg, ks, advs);
        std::ofstream os(csv_path, std::ios::binary);
        if (!os) return fail(ICSIM_ERR_IO, std::string("cannot open ") + csv_path);
        write_stress_csv(os, rows);
        return ICSIM_OK;
    });
}

}  // extern "C"
