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


// Command-line front end over the C API.

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icsim/icsim.h"

namespace {

void check(icsim_status s) {
    if (s != ICSIM_OK) {
        std::fprintf(stderr, "sim: %s: %s\n", icsim_status_name(s), icsim_last_error());
        std::exit(s == ICSIM_ERR_INVALID_ARG ? 2 : 1);
    }
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interactive coding simulator"};
    std::string scheme = "a3", adversary = "none", exchange = "ideal", protocol = "prf", out;
    std::vector<std::string> eps{"0.002"};
    uint64_t n = 1024, seed = 1;
    int trials = 1, threads = 1, trace_trials = 1, bursts = 4;
    int64_t split_iteration = 0;
    std::vector<double> constants;
    bool params = false, stress = false;
    std::string schemes = "a1,a3,a4", adversaries = "none,bsc,obsc,burst,mitm,greedy";
    std::string trial_seed, channel_trace, iteration_trace;

    app.add_option("--scheme", scheme, "a1, a3 or a4")->check(CLI::IsMember({"a1", "a3", "a4"}));
    app.add_option("--n", n, "noiseless protocol length")->check(CLI::PositiveNumber);
    app.add_option("--eps", eps, "noise fractions (comma separated)")->delimiter(',');
    app.add_option("--trials", trials, "trials per eps")->check(CLI::PositiveNumber);
    app.add_option("--adversary", adversary, "none, bsc, obsc, burst, mitm or greedy")
        ->check(CLI::IsMember({"none", "bsc", "obsc", "burst", "mitm", "greedy"}));
    app.add_option("--exchange", exchange, "repetition, ideal or hidden")
        ->check(CLI::IsMember({"repetition", "ideal", "hidden"}));
    app.add_option("--protocol", protocol, "prf, pointer or echo")->check(CLI::IsMember({"prf", "pointer", "echo"}));
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out, "output directory for rates.csv, meta.jsonl and trace/");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--trace-trials", trace_trials, "trials per eps that write trace files");
    app.add_option("--bursts", bursts, "burst adversary: number of bursts");
    app.add_option("--split-iteration", split_iteration, "mitm adversary: first attacked iteration");
    app.add_option("--constants", constants, "potential constants C2,C3,C4,C5,C6")->delimiter(',')->expected(5);
    app.add_flag("--params", params, "print derived parameters as JSON lines and exit");
    app.add_flag("--stress", stress, "run the scheme x adversary matrix at the first eps");
    app.add_option("--schemes", schemes, "stress: schemes (comma separated)");
    app.add_option("--adversaries", adversaries, "stress: adversaries (comma separated)");
    app.add_option("--trial", trial_seed, "run one trial with this seed at the first eps");
    app.add_option("--channel-trace", channel_trace, "--trial: channel trace CSV path");
    app.add_option("--iteration-trace", iteration_trace, "--trial: per-iteration CSV path");
    CLI11_PARSE(app, argc, argv);

    icsim_experiment* e = nullptr;
    check(icsim_experiment_create(&e));
    auto set = [&](const char* k, const std::string& v) { check(icsim_experiment_set(e, k, v.c_str())); };
    set("scheme", scheme);
    set("n", std::to_string(n));
    set("eps", join(eps));
    set("trials", std::to_string(trials));
    set("adversary", adversary);
    set("exchange", exchange);
    set("protocol", protocol);
    set("seed", std::to_string(seed));
    set("threads", std::to_string(threads));
    set("trace_trials", std::to_string(trace_trials));
    set("bursts", std::to_string(bursts));
    set("split_iteration", std::to_string(split_iteration));
    if (!out.empty()) set("out", out);
    if (!constants.empty()) {
        const char* names[] = {"C2", "C3", "C4", "C5", "C6"};
        for (int i = 0; i < 5; i++) {
            std::ostringstream os;
            os.precision(17);
            os << constants[i];
            set(names[i], os.str());
        }
    }
    check(icsim_experiment_validate(e));

    if (params) {
        for (size_t i = 0; i < eps.size(); i++) {
            size_t need = 0;
            icsim_experiment_params_json(e, i, nullptr, 0, &need);
            std::string buf(need, '\0');
            check(icsim_experiment_params_json(e, i, buf.data(), buf.size(), &need));
            std::printf("%s\n", buf.c_str());
        }
    } else if (stress) {
        std::string path = out.empty() ? "stress.csv" : out + "/stress.csv";
        check(icsim_stress(e, schemes.c_str(), adversaries.c_str(), path.c_str()));
        std::printf("wrote %s\n", path.c_str());
    } else if (!trial_seed.empty()) {
        icsim_trial t;
        check(icsim_run_trial(e, 0, std::stoull(trial_seed), channel_trace.empty() ? nullptr : channel_trace.c_str(),
                              iteration_trace.empty() ? nullptr : iteration_trace.c_str(), &t));
        std::printf("success=%d spent=%llu h1=%llu h2=%llu dangerous=%llu max_drop=%g final_phi=%g violations=%llu\n",
                    t.success, (unsigned long long)t.spent, (unsigned long long)t.h1_collisions,
                    (unsigned long long)t.h2_collisions, (unsigned long long)t.dangerous_iterations, t.max_drop,
                    t.final_phi, (unsigned long long)t.lemma_violations);
    } else {
        icsim_result* r = nullptr;
        check(icsim_sweep(e, &r));
        std::printf("%-6s %-8s %-8s %10s %10s %9s %10s %10s\n", "scheme", "adv", "eps", "N", "overhead", "failures",
                    "mean_coll", "mean_spent");
        for (size_t i = 0; i < icsim_result_rows(r); i++) {
            icsim_rate_row row;
            check(icsim_result_row(r, i, &row));
            std::printf("%-6s %-8s %-8g %10llu %10.4f %4d/%-4d %10.2f %10.2f\n", row.scheme, row.adversary, row.eps,
                        (unsigned long long)row.rounds, row.overhead, row.failures, row.trials, row.mean_collisions,
                        row.mean_spent);
        }
        icsim_result_destroy(r);
    }
    icsim_experiment_destroy(e);
    return 0;
}
