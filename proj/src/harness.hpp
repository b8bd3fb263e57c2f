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


#ifndef ICSIM_HARNESS_HPP
#define ICSIM_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "schemes.hpp"

namespace icsim {

struct ExperimentConfig {
    SchemeKind scheme = SchemeKind::A3;
    uint64_t n = 1024;
    std::vector<double> eps{0.002};
    int trials = 1;
    AdversarySpec adversary;
    ExchangeMode exchange = ExchangeMode::Ideal;
    std::string protocol = "prf";
    uint64_t seed = 1;
    PotentialConstants constants;
    std::string out_dir;   // empty: nothing written
    int trace_trials = 1;  // trials per eps whose traces go to out_dir/trace
    int threads = 1;

    /// Throws std::invalid_argument on trials < 1, eps outside (0, 1) or an
    /// eps too large for r >= 2.
    void validate() const;
};

SchemeConfig scheme_config(const ExperimentConfig& cfg, double eps);

/// Seed of one trial; independent of thread count and trial order.
uint64_t trial_seed(uint64_t master, size_t eps_index, uint64_t trial);

struct TrialSummary {
    uint64_t trial = 0;
    uint64_t seed = 0;
    bool success = false;
    bool exchange_ok = true;
    uint64_t spent = 0;
    CollisionCounts collisions;
    LemmaReport lemmas;
    double final_phi = 0;
    uint64_t max_len_gap = 0;
    uint64_t bvc_events = 0;
    uint64_t corruptions = 0;        // inside iterations
    uint64_t collision_parties = 0;

    /// Violations of the potential and success properties.
    uint64_t lemma_violations() const;
};

struct RateRow {
    SchemeKind scheme = SchemeKind::A3;
    std::string adversary;
    uint64_t n = 0;
    double eps = 0;
    uint64_t N = 0;
    double overhead = 0;
    uint64_t budget = 0;
    int trials = 0;
    int failures = 0;
    double failure_rate = 0;
    double mean_collisions = 0;
    double mean_spent = 0;
    double max_drop = 0;
    uint64_t lemma_violations = 0;
    int collision_overruns = 0;  // trials with more than 20 floor(n eps) collisions
};

struct RateReport {
    std::vector<RateRow> rows;                      // one per eps
    std::vector<std::vector<TrialSummary>> trials;  // [eps][trial]
    std::vector<SchemeParams> params;               // [eps]
};

/// Runs every (eps, trial) and aggregates. With out_dir set, writes
/// rates.csv, meta.jsonl and trace/*.csv.
RateReport sweep(const ExperimentConfig& cfg);

void write_rates_header(std::ostream& os);
void write_rate_row(std::ostream& os, const RateRow& r);

/// One JSON object describing derived parameters and effective constants.
std::string params_json(const SchemeParams& p, const ExperimentConfig& cfg, double eps);

struct StressRow {
    SchemeKind scheme = SchemeKind::A3;
    std::string adversary;
    double eps = 0;
    int trials = 0;
    int failures = 0;
    double failure_rate = 0;
    double max_drop = 0;
    double mean_collisions = 0;
};

/// Every scheme against every adversary at the config's (n, eps[0]).
std::vector<StressRow> stress(const ExperimentConfig& base, const std::vector<SchemeKind>& schemes,
                              const std::vector<std::string>& adversaries);

void write_stress_csv(std::ostream& os, const std::vector<StressRow>& rows);

}  // namespace icsim

#endif
