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


/* C interface to the icsim simulator. All functions are safe to call from
 * several threads on distinct handles. Strings returned by the library stay
 * valid until the owning handle is destroyed (or, for icsim_last_error, until
 * the next failing call on the same thread). */

#ifndef ICSIM_ICSIM_H
#define ICSIM_ICSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ICSIM_API __declspec(dllexport)
#else
#define ICSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum icsim_status {
    ICSIM_OK = 0,
    ICSIM_ERR_NULL = 1,          /* a required pointer was NULL */
    ICSIM_ERR_INVALID_ARG = 2,   /* unknown key, malformed value, bad configuration */
    ICSIM_ERR_RANGE = 3,         /* index out of range or buffer too small */
    ICSIM_ERR_IO = 4,            /* file could not be written */
    ICSIM_ERR_INTERNAL = 5
} icsim_status;

typedef struct icsim_experiment icsim_experiment;
typedef struct icsim_result icsim_result;

typedef struct icsim_rate_row {
    const char* scheme;
    const char* adversary;
    uint64_t n;
    double eps;
    uint64_t rounds;            /* N */
    double overhead;            /* (N - n) / n */
    uint64_t budget;            /* floor(eps N) */
    int trials;
    int failures;
    double failure_rate;
    double mean_collisions;
    double mean_spent;
    double max_drop;
    uint64_t lemma_violations;
    int collision_overruns;
} icsim_rate_row;

typedef struct icsim_trial {
    int success;
    int exchange_ok;
    uint64_t seed;
    uint64_t spent;
    uint64_t h1_collisions;
    uint64_t h2_collisions;
    uint64_t dangerous_iterations;
    double max_drop;
    double final_phi;
    uint64_t lemma_violations;
    uint64_t max_len_gap;
} icsim_trial;

ICSIM_API const char* icsim_version(void);
ICSIM_API const char* icsim_status_name(icsim_status s);
/* Message of the last failure on this thread ("" if none). */
ICSIM_API const char* icsim_last_error(void);

ICSIM_API icsim_status icsim_experiment_create(icsim_experiment** out);
ICSIM_API void icsim_experiment_destroy(icsim_experiment* e);
/* Keys: scheme, n, eps (comma list), trials, adversary, exchange, protocol,
 * seed, out, trace_trials, threads, bursts, split_iteration, C2 .. C6. */
ICSIM_API icsim_status icsim_experiment_set(icsim_experiment* e, const char* key, const char* value);
ICSIM_API icsim_status icsim_experiment_validate(const icsim_experiment* e);
/* Derived parameters for eps index i as one JSON object. Writes at most cap
 * bytes including the terminator; *needed receives the full size. */
ICSIM_API icsim_status icsim_experiment_params_json(const icsim_experiment* e, size_t i, char* buf, size_t cap,
                                                    size_t* needed);

/* One trial at eps index i. Trace paths may be NULL. */
ICSIM_API icsim_status icsim_run_trial(const icsim_experiment* e, size_t i, uint64_t seed,
                                       const char* channel_trace_path, const char* iteration_trace_path,
                                       icsim_trial* out);

ICSIM_API icsim_status icsim_sweep(const icsim_experiment* e, icsim_result** out);
ICSIM_API size_t icsim_result_rows(const icsim_result* r);
ICSIM_API icsim_status icsim_result_row(const icsim_result* r, size_t i, icsim_rate_row* out);
ICSIM_API size_t icsim_result_trials(const icsim_result* r, size_t row);
ICSIM_API icsim_status icsim_result_trial(const icsim_result* r, size_t row, size_t t, icsim_trial* out);
ICSIM_API icsim_status icsim_result_write_csv(const icsim_result* r, const char* path);
ICSIM_API void icsim_result_destroy(icsim_result* r);

/* Every scheme in `schemes` against every adversary in `adversaries` (comma
 * lists) at the experiment's n and first eps; writes a CSV table. */
ICSIM_API icsim_status icsim_stress(const icsim_experiment* e, const char* schemes, const char* adversaries,
                                    const char* csv_path);

#ifdef __cplusplus
}
#endif

#endif
