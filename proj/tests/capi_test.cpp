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

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

TEST_CASE("capi: error codes") {
    CHECK(icsim_experiment_create(nullptr) == ICSIM_ERR_NULL);
    icsim_experiment* e = nullptr;
    REQUIRE(icsim_experiment_create(&e) == ICSIM_OK);
    CHECK(icsim_experiment_set(e, "colour", "blue") == ICSIM_ERR_INVALID_ARG);
    CHECK(std::strlen(icsim_last_error()) > 0);
    CHECK(icsim_experiment_set(e, "n", "many") == ICSIM_ERR_INVALID_ARG);
    CHECK(icsim_experiment_set(e, "scheme", "a2") == ICSIM_ERR_INVALID_ARG);
    CHECK(icsim_experiment_set(e, "eps", "0.01,x") == ICSIM_ERR_INVALID_ARG);
    CHECK(icsim_experiment_set(nullptr, "n", "1") == ICSIM_ERR_NULL);
    CHECK(icsim_experiment_set(e, nullptr, "1") == ICSIM_ERR_NULL);
    CHECK(icsim_experiment_set(e, "trials", "0") == ICSIM_OK);
    CHECK(icsim_experiment_validate(e) == ICSIM_ERR_INVALID_ARG);
    CHECK(icsim_experiment_set(e, "trials", "2") == ICSIM_OK);
    CHECK(icsim_experiment_validate(e) == ICSIM_OK);
    CHECK(std::string(icsim_status_name(ICSIM_ERR_RANGE)).size() > 0);
    CHECK(std::strlen(icsim_version()) > 0);
    icsim_experiment_destroy(e);
    icsim_experiment_destroy(nullptr);
}

TEST_CASE("capi: run, sweep and write") {
    icsim_experiment* e = nullptr;
    REQUIRE(icsim_experiment_create(&e) == ICSIM_OK);
    REQUIRE(icsim_experiment_set(e, "scheme", "a3") == ICSIM_OK);
    REQUIRE(icsim_experiment_set(e, "n", "256") == ICSIM_OK);
    REQUIRE(icsim_experiment_set(e, "eps", "0.01,0.02") == ICSIM_OK);
    REQUIRE(icsim_experiment_set(e, "trials", "2") == ICSIM_OK);
    REQUIRE(icsim_experiment_set(e, "adversary", "burst") == ICSIM_OK);

    size_t needed = 0;
    char small[4];
    CHECK(icsim_experiment_params_json(e, 0, small, sizeof small, &needed) == ICSIM_ERR_RANGE);
    REQUIRE(needed > sizeof small);
    std::string buf(needed, '\0');
    CHECK(icsim_experiment_params_json(e, 0, buf.data(), buf.size(), &needed) == ICSIM_OK);
    CHECK(buf.front() == '{');
    CHECK(icsim_experiment_params_json(e, 5, buf.data(), buf.size(), &needed) == ICSIM_ERR_RANGE);

    fs::path dir = fs::temp_directory_path() / "icsim_capi_test";
    fs::create_directories(dir);
    std::string ch = (dir / "ch.csv").string();
    icsim_trial t;
    CHECK(icsim_run_trial(e, 0, 9, ch.c_str(), nullptr, &t) == ICSIM_OK);
    CHECK(t.seed == 9);
    CHECK(fs::file_size(ch) > 0);
    CHECK(icsim_run_trial(e, 2, 9, nullptr, nullptr, &t) == ICSIM_ERR_RANGE);
    CHECK(icsim_run_trial(e, 0, 9, "/nonexistent/dir/x.csv", nullptr, &t) == ICSIM_ERR_IO);

    icsim_result* r = nullptr;
    REQUIRE(icsim_sweep(e, &r) == ICSIM_OK);
    CHECK(icsim_result_rows(r) == 2);
    icsim_rate_row row;
    CHECK(icsim_result_row(r, 1, &row) == ICSIM_OK);
    CHECK(std::string(row.scheme) == "a3");
    CHECK(std::string(row.adversary) == "burst");
    CHECK(row.trials == 2);
    CHECK(icsim_result_row(r, 2, &row) == ICSIM_ERR_RANGE);
    CHECK(icsim_result_trials(r, 0) == 2);
    CHECK(icsim_result_trial(r, 0, 1, &t) == ICSIM_OK);
    CHECK(icsim_result_trial(r, 0, 2, &t) == ICSIM_ERR_RANGE);
    std::string csv = (dir / "rates.csv").string();
    CHECK(icsim_result_write_csv(r, csv.c_str()) == ICSIM_OK);
    CHECK(fs::file_size(csv) > 0);
    icsim_result_destroy(r);

    std::string st = (dir / "stress.csv").string();
    CHECK(icsim_stress(e, "a1,a3", "none", st.c_str()) == ICSIM_OK);
    CHECK(icsim_stress(e, "a1,zz", "none", st.c_str()) == ICSIM_ERR_INVALID_ARG);
    icsim_experiment_destroy(e);
    fs::remove_all(dir);
}
