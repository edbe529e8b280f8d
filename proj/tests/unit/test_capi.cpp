// SPDX-License-Identifier: Apache-2.0
//
// risemi - simulation of electromagnetic interference in RIS-aided links
// Copyright (C) 2026 The risemi developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include "risemi/risemi.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace
{
    const char *doc = R"({"name": "capi", "N_sweep": [4, 9], "n_trials": 12, "rho_db": 20,
                          "strategies": ["no-emi", "noise-optimal-with-emi"]})";

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
} // namespace

TEST_CASE("library identity", "[capi]")
{
    CHECK(std::string(risemi_version()).find('.') != std::string::npos);
    CHECK(std::string(risemi_status_string(RISEMI_OK)) != std::string(risemi_status_string(RISEMI_ERR_CONFIG)));
    REQUIRE(risemi_builtin_count() >= 6);
    for (size_t i = 0; i < risemi_builtin_count(); ++i)
    {
        CHECK(risemi_builtin_name(i) != nullptr);
        CHECK(risemi_builtin_summary(i) != nullptr);
    }
    CHECK(risemi_builtin_name(risemi_builtin_count()) == nullptr);
}

TEST_CASE("scenario handles", "[capi]")
{
    risemi_scenario *s = nullptr;
    REQUIRE(risemi_scenario_load("fig2", &s) == RISEMI_OK);
    CHECK(std::string(risemi_scenario_name(s)) == "fig2");
    const std::string json = risemi_scenario_json(s);
    risemi_scenario_free(s);

    risemi_scenario *again = nullptr;
    REQUIRE(risemi_scenario_parse(json.c_str(), &again) == RISEMI_OK);
    CHECK(std::string(risemi_scenario_json(again)) == json);
    risemi_scenario_free(again);

    risemi_scenario *bad = nullptr;
    CHECK(risemi_scenario_parse("{\"name\": 3}", &bad) == RISEMI_ERR_CONFIG);
    CHECK(bad == nullptr);
    CHECK(std::string(risemi_last_error()).find("name") != std::string::npos);
    CHECK(risemi_scenario_load("nowhere/at/all.json", &bad) == RISEMI_ERR_CONFIG);
    CHECK(risemi_scenario_load(nullptr, &bad) == RISEMI_ERR_INVALID_ARGUMENT);
    CHECK(risemi_scenario_parse(doc, nullptr) == RISEMI_ERR_INVALID_ARGUMENT);
    risemi_scenario_free(nullptr);
}

TEST_CASE("running through the C interface", "[capi]")
{
    risemi_scenario *s = nullptr;
    REQUIRE(risemi_scenario_parse(doc, &s) == RISEMI_OK);
    risemi_run_options o;
    risemi_run_options_init(&o);
    CHECK(o.has_seed == 0);
    CHECK(o.has_trials == 0);
    o.has_seed = 1;
    o.seed = 42;

    risemi_result *r = nullptr;
    REQUIRE(risemi_run(s, &o, &r) == RISEMI_OK);
    REQUIRE(risemi_result_row_count(r) == 4);
    risemi_row row;
    REQUIRE(risemi_result_row(r, 0, &row) == RISEMI_OK);
    CHECK(std::string(row.scenario) == "capi");
    CHECK(std::string(row.strategy) == "no-emi");
    CHECK(row.n == 4);
    CHECK(row.seed == 42);
    CHECK(row.n_trials == 12);
    CHECK(row.error == 0);
    CHECK(std::abs(row.mean_snr_db - 10.0 * std::log10(row.mean_snr_linear)) < 1e-9);
    CHECK(risemi_result_row(r, 4, &row) == RISEMI_ERR_INVALID_ARGUMENT);
    CHECK(risemi_result_error_count(r) == 0);
    CHECK(risemi_result_error(r, 0) == nullptr);

    const std::string csv = risemi_result_csv(r);
    CHECK(csv.rfind("scenario,strategy,N,mean_snr_linear,mean_snr_db,stderr_linear,n_trials,seed,walltime_s\n", 0) == 0);
    CHECK(std::string(risemi_result_meta_json(r)).find("\"asymptotes\"") != std::string::npos);

    const auto dir = std::filesystem::temp_directory_path() / "risemi_capi_test";
    std::filesystem::create_directories(dir);
    REQUIRE(risemi_result_write_csv(r, (dir / "out.csv").string().c_str()) == RISEMI_OK);
    REQUIRE(risemi_result_write_meta(r, (dir / "out.meta.json").string().c_str()) == RISEMI_OK);
    CHECK(slurp(dir / "out.csv") == csv);
    CHECK(risemi_result_write_csv(r, (dir / "missing" / "x.csv").string().c_str()) == RISEMI_ERR_IO);
    std::filesystem::remove_all(dir);

    // default options are reproducible
    risemi_result *a = nullptr, *b = nullptr;
    REQUIRE(risemi_run(s, nullptr, &a) == RISEMI_OK);
    o.has_seed = 0;
    o.threads = 2;
    REQUIRE(risemi_run(s, &o, &b) == RISEMI_OK);
    CHECK(std::string(risemi_result_csv(a)) == risemi_result_csv(b));

    risemi_result_free(a);
    risemi_result_free(b);
    risemi_result_free(r);
    risemi_scenario_free(s);
    risemi_result_free(nullptr);
}

TEST_CASE("geometry and correlation handles", "[capi]")
{
    risemi_geometry *g = nullptr;
    REQUIRE(risemi_geometry_create(4, 1.0, 0.1, &g) == RISEMI_OK);
    CHECK(risemi_geometry_size(g) == 4);
    double xyz[3];
    REQUIRE(risemi_geometry_position(g, 1, xyz) == RISEMI_OK);
    CHECK(xyz[0] == 0.5);
    CHECK(xyz[1] == 0.5);
    CHECK(xyz[2] == 0.0);
    CHECK(risemi_geometry_position(g, 4, xyz) == RISEMI_ERR_INVALID_ARGUMENT);
    risemi_geometry_free(g);

    risemi_geometry *bad = nullptr;
    CHECK(risemi_geometry_create(5, 1.0, 0.1, &bad) == RISEMI_ERR_INVALID_ARGUMENT);
    CHECK(bad == nullptr);

    REQUIRE(risemi_geometry_create(16, 6.25e-4, 0.1, &g) == RISEMI_OK);
    risemi_correlation *s = nullptr, *q = nullptr;
    REQUIRE(risemi_correlation_sinc(g, &s) == RISEMI_OK);
    REQUIRE(risemi_correlation_quadrature(g, 0, 0, 0, 0, 0, 96, &q) == RISEMI_OK);
    CHECK(risemi_correlation_dim(s) == 16);
    CHECK(std::string(risemi_correlation_warning(q)).empty());
    double worst = 0.0;
    for (uint64_t i = 0; i < 16; ++i)
        for (uint64_t j = 0; j < 16; ++j)
        {
            double a_re, a_im, b_re, b_im;
            REQUIRE(risemi_correlation_entry(s, i, j, &a_re, &a_im) == RISEMI_OK);
            REQUIRE(risemi_correlation_entry(q, i, j, &b_re, &b_im) == RISEMI_OK);
            worst = std::max(worst, std::hypot(a_re - b_re, a_im - b_im));
        }
    CHECK(worst <= 1e-6);
    double re, im;
    CHECK(risemi_correlation_entry(s, 16, 0, &re, &im) == RISEMI_ERR_INVALID_ARGUMENT);

    risemi_correlation *gq = nullptr;
    CHECK(risemi_correlation_quadrature(g, 1, 0, 0, -1.0, 0.1, 96, &gq) == RISEMI_ERR_INVALID_ARGUMENT);
    REQUIRE(risemi_correlation_quadrature(g, 1, -0.5, 0, 0.5, 0.5, 96, &gq) == RISEMI_OK);
    const auto path = std::filesystem::temp_directory_path() / "risemi_capi_corr.csv";
    REQUIRE(risemi_correlation_write_csv(gq, path.string().c_str()) == RISEMI_OK);
    CHECK(slurp(path).find("row,col,re,im") != std::string::npos);
    std::filesystem::remove(path);

    risemi_correlation_free(gq);
    risemi_correlation_free(s);
    risemi_correlation_free(q);
    risemi_geometry_free(g);
}

TEST_CASE("null handles are rejected", "[capi]")
{
    risemi_result *r = nullptr;
    CHECK(risemi_run(nullptr, nullptr, &r) == RISEMI_ERR_INVALID_ARGUMENT);
    CHECK(risemi_result_row_count(nullptr) == 0);
    CHECK(risemi_validate(1, 1, nullptr) == RISEMI_ERR_INVALID_ARGUMENT);
    CHECK(risemi_validation_count(nullptr) == 0);
    CHECK(risemi_validation_line(nullptr, 0) == nullptr);
    CHECK(risemi_validation_all_passed(nullptr) == 0);
    CHECK(risemi_correlation_sinc(nullptr, nullptr) == RISEMI_ERR_INVALID_ARGUMENT);
    CHECK(risemi_geometry_size(nullptr) == 0);
}
