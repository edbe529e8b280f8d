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

#include "risemi/experiments.hpp"

#include <json.hpp>

#include <sstream>

using namespace risemi;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace
{
    const char *small_doc = R"({
        "name": "small",
        "N_sweep": [4, 16],
        "n_trials": 40,
        "master_seed": 5,
        "emi_density": {"kind": "gaussian", "mean_azimuth_deg": -45, "mean_elevation_deg": 0,
                        "std_azimuth_deg": 45, "std_elevation_deg": 45},
        "cases": [
            {"label": "quiet", "rho_db": null, "beta_d_db": -90, "strategies": ["no-emi", "no-ris"]},
            {"label": "loud", "rho_db": 15,
             "strategies": ["no-emi", "noise-optimal-with-emi", "emi-aware", "relaxed-bound"]}
        ]
    })";

    std::string csv_of(const RunResult &r)
    {
        std::ostringstream os;
        write_csv(r.rows, os);
        return os.str();
    }

    const SweepRow &row(const RunResult &r, const std::string &strategy, std::size_t n)
    {
        for (const auto &x : r.rows)
            if (x.strategy == strategy && x.n == n)
                return x;
        FAIL("missing row " << strategy << " N=" << n);
        throw std::logic_error("unreachable");
    }

    std::vector<std::string> split(const std::string &line)
    {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            out.push_back(cell);
        return out;
    }
} // namespace

TEST_CASE("sweep rows", "[experiments]")
{
    const ScenarioSpec spec = parse_scenario(small_doc);
    const RunResult r = run_scenario(spec);
    CHECK(r.errors.empty());
    REQUIRE(r.rows.size() == 2 * 2 + 4 * 2);

    // sorted by case, then strategy as listed, then N
    CHECK(r.rows[0].strategy == "no-emi@quiet");
    CHECK(r.rows[0].n == 4);
    CHECK(r.rows[1].n == 16);
    CHECK(r.rows[2].strategy == "no-ris@quiet");
    CHECK(r.rows[4].strategy == "no-emi@loud");

    for (const auto &x : r.rows)
    {
        INFO(x.strategy << " N=" << x.n);
        CHECK(x.scenario == "small");
        CHECK_FALSE(x.error);
        CHECK(x.n_trials == 40);
        CHECK(x.seed == 5);
        CHECK(x.walltime_s == 0.0);
        CHECK(x.mean_linear > 0.0);
        CHECK(x.stderr_linear >= 0.0);
        CHECK_THAT(x.mean_db, WithinRel(10.0 * std::log10(x.mean_linear), 1e-12));
    }
    for (std::size_t n : {4u, 16u})
    {
        const double no_emi = row(r, "no-emi@loud", n).mean_linear;
        const double noise_opt = row(r, "noise-optimal-with-emi@loud", n).mean_linear;
        const double aware = row(r, "emi-aware@loud", n).mean_linear;
        const double bound = row(r, "relaxed-bound@loud", n).mean_linear;
        CHECK(noise_opt < no_emi);
        CHECK(aware >= noise_opt);
        CHECK(bound >= aware);
        // a -90 dB direct path dominates a few elements
        CHECK(row(r, "no-emi@quiet", n).mean_linear > no_emi);
        CHECK(row(r, "no-ris@quiet", n).mean_linear < row(r, "no-emi@quiet", n).mean_linear);
    }
}

TEST_CASE("CSV schema", "[experiments]")
{
    const RunResult r = run_scenario(parse_scenario(small_doc), RunOptions{std::nullopt, 8, 1, false});
    std::istringstream is(csv_of(r));
    std::string line;
    std::getline(is, line);
    CHECK(line == csv_header);
    std::size_t count = 0;
    while (std::getline(is, line))
    {
        const auto cells = split(line);
        REQUIRE(cells.size() == 9);
        CHECK(cells[0] == "small");
        CHECK(std::stod(cells[3]) > 0.0);
        CHECK(cells[6] == "8");
        CHECK(cells[7] == "5");
        ++count;
    }
    CHECK(count == r.rows.size());

    // full precision: parsing a cell gives back the double
    std::istringstream again(csv_of(r));
    std::getline(again, line);
    std::getline(again, line);
    CHECK(std::stod(split(line)[3]) == r.rows[0].mean_linear);
}

TEST_CASE("runs are reproducible", "[experiments][property]")
{
    const ScenarioSpec spec = parse_scenario(small_doc);
    RunOptions one;
    one.trials = 150; // spans several trial blocks
    RunOptions three = one;
    three.threads = 3;
    const std::string a = csv_of(run_scenario(spec, one));
    const std::string b = csv_of(run_scenario(spec, one));
    const std::string c = csv_of(run_scenario(spec, three));
    CHECK(a == b);
    CHECK(a == c);

    RunOptions other = one;
    other.seed = 6;
    CHECK(csv_of(run_scenario(spec, other)) != a);

    // trial t uses the same draw whatever the total count
    RunOptions fewer = one;
    fewer.trials = 1;
    RunOptions more = one;
    more.trials = 2;
    const RunResult r1 = run_scenario(spec, fewer);
    const RunResult r2 = run_scenario(spec, more);
    CHECK(r1.rows[0].mean_linear != r2.rows[0].mean_linear);
    CHECK(r1.rows[0].stderr_linear == 0.0);
}

TEST_CASE("walltime is recorded only on request", "[experiments]")
{
    RunOptions o;
    o.trials = 4;
    o.record_walltime = true;
    const RunResult r = run_scenario(parse_scenario(small_doc), o);
    bool any = false;
    for (const auto &x : r.rows)
        any = any || x.walltime_s > 0.0;
    CHECK(any);
}

TEST_CASE("meta document", "[experiments]")
{
    RunOptions o;
    o.trials = 5;
    o.seed = 9;
    const RunResult r = run_scenario(parse_scenario(small_doc), o);
    const auto meta = nlohmann::json::parse(r.meta_json);
    for (const char *k : {"scenario", "version", "spec", "run", "csv_header", "asymptotes", "diagnostics", "warnings",
                          "errors", "timings", "total_seconds"})
        CHECK(meta.contains(k));
    CHECK(meta["scenario"] == "small");
    CHECK(meta["csv_header"] == csv_header);
    CHECK(meta["spec"]["master_seed"] == 9);
    CHECK(meta["spec"]["n_trials"] == 5);
    // the recorded spec reproduces the run
    const ScenarioSpec again = parse_scenario(meta["spec"].dump());
    CHECK(csv_of(run_scenario(again)) == csv_of(r));
    CHECK(meta["warnings"].is_array());
    CHECK(meta["diagnostics"].size() == 4);
}

TEST_CASE("asymptote rows", "[experiments]")
{
    const ScenarioSpec spec = parse_scenario(R"({
        "name": "limits",
        "N_sweep": [16],
        "n_trials": 20,
        "rho_db": 20,
        "normalize": "N",
        "rbar_min_trials": 50,
        "strategies": ["noise-optimal-with-emi", "prop2-limit"]
    })");
    const RunResult r = run_scenario(spec);
    REQUIRE(r.rows.size() == 2);
    const SweepRow &lim = row(r, "prop2-limit", 16);
    CHECK(lim.n_trials == 160); // max(rbar_min_trials, 10 N)
    CHECK(lim.stderr_linear == 0.0);
    CHECK(lim.mean_linear > 0.0);
    const auto meta = nlohmann::json::parse(r.meta_json);
    CHECK(meta["asymptotes"].size() == 1);

    const ScenarioSpec p1 = parse_scenario(R"({
        "name": "p1",
        "N_sweep": [4, 16],
        "n_trials": 2,
        "normalize": "N2",
        "strategies": ["prop1-limit"]
    })");
    const RunResult q = run_scenario(p1);
    REQUIRE(q.rows.size() == 2);
    // normalized by N^2 the limit is flat in N
    CHECK(q.rows[0].mean_linear == q.rows[1].mean_linear);
    CHECK_THAT(q.rows[0].mean_linear, WithinRel(std::pow(10.0, -1.3) * pi * pi / 16.0, 1e-12));
}

TEST_CASE("normalization and dB averaging", "[experiments]")
{
    const std::string base = R"({"name": "avg", "N_sweep": [16], "n_trials": 60, "rho_db": 10,
                                 "strategies": ["noise-optimal-with-emi"])";
    const RunResult lin = run_scenario(parse_scenario(base + "}"));
    const RunResult per_n = run_scenario(parse_scenario(base + R"(, "normalize": "N"})"));
    const RunResult db = run_scenario(parse_scenario(base + R"(, "average": "db"})"));
    CHECK_THAT(per_n.rows[0].mean_linear, WithinRel(lin.rows[0].mean_linear / 16.0, 1e-12));
    CHECK_THAT(per_n.rows[0].stderr_linear, WithinRel(lin.rows[0].stderr_linear / 16.0, 1e-12));
    // mean of dB is below dB of the mean
    CHECK(db.rows[0].mean_db < lin.rows[0].mean_db);
    CHECK_THAT(db.rows[0].mean_linear, WithinRel(std::pow(10.0, db.rows[0].mean_db / 10.0), 1e-12));
    CHECK(db.rows[0].stderr_linear > 0.0);
}

TEST_CASE("failures become flagged rows", "[experiments]")
{
    // far too few quadrature nodes: the correlation matrix fails its self-convergence check
    const ScenarioSpec spec = parse_scenario(R"({
        "name": "coarse",
        "N_sweep": [4, 64],
        "n_trials": 3,
        "rho_db": 20,
        "quadrature_nodes": 4,
        "emi_density": {"kind": "gaussian", "mean_azimuth_deg": 0, "mean_elevation_deg": 0,
                        "std_azimuth_deg": 10, "std_elevation_deg": 10},
        "strategies": ["no-emi", "noise-optimal-with-emi"]
    })");
    const RunResult r = run_scenario(spec);
    REQUIRE_FALSE(r.errors.empty());
    CHECK_THAT(r.errors[0], ContainsSubstring("self-convergence"));
    const SweepRow &bad = row(r, "noise-optimal-with-emi", 64);
    CHECK(bad.error);
    CHECK(std::isnan(bad.mean_linear));
    CHECK(std::isnan(bad.mean_db));
    CHECK(csv_of(r).find("nan") != std::string::npos);
    const auto meta = nlohmann::json::parse(r.meta_json);
    CHECK_FALSE(meta["errors"].empty());
}

TEST_CASE("run options are validated", "[experiments]")
{
    RunOptions o;
    o.trials = 0;
    CHECK_THROWS_AS(run_scenario(parse_scenario(small_doc), o), ConfigError);
}
