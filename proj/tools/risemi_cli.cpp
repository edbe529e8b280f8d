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

// Command-line front end; talks to the engine only through the C API.

#include "risemi/risemi.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_failure = 1;
    constexpr int exit_config = 2;

    int status_exit(risemi_status s)
    {
        switch (s)
        {
        case RISEMI_OK:
            return exit_ok;
        case RISEMI_ERR_CONFIG:
        case RISEMI_ERR_INVALID_ARGUMENT:
        case RISEMI_ERR_IO:
            return exit_config;
        default:
            return exit_failure;
        }
    }

    int report(risemi_status s, const char *what)
    {
        std::cerr << "risemi: " << what << ": " << risemi_status_string(s) << ": " << risemi_last_error() << '\n';
        return status_exit(s);
    }

    struct RunArgs
    {
        std::string scenario;
        std::string out;
        uint64_t seed = 0;
        uint64_t trials = 0;
        uint32_t threads = 1;
        bool record_walltime = false;
    };

    int cmd_run(const RunArgs &a, bool has_seed, bool has_trials)
    {
        risemi_scenario *sc = nullptr;
        risemi_status s = risemi_scenario_load(a.scenario.c_str(), &sc);
        if (s != RISEMI_OK)
            return report(s, "loading scenario");

        std::error_code ec;
        std::filesystem::create_directories(a.out, ec);
        if (ec)
        {
            std::cerr << "risemi: cannot create output directory '" << a.out << "': " << ec.message() << '\n';
            risemi_scenario_free(sc);
            return exit_config;
        }

        risemi_run_options opt;
        risemi_run_options_init(&opt);
        opt.has_seed = has_seed;
        opt.seed = a.seed;
        opt.has_trials = has_trials;
        opt.trials = a.trials;
        opt.threads = a.threads;
        opt.record_walltime = a.record_walltime;

        risemi_result *res = nullptr;
        s = risemi_run(sc, &opt, &res);
        const std::string name = risemi_scenario_name(sc);
        risemi_scenario_free(sc);
        if (s != RISEMI_OK)
            return report(s, "running scenario");

        const std::filesystem::path dir(a.out);
        const std::string csv = (dir / (name + ".csv")).string();
        const std::string meta = (dir / (name + ".meta.json")).string();
        s = risemi_result_write_csv(res, csv.c_str());
        if (s == RISEMI_OK)
            s = risemi_result_write_meta(res, meta.c_str());
        if (s != RISEMI_OK)
        {
            risemi_result_free(res);
            return report(s, "writing results");
        }

        for (size_t i = 0; i < risemi_result_warning_count(res); ++i)
            std::cerr << "warning: " << risemi_result_warning(res, i) << '\n';
        for (size_t i = 0; i < risemi_result_error_count(res); ++i)
            std::cerr << "error: " << risemi_result_error(res, i) << '\n';
        std::cout << "wrote " << risemi_result_row_count(res) << " rows to " << csv << '\n'
                  << "wrote " << meta << '\n';
        risemi_result_free(res);
        return exit_ok;
    }

    int cmd_validate(bool quick, uint32_t threads)
    {
        risemi_validation *v = nullptr;
        const risemi_status s = risemi_validate(quick ? 1 : 0, threads, &v);
        if (s != RISEMI_OK)
            return report(s, "validation");
        for (size_t i = 0; i < risemi_validation_count(v); ++i)
            std::cout << risemi_validation_line(v, i) << '\n';
        const bool ok = risemi_validation_all_passed(v) != 0;
        std::cout << (ok ? "all checks passed" : "some checks failed") << '\n';
        risemi_validation_free(v);
        return ok ? exit_ok : exit_failure;
    }

    int cmd_list()
    {
        for (size_t i = 0; i < risemi_builtin_count(); ++i)
            std::printf("%-8s %s\n", risemi_builtin_name(i), risemi_builtin_summary(i));
        return exit_ok;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"risemi - Monte Carlo simulation of EMI in RIS-aided links"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(risemi_version()));

    RunArgs run;
    auto *run_cmd = app.add_subcommand("run", "Run a scenario and write <out>/<name>.csv and <out>/<name>.meta.json");
    run_cmd->add_option("--scenario", run.scenario, "Built-in scenario name or path to a JSON scenario")->required();
    run_cmd->add_option("--out", run.out, "Output directory")->required();
    auto *seed_opt = run_cmd->add_option("--seed", run.seed, "Master seed (overrides the scenario)");
    auto *trials_opt = run_cmd->add_option("--trials", run.trials, "Trials per point (overrides the scenario)")
                           ->check(CLI::PositiveNumber);
    run_cmd->add_option("--threads", run.threads, "Worker threads")->check(CLI::PositiveNumber);
    run_cmd->add_flag("--record-walltime", run.record_walltime,
                      "Fill walltime_s in the CSV (the file is then not byte-reproducible)");

    bool quick = false;
    uint32_t vthreads = 1;
    auto *val_cmd = app.add_subcommand("validate", "Run the oracle checks; exit 1 if any fails");
    val_cmd->add_flag("--quick", quick, "Reduced sample sizes (results flagged as underpowered)");
    val_cmd->add_option("--threads", vthreads, "Worker threads")->check(CLI::PositiveNumber);

    auto *list_cmd = app.add_subcommand("list-scenarios", "List built-in scenarios");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config;
    }

    if (run_cmd->parsed())
        return cmd_run(run, seed_opt->count() > 0, trials_opt->count() > 0);
    if (val_cmd->parsed())
        return cmd_validate(quick, vthreads);
    if (list_cmd->parsed())
        return cmd_list();
    return exit_config;
}
