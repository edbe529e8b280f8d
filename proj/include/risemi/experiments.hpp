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

#ifndef RISEMI_EXPERIMENTS_H
#define RISEMI_EXPERIMENTS_H

#include "risemi/channels.hpp"
#include "risemi/optimizer.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace risemi
{
    inline constexpr std::size_t max_elements = 4096;

    // Angular density description in radians (the JSON form uses degrees).
    struct DensitySpec
    {
        DensityKind kind = DensityKind::isotropic;
        double mean_azimuth = 0.0;
        double mean_elevation = 0.0;
        double std_azimuth = 0.0;
        double std_elevation = 0.0;

        void validate(const std::string &where) const;
    };

    enum class StrategyKind
    {
        no_emi,
        noise_optimal,
        no_ris,
        emi_aware,
        relaxed_bound,
        prop1_limit,
        prop2_limit
    };

    const char *to_string(StrategyKind s);
    StrategyKind strategy_from_string(const std::string &name); // throws ConfigError

    enum class Normalization
    {
        none,
        per_n,
        per_n2
    };

    const char *to_string(Normalization n);

    // Mean of linear SNR (default), or mean of per-trial dB values converted back.
    enum class Averaging
    {
        linear,
        db
    };

    const char *to_string(Averaging a);

    // One set of link parameters inside a scenario; its rows are labelled "strategy@label".
    struct CaseSpec
    {
        std::string label;
        std::optional<double> rho_db;    // nullopt: no EMI
        std::optional<double> beta_d_db; // nullopt: no direct path
        DensitySpec emi_density;
        std::vector<StrategyKind> strategies;
    };

    struct ScenarioSpec
    {
        std::string name;
        std::string description;
        std::vector<std::size_t> n_sweep;
        std::size_t n_trials = 1000;
        std::uint64_t master_seed = 1;
        double wavelength = 0.1;
        double element_area = 6.25e-4;
        double tx_power_dbm = 23.0;
        double noise_power_dbm = -114.0;
        double a_beta1_db = -80.0;
        double a_beta2_db = -70.0;
        double gamma = 1.0;
        DensitySpec h1_density;
        DensitySpec h2_density;
        std::vector<CaseSpec> cases;
        Normalization normalize = Normalization::none;
        Averaging average = Averaging::linear;
        std::size_t quadrature_nodes = 96;
        OptimizerOptions optimizer;
        std::size_t rbar_min_trials = 1000; // Rbar estimate uses max(rbar_min_trials, 10 N) draws

        // Throws ConfigError naming the offending field.
        void validate() const;

        LinkParameters link_parameters(const CaseSpec &c) const;
    };

    // JSON round trip. Angles are in degrees, powers in dB / dBm.
    ScenarioSpec parse_scenario(const std::string &json_text);
    ScenarioSpec load_scenario_file(const std::string &path);
    std::string scenario_to_json(const ScenarioSpec &spec, int indent = 2);

    // Built-in scenarios: fig2 .. fig6 and prop1.
    std::vector<std::string> builtin_scenario_names();
    std::string builtin_scenario_summary(const std::string &name);
    ScenarioSpec builtin_scenario(const std::string &name); // throws ConfigError for unknown names

    // Name of a built-in, or a path to a JSON document.
    ScenarioSpec resolve_scenario(const std::string &name_or_path);

    struct SweepRow
    {
        std::string scenario;
        std::string strategy; // "strategy" or "strategy@label"
        std::size_t n = 0;
        double mean_linear = 0.0;
        double mean_db = 0.0;
        double stderr_linear = 0.0;
        std::size_t n_trials = 0;
        std::uint64_t seed = 0;
        double walltime_s = 0.0;
        bool error = false;
    };

    struct RunOptions
    {
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> trials;
        std::size_t threads = 1;
        bool record_walltime = false; // otherwise walltime_s is written as 0 so that CSVs are reproducible
    };

    struct RunResult
    {
        ScenarioSpec spec; // after applying RunOptions
        std::vector<SweepRow> rows;
        std::vector<std::string> warnings;
        std::vector<std::string> errors;
        std::string meta_json; // resolved spec, version, asymptotes, diagnostics
    };

    RunResult run_scenario(const ScenarioSpec &spec, const RunOptions &options = {});

    inline constexpr const char *csv_header =
        "scenario,strategy,N,mean_snr_linear,mean_snr_db,stderr_linear,n_trials,seed,walltime_s";

    void write_csv(const std::vector<SweepRow> &rows, std::ostream &os);

    // Validation suite

    struct CheckResult
    {
        std::string name;
        bool passed = false;
        bool underpowered = false;
        double measured = 0.0;
        double threshold = 0.0;
        std::string detail;
    };

    struct ValidationOptions
    {
        bool quick = false;
        std::size_t threads = 1;
        // Closed form used by the quadrature-vs-sinc check; defaults to sinc_correlation.
        std::function<CorrelationMatrix(const RisGeometry &)> closed_form;
    };

    std::vector<CheckResult> run_validation(const ValidationOptions &options = {});

    std::string format_check(const CheckResult &c);

} // namespace risemi

#endif
