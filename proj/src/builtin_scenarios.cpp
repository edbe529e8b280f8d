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

#include "risemi/experiments.hpp"


namespace risemi
{
    namespace
    {
        struct Builtin
        {
            const char *name;
            const char *summary;
            const char *json;
        };

        // Channel densities of the non-isotropic setup: h1 around (0, 45 deg), h2 around (45 deg, 0), both 20 deg wide.
#define RISEMI_NONISO_CHANNELS                                                                                  \
    R"("h1_density": {"kind": "gaussian", "mean_azimuth_deg": 0, "mean_elevation_deg": 45, "std_azimuth_deg": 20, "std_elevation_deg": 20},)" \
    R"("h2_density": {"kind": "gaussian", "mean_azimuth_deg": 45, "mean_elevation_deg": 0, "std_azimuth_deg": 20, "std_elevation_deg": 20},)"

        const Builtin builtins[] = {
            {"fig2", "SNR vs N without direct path, isotropic EMI at rho = 30, 20, 10 dB and without EMI",
             R"({
  "name": "fig2",
  "N_sweep": [16, 64, 256, 1024],
  "n_trials": 1000,
  "beta_d_db": null,
  "cases": [
    {"label": "reference", "rho_db": null, "strategies": ["no-emi"]},
    {"label": "rho30", "rho_db": 30, "strategies": ["noise-optimal-with-emi"]},
    {"label": "rho20", "rho_db": 20, "strategies": ["noise-optimal-with-emi"]},
    {"label": "rho10", "rho_db": 10, "strategies": ["noise-optimal-with-emi"]}
  ]
})"},
            {"fig3", "SNR vs N with direct path beta_d = -100, -80 dB at rho = 20 dB, with and without RIS",
             R"({
  "name": "fig3",
  "N_sweep": [16, 64, 256, 1024],
  "n_trials": 1000,
  "rho_db": 20,
  "strategies": ["no-emi", "noise-optimal-with-emi", "no-ris"],
  "cases": [
    {"label": "bd-100", "beta_d_db": -100},
    {"label": "bd-80", "beta_d_db": -80}
  ]
})"},
            {"fig4", "SNR / N under isotropic scattering at rho = 20 dB with its asymptote, with and without direct path",
             R"({
  "name": "fig4",
  "N_sweep": [16, 64, 256, 1024],
  "n_trials": 1000,
  "rho_db": 20,
  "normalize": "N",
  "strategies": ["noise-optimal-with-emi", "prop2-limit"],
  "cases": [
    {"label": "bd-inf", "beta_d_db": null},
    {"label": "bd-100", "beta_d_db": -100}
  ]
})"},
            {"fig5", "SNR vs N with Gaussian EMI of spread 90, 45, 22.5 deg, isotropic EMI and no EMI",
             R"({
  "name": "fig5",
  "N_sweep": [16, 64, 256, 1024],
  "n_trials": 1000,
  "rho_db": 20,
  "beta_d_db": null,
  )" RISEMI_NONISO_CHANNELS R"(
  "strategies": ["noise-optimal-with-emi"],
  "cases": [
    {"label": "reference", "rho_db": null, "strategies": ["no-emi"]},
    {"label": "sigma90", "emi_density": {"kind": "gaussian", "mean_azimuth_deg": -45, "mean_elevation_deg": 0, "std_azimuth_deg": 90, "std_elevation_deg": 90}},
    {"label": "sigma45", "emi_density": {"kind": "gaussian", "mean_azimuth_deg": -45, "mean_elevation_deg": 0, "std_azimuth_deg": 45, "std_elevation_deg": 45}},
    {"label": "sigma22.5", "emi_density": {"kind": "gaussian", "mean_azimuth_deg": -45, "mean_elevation_deg": 0, "std_azimuth_deg": 22.5, "std_elevation_deg": 22.5}},
    {"label": "isotropic", "emi_density": {"kind": "isotropic"}}
  ]
})"},
            {"fig6", "EMI-aware configuration vs thermal-noise-optimal phases and the relaxed upper bound, rho = 15 dB",
             R"({
  "name": "fig6",
  "N_sweep": [16, 64, 256, 1024],
  "n_trials": 1000,
  "rho_db": 15,
  "beta_d_db": null,
  )" RISEMI_NONISO_CHANNELS R"(
  "emi_density": {"kind": "gaussian", "mean_azimuth_deg": -45, "mean_elevation_deg": 0, "std_azimuth_deg": 45, "std_elevation_deg": 45},
  "strategies": ["no-emi", "noise-optimal-with-emi", "emi-aware", "relaxed-bound"]
})"},
            {"prop1", "SNR / N^2 without EMI under isotropic scattering and its limit",
             R"({
  "name": "prop1",
  "N_sweep": [16, 64, 256, 1024],
  "n_trials": 200,
  "rho_db": null,
  "beta_d_db": null,
  "normalize": "N2",
  "strategies": ["no-emi", "prop1-limit"]
})"},
        };

#undef RISEMI_NONISO_CHANNELS

        const Builtin *find(const std::string &name)
        {
            for (const auto &b : builtins)
                if (name == b.name)
                    return &b;
            return nullptr;
        }
    } // namespace

    std::vector<std::string> builtin_scenario_names()
    {
        std::vector<std::string> out;
        for (const auto &b : builtins)
            out.emplace_back(b.name);
        return out;
    }

    std::string builtin_scenario_summary(const std::string &name)
    {
        const Builtin *b = find(name);
        if (!b)
            throw ConfigError("unknown built-in scenario '" + name + "'");
        return b->summary;
    }

    ScenarioSpec builtin_scenario(const std::string &name)
    {
        const Builtin *b = find(name);
        if (!b)
            throw ConfigError("unknown built-in scenario '" + name + "'");
        ScenarioSpec s = parse_scenario(b->json);
        s.description = b->summary;
        return s;
    }

} // namespace risemi
