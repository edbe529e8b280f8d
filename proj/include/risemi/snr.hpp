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

#ifndef RISEMI_SNR_H
#define RISEMI_SNR_H

#include "risemi/channels.hpp"
#include "risemi/correlation.hpp"
#include "risemi/geometry.hpp"

#include <string>

namespace risemi
{
    // RIS configuration Theta = diag(gamma_n exp(j phi_n)), phases wrapped to [0, 2 pi).
    struct PhaseConfig
    {
        arma::vec phases;
        arma::vec amplitudes;

        std::size_t size() const { return phases.n_elem; }

        // gamma_n exp(j phi_n)
        arma::cx_vec coefficients() const;

        // Unit-modulus phasors exp(j phi_n)
        arma::cx_vec phasors() const;

        static PhaseConfig from_phasors(const arma::cx_vec &phasors, const arma::vec &amplitudes);
    };

    double wrap_phase(double phase);

    enum class Strategy
    {
        noise_optimal,
        emi_aware,
        custom
    };

    const char *to_string(Strategy s);

    struct SnrResult
    {
        double snr_linear = 0.0;
        double snr_db = 0.0;
        double emi_term = 0.0;    // A sigma^2 g2^H R g2 / sigma_w^2
        double signal_term = 0.0; // P |g2^H h1 + h_d|^2
        Strategy strategy = Strategy::custom;
    };

    // g2 = Theta h2
    arma::cx_vec effective_channel(const PhaseConfig &config, const arma::cx_vec &h2);

    // P |g2^H h1 + h_d|^2 / (A sigma^2 g2^H R g2 + sigma_w^2)
    SnrResult snr_with_emi(const LinkScenario &scenario, const PhaseConfig &config, const ChannelDraw &draw,
                           const CorrelationMatrix &r, Strategy strategy = Strategy::custom);

    // Same ratio from precomputed |g2^H h1 + h_d|^2 and g2^H R g2. Throws DegenerateError on 0/0-type denominators.
    SnrResult snr_from_terms(const LinkScenario &scenario, double coherent_gain, double emi_quadratic,
                             Strategy strategy = Strategy::custom);

    // phi_n = arg(h1n h2n^*) - arg(h_d), arg(0) := 0
    PhaseConfig noise_optimal_phases(const ChannelDraw &draw, const arma::vec &amplitudes);

    // (P / sigma_w^2) (sum_n gamma_n |h1n h2n| + |h_d|)^2
    double snr_no_emi(const LinkScenario &scenario, const ChannelDraw &draw, const arma::vec &amplitudes);

    // P |h_d|^2 / sigma_w^2
    double snr_no_ris(const LinkScenario &scenario, cx h_d);

    // Limit of SNRbar / N^2: (P / sigma_w^2) beta1 beta2 (pi A / 4)^2
    double prop1_limit(const LinkScenario &scenario, const RisGeometry &geometry);

    // Limit of SNR / N: (rho / alpha) (pi / 4)^2. Requires alpha > 0.
    double prop2_limit(const LinkScenario &scenario, double alpha);

    struct AlphaEstimate
    {
        double alpha = 0.0;
        double imag_residual = 0.0;
    };

    // (1/N) tr(Rbar R), real part; the imaginary part is kept as a diagnostic.
    AlphaEstimate estimate_alpha(const CorrelationMatrix &r, const EffectiveCorrelationEstimate &rbar);

} // namespace risemi

#endif
