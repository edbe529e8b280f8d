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

#include "risemi/channels.hpp"
#include "risemi/correlation.hpp"
#include "risemi/snr.hpp"

namespace risemi
{
    EffectiveCorrelationEstimate estimate_effective_correlation(const LinkScenario &scenario, const RisGeometry &geometry,
                                                                const CorrelationMatrix &r1, const CorrelationMatrix &r2,
                                                                std::size_t n_trials, std::uint64_t seed)
    {
        const std::size_t n = geometry.n_elements;
        if (r1.dim() != n || r2.dim() != n)
            throw std::invalid_argument("Channel correlation matrices do not match the geometry.");
        if (n_trials == 0)
            throw std::invalid_argument("Need at least one trial to estimate Rbar.");
        const double scale = scenario.element_area * scenario.beta2;
        if (!(scale > 0.0))
            throw DegenerateError("Rbar is undefined when A beta2 = 0.");

        const arma::vec gamma = scenario.amplitudes_for(n);
        const arma::cx_mat &f1 = r1.sqrt_factor();
        const arma::cx_mat &f2 = r2.sqrt_factor();

        constexpr std::size_t block = 256;
        arma::cx_mat acc(n, n, arma::fill::zeros);
        for (std::size_t first = 0; first < n_trials; first += block)
        {
            const std::size_t count = std::min(block, n_trials - first);
            const ChannelBatch batch = draw_channel_batch(scenario, f1, f2, seed, first, count);
            arma::cx_mat g(n, count);
            for (std::size_t k = 0; k < count; ++k)
            {
                const ChannelDraw d = batch.trial(k, seed);
                g.col(k) = effective_channel(noise_optimal_phases(d, gamma), d.h2);
            }
            acc += g * g.t();
        }

        EffectiveCorrelationEstimate est;
        est.entries = (acc + acc.t()) / (2.0 * scale * static_cast<double>(n_trials));
        est.n_samples = n_trials;
        est.trace_over_n = std::real(arma::trace(est.entries)) / static_cast<double>(n);
        return est;
    }

} // namespace risemi
