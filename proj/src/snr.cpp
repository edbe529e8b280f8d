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

#include "risemi/snr.hpp"

#include <cmath>
#include <limits>

namespace risemi
{
    double wrap_phase(double phase)
    {
        double p = std::fmod(phase, 2.0 * pi);
        if (p < 0.0)
            p += 2.0 * pi;
        if (p >= 2.0 * pi)
            p = 0.0;
        return p;
    }

    arma::cx_vec PhaseConfig::coefficients() const
    {
        if (amplitudes.n_elem != phases.n_elem)
            throw std::invalid_argument("Phase and amplitude vectors differ in length.");
        arma::cx_vec c(phases.n_elem);
        for (std::size_t n = 0; n < phases.n_elem; ++n)
            c[n] = std::polar(amplitudes[n], phases[n]);
        return c;
    }

    arma::cx_vec PhaseConfig::phasors() const
    {
        arma::cx_vec c(phases.n_elem);
        for (std::size_t n = 0; n < phases.n_elem; ++n)
            c[n] = std::polar(1.0, phases[n]);
        return c;
    }

    PhaseConfig PhaseConfig::from_phasors(const arma::cx_vec &phasors, const arma::vec &amplitudes)
    {
        PhaseConfig c;
        c.amplitudes = amplitudes;
        c.phases.set_size(phasors.n_elem);
        for (std::size_t n = 0; n < phasors.n_elem; ++n)
            c.phases[n] = wrap_phase(safe_arg(phasors[n]));
        return c;
    }

    const char *to_string(Strategy s)
    {
        switch (s)
        {
        case Strategy::noise_optimal:
            return "noise-optimal";
        case Strategy::emi_aware:
            return "emi-aware";
        default:
            return "custom";
        }
    }

    arma::cx_vec effective_channel(const PhaseConfig &config, const arma::cx_vec &h2)
    {
        if (config.size() != h2.n_elem)
            throw std::invalid_argument("Phase configuration and channel differ in length.");
        return config.coefficients() % h2;
    }

    SnrResult snr_from_terms(const LinkScenario &scenario, double coherent_gain, double emi_quadratic, Strategy strategy)
    {
        SnrResult r;
        r.strategy = strategy;
        r.signal_term = scenario.tx_power * coherent_gain;
        const double emi_power = scenario.element_area * scenario.emi_intensity * emi_quadratic;
        const double denom = emi_power + scenario.noise_power;
        if (!(denom > 0.0))
            throw DegenerateError("SNR denominator is zero: no thermal noise and no EMI reaches the receiver.");
        r.emi_term = (scenario.noise_power > 0.0) ? emi_power / scenario.noise_power
                                                  : std::numeric_limits<double>::infinity();
        r.snr_linear = r.signal_term / denom;
        r.snr_db = linear_to_db(r.snr_linear);
        return r;
    }

    SnrResult snr_with_emi(const LinkScenario &scenario, const PhaseConfig &config, const ChannelDraw &draw,
                           const CorrelationMatrix &r, Strategy strategy)
    {
        const arma::cx_vec g2 = effective_channel(config, draw.h2);
        if (draw.h1.n_elem != g2.n_elem || r.dim() != g2.n_elem)
            throw std::invalid_argument("Dimension mismatch between channels and correlation matrix.");
        const cx coherent = arma::cdot(g2, draw.h1) + draw.h_d;
        const double quad = std::real(arma::cdot(g2, r.entries() * g2));
        return snr_from_terms(scenario, std::norm(coherent), std::max(quad, 0.0), strategy);
    }

    PhaseConfig noise_optimal_phases(const ChannelDraw &draw, const arma::vec &amplitudes)
    {
        const std::size_t n = draw.h1.n_elem;
        if (draw.h2.n_elem != n || amplitudes.n_elem != n)
            throw std::invalid_argument("Dimension mismatch in noise-optimal phase rule.");
        PhaseConfig c;
        c.amplitudes = amplitudes;
        c.phases.set_size(n);
        const double direct = safe_arg(draw.h_d);
        for (std::size_t k = 0; k < n; ++k)
            c.phases[k] = wrap_phase(safe_arg(draw.h1[k] * std::conj(draw.h2[k])) - direct);
        return c;
    }

    double snr_no_emi(const LinkScenario &scenario, const ChannelDraw &draw, const arma::vec &amplitudes)
    {
        if (draw.h2.n_elem != draw.h1.n_elem || amplitudes.n_elem != draw.h1.n_elem)
            throw std::invalid_argument("Dimension mismatch in SNR without EMI.");
        const double s = arma::sum(amplitudes % arma::abs(draw.h1 % draw.h2)) + std::abs(draw.h_d);
        return scenario.tx_power / scenario.noise_power * s * s;
    }

    double snr_no_ris(const LinkScenario &scenario, cx h_d)
    {
        return scenario.tx_power * std::norm(h_d) / scenario.noise_power;
    }

    double prop1_limit(const LinkScenario &scenario, const RisGeometry &geometry)
    {
        if (std::abs(scenario.element_area - geometry.element_area) > 1e-12 * geometry.element_area)
            throw std::invalid_argument("Scenario and geometry disagree on the element area.");
        const double q = pi * geometry.element_area / 4.0;
        return scenario.tx_power / scenario.noise_power * scenario.beta1 * scenario.beta2 * q * q;
    }

    double prop2_limit(const LinkScenario &scenario, double alpha)
    {
        if (!(alpha > 0.0))
            throw std::invalid_argument("Linear-scaling limit needs alpha > 0; with asymptotically orthogonal "
                                        "correlation matrices the SNR grows as N^2.");
        const double q = pi / 4.0;
        return scenario.rho() / alpha * q * q;
    }

    AlphaEstimate estimate_alpha(const CorrelationMatrix &r, const EffectiveCorrelationEstimate &rbar)
    {
        if (rbar.entries.n_rows != r.dim() || rbar.entries.n_cols != r.dim())
            throw std::invalid_argument("Rbar estimate and R differ in dimension.");
        // tr(X Y) = sum_ij X_ij Y_ji
        const cx tr = arma::accu(rbar.entries % r.entries().st());
        const double n = static_cast<double>(r.dim());
        return {tr.real() / n, tr.imag() / n};
    }

} // namespace risemi
