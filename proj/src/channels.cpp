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

#include <cmath>
#include <limits>
#include <sstream>

namespace risemi
{
    double LinkScenario::rho() const
    {
        if (emi_intensity == 0.0)
            return std::numeric_limits<double>::infinity();
        return tx_power * beta1 / emi_intensity;
    }

    arma::vec LinkScenario::amplitudes_for(std::size_t n_elements) const
    {
        if (amplitudes.is_empty())
            return arma::vec(n_elements, arma::fill::value(uniform_amplitude));
        if (amplitudes.n_elem != n_elements)
            throw std::invalid_argument("Amplitude vector length does not match the number of RIS elements.");
        return amplitudes;
    }

    void LinkScenario::validate() const
    {
        auto nonneg = [](double x, const char *what)
        {
            if (!(x >= 0.0) || !std::isfinite(x))
                throw std::invalid_argument(std::string(what) + " must be finite and non-negative.");
        };
        nonneg(tx_power, "Transmit power");
        nonneg(noise_power, "Noise power");
        nonneg(emi_intensity, "EMI intensity");
        nonneg(beta1, "beta1");
        nonneg(beta2, "beta2");
        nonneg(beta_d, "beta_d");
        if (!(element_area > 0.0))
            throw std::invalid_argument("Element area must be positive.");
        if (!(uniform_amplitude > 0.0 && uniform_amplitude <= 1.0))
            throw std::invalid_argument("Amplitudes must lie in (0, 1].");
        for (double g : amplitudes)
            if (!(g > 0.0 && g <= 1.0))
                throw std::invalid_argument("Amplitudes must lie in (0, 1].");
    }

    LinkScenario make_scenario(const LinkParameters &p)
    {
        LinkScenario s;
        s.tx_power = dbm_to_watt(p.tx_power_dbm);
        s.noise_power = dbm_to_watt(p.noise_power_dbm);
        s.element_area = p.element_area;
        if (!(p.element_area > 0.0))
            throw std::invalid_argument("Element area must be positive.");
        s.beta1 = db_to_linear(p.a_beta1_db) / p.element_area;
        s.beta2 = db_to_linear(p.a_beta2_db) / p.element_area;
        s.beta_d = p.beta_d_db ? db_to_linear(*p.beta_d_db) : 0.0;

        if (p.rho_db && p.emi_intensity)
        {
            const double from_rho = s.tx_power * s.beta1 / db_to_linear(*p.rho_db);
            if (std::abs(from_rho - *p.emi_intensity) > 1e-9 * std::abs(from_rho))
            {
                std::ostringstream os;
                os << "Inconsistent EMI level: rho = " << *p.rho_db << " dB implies sigma^2 = " << from_rho
                   << " W/m^2, but sigma^2 = " << *p.emi_intensity << " was given.";
                throw std::invalid_argument(os.str());
            }
            s.emi_intensity = *p.emi_intensity;
        }
        else if (p.rho_db)
            s.emi_intensity = s.tx_power * s.beta1 / db_to_linear(*p.rho_db);
        else if (p.emi_intensity)
            s.emi_intensity = *p.emi_intensity;

        s.uniform_amplitude = p.amplitude;
        s.validate();
        return s;
    }

    RngStream::RngStream(std::uint64_t master_seed, std::uint64_t trial_index, StreamTag tag, std::uint64_t dim)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                          static_cast<std::uint32_t>(trial_index), static_cast<std::uint32_t>(trial_index >> 32),
                          static_cast<std::uint32_t>(tag),
                          static_cast<std::uint32_t>(dim), static_cast<std::uint32_t>(dim >> 32)};
        engine_.seed(seq);
    }

    cx RngStream::standard_complex_normal()
    {
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {re, im};
    }

    void RngStream::fill_standard_complex_normal(cx *out, std::size_t n)
    {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = standard_complex_normal();
    }

    arma::cx_vec sample_channel(double variance_scale, const arma::cx_mat &factor, RngStream &rng)
    {
        if (!(variance_scale >= 0.0))
            throw std::invalid_argument("Variance scale must be non-negative.");
        arma::cx_vec z(factor.n_cols);
        rng.fill_standard_complex_normal(z.memptr(), z.n_elem);
        if (variance_scale == 0.0)
            return arma::cx_vec(factor.n_rows, arma::fill::zeros);
        return std::sqrt(variance_scale) * (factor * z);
    }

    arma::cx_vec sample_emi(const LinkScenario &scenario, const arma::cx_mat &factor, RngStream &rng)
    {
        return sample_channel(scenario.element_area * scenario.emi_intensity, factor, rng);
    }

    cx sample_direct(double beta_d, RngStream &rng)
    {
        if (!(beta_d >= 0.0))
            throw std::invalid_argument("beta_d must be non-negative.");
        const cx z = rng.standard_complex_normal();
        if (beta_d == 0.0)
            return {0.0, 0.0};
        return std::sqrt(beta_d) * z;
    }

    ChannelDraw draw_channels(const LinkScenario &scenario, const arma::cx_mat &factor1, const arma::cx_mat &factor2,
                              std::uint64_t master_seed, std::uint64_t trial_index)
    {
        const std::size_t n = factor1.n_rows;
        if (factor2.n_rows != n)
            throw std::invalid_argument("Channel factors have different dimensions.");
        ChannelDraw d;
        d.trial_index = trial_index;
        d.master_seed = master_seed;
        RngStream s1(master_seed, trial_index, StreamTag::h1, n);
        RngStream s2(master_seed, trial_index, StreamTag::h2, n);
        RngStream sd(master_seed, trial_index, StreamTag::hd);
        d.h1 = sample_channel(scenario.element_area * scenario.beta1, factor1, s1);
        d.h2 = sample_channel(scenario.element_area * scenario.beta2, factor2, s2);
        d.h_d = sample_direct(scenario.beta_d, sd);
        return d;
    }

    ChannelDraw ChannelBatch::trial(std::size_t k, std::uint64_t master_seed) const
    {
        ChannelDraw d;
        d.h1 = h1.col(k);
        d.h2 = h2.col(k);
        d.h_d = h_d[k];
        d.trial_index = first_trial + k;
        d.master_seed = master_seed;
        return d;
    }

    ChannelBatch draw_channel_batch(const LinkScenario &scenario, const arma::cx_mat &factor1, const arma::cx_mat &factor2,
                                    std::uint64_t master_seed, std::uint64_t first_trial, std::size_t count)
    {
        const std::size_t n = factor1.n_rows;
        if (factor2.n_rows != n)
            throw std::invalid_argument("Channel factors have different dimensions.");

        arma::cx_mat z1(factor1.n_cols, count), z2(factor2.n_cols, count);
        ChannelBatch b;
        b.first_trial = first_trial;
        b.h_d.set_size(count);
        for (std::size_t k = 0; k < count; ++k)
        {
            const std::uint64_t t = first_trial + k;
            RngStream s1(master_seed, t, StreamTag::h1, n);
            RngStream s2(master_seed, t, StreamTag::h2, n);
            RngStream sd(master_seed, t, StreamTag::hd);
            s1.fill_standard_complex_normal(z1.colptr(k), z1.n_rows);
            s2.fill_standard_complex_normal(z2.colptr(k), z2.n_rows);
            b.h_d[k] = sample_direct(scenario.beta_d, sd);
        }
        const double v1 = scenario.element_area * scenario.beta1;
        const double v2 = scenario.element_area * scenario.beta2;
        b.h1 = (v1 == 0.0) ? arma::cx_mat(n, count, arma::fill::zeros) : arma::cx_mat(std::sqrt(v1) * (factor1 * z1));
        b.h2 = (v2 == 0.0) ? arma::cx_mat(n, count, arma::fill::zeros) : arma::cx_mat(std::sqrt(v2) * (factor2 * z2));
        return b;
    }

} // namespace risemi
