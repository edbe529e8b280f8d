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

#ifndef RISEMI_CHANNELS_H
#define RISEMI_CHANNELS_H

#include "risemi/common.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace risemi
{
    // All link parameters, internally in linear units (watts, m^2, 1/m^2).
    struct LinkScenario
    {
        double tx_power = 0.0;      // P [W]
        double noise_power = 0.0;   // sigma_w^2 [W]
        double emi_intensity = 0.0; // sigma^2 [W/m^2]
        double element_area = 0.0;  // A [m^2]
        double beta1 = 0.0;         // [1/m^2]
        double beta2 = 0.0;         // [1/m^2]
        double beta_d = 0.0;        // direct-path variance
        double uniform_amplitude = 1.0; // gamma used for every element when `amplitudes` is empty
        arma::vec amplitudes;           // per-element gamma_n in (0,1]

        // rho = P beta1 / sigma^2 (infinite without EMI)
        double rho() const;

        arma::vec amplitudes_for(std::size_t n_elements) const;

        void validate() const;
    };

    // Parameters in the units used to describe experiments. Exactly the EMI level may be given either as
    // rho or as sigma^2 (or both, if consistent).
    struct LinkParameters
    {
        double tx_power_dbm = 23.0;
        double noise_power_dbm = -114.0;
        double element_area = 6.25e-4;
        double a_beta1_db = -80.0;
        double a_beta2_db = -70.0;
        std::optional<double> beta_d_db; // nullopt: no direct path
        std::optional<double> rho_db;
        std::optional<double> emi_intensity; // sigma^2 [W/m^2]
        double amplitude = 1.0;
    };

    // Converts to linear units and checks rho = P beta1 / sigma^2 within 1e-9 when both are given.
    LinkScenario make_scenario(const LinkParameters &p);

    inline double dbm_to_watt(double dbm) { return db_to_linear(dbm - 30.0); }

    struct ChannelDraw
    {
        arma::cx_vec h1;
        arma::cx_vec h2;
        cx h_d{0.0, 0.0};
        std::uint64_t trial_index = 0;
        std::uint64_t master_seed = 0;
    };

    enum class StreamTag : std::uint32_t
    {
        h1 = 1,
        h2 = 2,
        hd = 3,
        emi = 4
    };

    // Independent random stream keyed by (master seed, trial index, variable tag, dimension).
    class RngStream
    {
    public:
        RngStream(std::uint64_t master_seed, std::uint64_t trial_index, StreamTag tag, std::uint64_t dim = 0);

        // CN(0, 1): real and imaginary parts i.i.d. N(0, 1/2)
        cx standard_complex_normal();
        void fill_standard_complex_normal(cx *out, std::size_t n);

    private:
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_{0.0, std::sqrt(0.5)};
    };

    // sqrt(variance_scale) F z, z ~ CN(0, I)
    arma::cx_vec sample_channel(double variance_scale, const arma::cx_mat &factor, RngStream &rng);

    // EMI vector n ~ CN(0, A sigma^2 R)
    arma::cx_vec sample_emi(const LinkScenario &scenario, const arma::cx_mat &factor, RngStream &rng);

    // h_d ~ CN(0, beta_d); exactly zero when beta_d == 0
    cx sample_direct(double beta_d, RngStream &rng);

    // One trial: h1 ~ CN(0, A beta1 R1), h2 ~ CN(0, A beta2 R2), h_d ~ CN(0, beta_d), each from its own stream.
    ChannelDraw draw_channels(const LinkScenario &scenario, const arma::cx_mat &factor1, const arma::cx_mat &factor2,
                              std::uint64_t master_seed, std::uint64_t trial_index);

    // Trials [first, first + count) at once; column k of h1/h2 is trial first + k. Uses the same streams as
    // draw_channels, but multiplies the factors as one matrix product.
    struct ChannelBatch
    {
        arma::cx_mat h1;
        arma::cx_mat h2;
        arma::cx_vec h_d;
        std::uint64_t first_trial = 0;

        ChannelDraw trial(std::size_t k, std::uint64_t master_seed) const;
    };

    ChannelBatch draw_channel_batch(const LinkScenario &scenario, const arma::cx_mat &factor1, const arma::cx_mat &factor2,
                                    std::uint64_t master_seed, std::uint64_t first_trial, std::size_t count);

} // namespace risemi

#endif
