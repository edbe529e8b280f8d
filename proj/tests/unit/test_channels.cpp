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

#include "risemi/channels.hpp"
#include "risemi/correlation.hpp"

#include <algorithm>
#include <vector>

using namespace risemi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("link parameters convert to linear units", "[channels]")
{
    LinkParameters p;
    p.rho_db = 20.0;
    p.beta_d_db = -100.0;
    const LinkScenario s = make_scenario(p);
    CHECK_THAT(s.tx_power, WithinRel(0.19952623149688797, 1e-12));
    CHECK_THAT(s.noise_power, WithinRel(std::pow(10.0, -14.4), 1e-12));
    CHECK_THAT(s.element_area * s.beta1, WithinRel(1e-8, 1e-12));
    CHECK_THAT(s.element_area * s.beta2, WithinRel(1e-7, 1e-12));
    CHECK_THAT(s.beta_d, WithinRel(1e-10, 1e-12));
    CHECK_THAT(s.rho(), WithinRel(100.0, 1e-12));

    LinkParameters none;
    const LinkScenario q = make_scenario(none);
    CHECK(q.emi_intensity == 0.0);
    CHECK(q.beta_d == 0.0);
    CHECK(std::isinf(q.rho()));

    LinkParameters bad = p;
    bad.emi_intensity = 1.0; // inconsistent with rho
    CHECK_THROWS(make_scenario(bad));
    LinkParameters consistent = p;
    consistent.emi_intensity = s.emi_intensity;
    CHECK_NOTHROW(make_scenario(consistent));
}

TEST_CASE("complex normal moments and Rayleigh magnitude", "[channels][property]")
{
    RngStream rng(123, 0, StreamTag::h1);
    const std::size_t n = 200000;
    std::vector<cx> z(n);
    rng.fill_standard_complex_normal(z.data(), n);
    cx mean = 0.0;
    double power = 0.0;
    cx pseudo = 0.0;
    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        mean += z[i];
        power += std::norm(z[i]);
        pseudo += z[i] * z[i];
        mag[i] = std::abs(z[i]);
    }
    const double dn = static_cast<double>(n);
    CHECK(std::abs(mean / dn) < 0.01);
    CHECK_THAT(power / dn, WithinAbs(1.0, 0.01));
    CHECK(std::abs(pseudo / dn) < 0.01); // circular symmetry
    std::nth_element(mag.begin(), mag.begin() + n / 2, mag.end());
    CHECK_THAT(mag[n / 2], WithinAbs(std::sqrt(std::log(2.0)), 0.01));
}

TEST_CASE("channel covariance matches the model", "[channels][property]")
{
    LinkParameters p;
    p.rho_db = 20.0;
    p.beta_d_db = -80.0;
    const LinkScenario s = make_scenario(p);
    const RisGeometry g = element_positions(16, 6.25e-4, 0.1);
    const CorrelationMatrix r = sinc_correlation(g);
    const std::size_t trials = 20000;
    const ChannelBatch b = draw_channel_batch(s, r.sqrt_factor(), r.sqrt_factor(), 9, 0, trials);
    const double dn = static_cast<double>(trials);
    const arma::cx_mat c1 = b.h1 * b.h1.t() / dn / (s.element_area * s.beta1);
    const arma::cx_mat c2 = b.h2 * b.h2.t() / dn / (s.element_area * s.beta2);
    CHECK(arma::abs(c1 - r.entries()).max() < 0.05);
    CHECK(arma::abs(c2 - r.entries()).max() < 0.05);
    // h1 and h2 are independent
    const arma::cx_mat x = b.h1 * b.h2.t() / dn / (s.element_area * std::sqrt(s.beta1 * s.beta2));
    CHECK(arma::abs(x).max() < 0.05);
    CHECK_THAT(arma::accu(arma::square(arma::abs(b.h_d))) / dn / s.beta_d, WithinAbs(1.0, 0.05));

    const arma::cx_mat emi_cov = [&] {
        arma::cx_mat acc(16, 16, arma::fill::zeros);
        for (std::size_t t = 0; t < trials; ++t)
        {
            RngStream e(9, t, StreamTag::emi);
            const arma::cx_vec v = sample_emi(s, r.sqrt_factor(), e);
            acc += v * v.t();
        }
        return arma::cx_mat(acc / dn / (s.element_area * s.emi_intensity));
    }();
    CHECK(arma::abs(emi_cov - r.entries()).max() < 0.05);
}

TEST_CASE("draws are reproducible and batch-consistent", "[channels]")
{
    LinkParameters p;
    p.beta_d_db = -90.0;
    const LinkScenario s = make_scenario(p);
    const RisGeometry g = element_positions(9, 6.25e-4, 0.1);
    const CorrelationMatrix r = sinc_correlation(g);
    const arma::cx_mat &f = r.sqrt_factor();

    const ChannelDraw a = draw_channels(s, f, f, 77, 5);
    const ChannelDraw b = draw_channels(s, f, f, 77, 5);
    CHECK(arma::approx_equal(a.h1, b.h1, "absdiff", 0.0));
    CHECK(arma::approx_equal(a.h2, b.h2, "absdiff", 0.0));
    CHECK(a.h_d == b.h_d);

    const ChannelDraw other = draw_channels(s, f, f, 77, 6);
    CHECK_FALSE(arma::approx_equal(a.h1, other.h1, "absdiff", 1e-20));
    const ChannelDraw seed2 = draw_channels(s, f, f, 78, 5);
    CHECK_FALSE(arma::approx_equal(a.h1, seed2.h1, "absdiff", 1e-20));

    const ChannelBatch batch = draw_channel_batch(s, f, f, 77, 3, 4);
    const ChannelDraw k2 = batch.trial(2, 77);
    CHECK(k2.trial_index == 5);
    CHECK(arma::abs(k2.h1 - a.h1).max() < 1e-15 * arma::abs(a.h1).max());
    CHECK(arma::abs(k2.h2 - a.h2).max() < 1e-15 * arma::abs(a.h2).max());
    CHECK(k2.h_d == a.h_d);
}

TEST_CASE("no direct path means exactly zero", "[channels]")
{
    RngStream rng(1, 1, StreamTag::hd);
    CHECK(sample_direct(0.0, rng) == cx(0.0, 0.0));
    LinkParameters p;
    const LinkScenario s = make_scenario(p);
    const arma::cx_mat f = arma::eye<arma::cx_mat>(4, 4);
    CHECK(draw_channels(s, f, f, 1, 0).h_d == cx(0.0, 0.0));
}
