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

#include "risemi/angular_density.hpp"

#include <random>

using namespace risemi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    cx one(double, double) { return {1.0, 0.0}; }
}

TEST_CASE("Gauss-Legendre rule", "[quadrature]")
{
    arma::vec x, w;
    gauss_legendre_1d(5, -1.0, 1.0, x, w);
    CHECK_THAT(arma::accu(w), WithinRel(2.0, 1e-14));
    // exact for polynomials up to degree 9
    CHECK_THAT(arma::accu(w % arma::pow(x, 8)), WithinRel(2.0 / 9.0, 1e-13));
    CHECK_THAT(arma::accu(w % arma::pow(x, 7)), WithinAbs(0.0, 1e-15));

    const QuadratureRule r = QuadratureRule::gauss_legendre(32);
    CHECK(r.size() == 32 * 32);
    CHECK(arma::all(r.weight > 0.0));
    CHECK_THAT(arma::accu(r.weight), WithinRel(pi * pi, 1e-13));
    CHECK(arma::all(arma::abs(r.azimuth) < pi / 2));
    CHECK(arma::all(arma::abs(r.elevation) < pi / 2));
    CHECK_THROWS(QuadratureRule::gauss_legendre(0));
}

TEST_CASE("isotropic density", "[density]")
{
    const AngularDensity f = isotropic_density();
    CHECK_THAT(f(0.0, 0.0), WithinRel(1.0 / (2.0 * pi), 1e-15));
    CHECK_THAT(f(0.3, pi / 2), WithinAbs(0.0, 1e-16));
    CHECK_THAT(f(0.3, -pi / 2), WithinAbs(0.0, 1e-16));
    const QuadratureRule r = QuadratureRule::gauss_legendre(64);
    CHECK_THAT(std::real(integrate(f, one, r)), WithinAbs(1.0, 1e-8));
    CHECK_THAT(std::real(integrate(f, [](double, double) { return std::exp(cx(0.0, 0.0)); }, r)), WithinAbs(1.0, 1e-8));
    CHECK_THAT(std::abs(integrate(f, [](double, double el) { return cx(std::sin(el), 0.0); }, r)), WithinAbs(0.0, 1e-10));
}

TEST_CASE("gaussian density normalization", "[density]")
{
    SECTION("narrow at boresight: c close to one")
    {
        const QuadratureRule fine = QuadratureRule::gauss_legendre(800);
        const AngularDensity f = gaussian_density(0.0, 0.0, 0.01, 0.01, fine);
        CHECK_THAT(f.norm_constant, WithinRel(1.0, 0.01));
    }
    SECTION("integrates to one at doubled resolution")
    {
        const QuadratureRule r = QuadratureRule::gauss_legendre(96);
        const QuadratureRule r2 = QuadratureRule::gauss_legendre(192);
        const AngularDensity f = gaussian_density(-pi / 4, 0.0, pi / 4, pi / 4, r);
        CHECK_THAT(std::real(integrate(f, one, r)), WithinAbs(1.0, 1e-12));
        CHECK_THAT(std::real(integrate(f, one, r2)), WithinAbs(1.0, 1e-6));
    }
    SECTION("even in azimuth for a centered mean")
    {
        const QuadratureRule r = QuadratureRule::gauss_legendre(48);
        const AngularDensity f = gaussian_density(0.0, 0.0, 0.4, 0.3, r);
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-pi / 2, pi / 2);
        for (int i = 0; i < 100; ++i)
        {
            const double a = u(rng), e = u(rng);
            CHECK_THAT(f(a, e), WithinRel(f(-a, e), 1e-14));
            CHECK(f(a, e) >= 0.0);
        }
    }
    SECTION("c unchanged by reflecting the azimuth mean")
    {
        const QuadratureRule r = QuadratureRule::gauss_legendre(64);
        const AngularDensity a = gaussian_density(0.5, 0.2, 0.3, 0.4, r);
        const AngularDensity b = gaussian_density(-0.5, 0.2, 0.3, 0.4, r);
        CHECK_THAT(a.norm_constant, WithinRel(b.norm_constant, 1e-12));
    }
    SECTION("invalid parameters")
    {
        const QuadratureRule r = QuadratureRule::gauss_legendre(16);
        CHECK_THROWS_AS(gaussian_density(0.0, 0.0, 0.0, 0.1, r), std::invalid_argument);
        CHECK_THROWS_AS(gaussian_density(0.0, 0.0, 0.1, -1.0, r), std::invalid_argument);
        CHECK_THROWS_AS(gaussian_density(2.0, 0.0, 0.1, 0.1, r), std::invalid_argument);
        // all mass far outside the domain underflows: c cannot be formed
        CHECK_THROWS_AS(gaussian_density(pi / 2 - 1e-9, 0.0, 1e-4, 1e-4, r), IntegrationError);
    }
}

TEST_CASE("integrate reports the node of a non-finite integrand", "[density]")
{
    const QuadratureRule r = QuadratureRule::gauss_legendre(8);
    const AngularDensity f = isotropic_density();
    try
    {
        integrate(f, [](double az, double) { return az > 0.5 ? cx(NAN, 0.0) : cx(1.0, 0.0); }, r);
        FAIL("expected IntegrationError");
    }
    catch (const IntegrationError &e)
    {
        CHECK(std::string(e.what()).find("node") != std::string::npos);
    }
}

TEST_CASE("density keys identify parameters", "[density]")
{
    const QuadratureRule r = QuadratureRule::gauss_legendre(16);
    CHECK(isotropic_density().key() == isotropic_density().key());
    CHECK(gaussian_density(0.1, 0.0, 0.2, 0.2, r).key() != gaussian_density(0.1, 0.0, 0.2, 0.3, r).key());
    CHECK(gaussian_density(0.1, 0.0, 0.2, 0.2, r).key() != isotropic_density().key());
}
