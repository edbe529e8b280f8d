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

#ifndef RISEMI_ANGULAR_DENSITY_H
#define RISEMI_ANGULAR_DENSITY_H

#include "risemi/common.hpp"

#include <cstddef>
#include <functional>
#include <string>

namespace risemi
{
    // Tensor-product Gauss-Legendre rule on the square [-pi/2, pi/2] x [-pi/2, pi/2].
    // Nodes are flattened with the azimuth index running fastest.
    struct QuadratureRule
    {
        std::size_t nodes_per_axis = 0;
        arma::vec azimuth;   // n^2 node azimuths
        arma::vec elevation; // n^2 node elevations
        arma::vec weight;    // n^2 product weights, summing to pi^2

        std::size_t size() const { return weight.n_elem; }

        static QuadratureRule gauss_legendre(std::size_t nodes_per_axis = 96);
    };

    // 1-D Gauss-Legendre nodes and weights on [a, b]
    void gauss_legendre_1d(std::size_t n, double a, double b, arma::vec &nodes, arma::vec &weights);

    enum class DensityKind
    {
        isotropic,
        gaussian
    };

    // Normalized angular power density f(az, el) over the frontal half-space.
    //
    // isotropic:  f = cos(el) / (2 pi)
    // gaussian:   f = c / (2 pi s_az s_el) exp(-(az - m_az)^2 / (2 s_az^2)) exp(-(el - m_el)^2 / (2 s_el^2)) cos(el)
    //
    // The Gaussian kind is truncated to the domain; c is chosen on a given quadrature rule so that the
    // density integrates to one on that rule.
    struct AngularDensity
    {
        DensityKind kind = DensityKind::isotropic;
        double mean_azimuth = 0.0;
        double mean_elevation = 0.0;
        double std_azimuth = 0.0;
        double std_elevation = 0.0;
        double norm_constant = 1.0;

        double operator()(double azimuth, double elevation) const;

        // Density values at every node of the rule.
        arma::vec at_nodes(const QuadratureRule &rule) const;

        // Stable text identity, used as a cache key and in reports.
        std::string key() const;
    };

    AngularDensity isotropic_density();

    AngularDensity gaussian_density(double mean_azimuth, double mean_elevation,
                                    double std_azimuth, double std_elevation,
                                    const QuadratureRule &rule);

    // Sum_i w_i g(az_i, el_i) f(az_i, el_i). Throws IntegrationError naming the node if g or f is not finite there.
    cx integrate(const AngularDensity &density,
                 const std::function<cx(double, double)> &g,
                 const QuadratureRule &rule);

} // namespace risemi

#endif
