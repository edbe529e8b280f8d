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

#include "risemi/angular_density.hpp"

#include <cmath>
#include <sstream>

namespace risemi
{
    void gauss_legendre_1d(std::size_t n, double a, double b, arma::vec &nodes, arma::vec &weights)
    {
        if (n == 0)
            throw std::invalid_argument("Gauss-Legendre rule needs at least one node.");

        nodes.set_size(n);
        weights.set_size(n);
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        const std::size_t m = (n + 1) / 2;

        for (std::size_t i = 0; i < m; ++i)
        {
            // Newton iteration on P_n starting from the Tricomi estimate of the i-th root.
            double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1.0, p1 = 0.0;
                for (std::size_t j = 1; j <= n; ++j)
                {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / static_cast<double>(j);
                }
                dp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
                const double dx = p0 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15)
                    break;
            }
            // Recompute the derivative at the converged root for the weight.
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 1; j <= n; ++j)
            {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / static_cast<double>(j);
            }
            dp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);

            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = mid - half * x;
            nodes[n - 1 - i] = mid + half * x;
            weights[i] = half * w;
            weights[n - 1 - i] = half * w;
        }
        if (n % 2 == 1)
            nodes[m - 1] = mid;
    }

    QuadratureRule QuadratureRule::gauss_legendre(std::size_t nodes_per_axis)
    {
        arma::vec x, w;
        gauss_legendre_1d(nodes_per_axis, -pi / 2.0, pi / 2.0, x, w);

        QuadratureRule rule;
        rule.nodes_per_axis = nodes_per_axis;
        const std::size_t total = nodes_per_axis * nodes_per_axis;
        rule.azimuth.set_size(total);
        rule.elevation.set_size(total);
        rule.weight.set_size(total);
        for (std::size_t j = 0; j < nodes_per_axis; ++j)
            for (std::size_t i = 0; i < nodes_per_axis; ++i)
            {
                const std::size_t q = j * nodes_per_axis + i;
                rule.azimuth[q] = x[i];
                rule.elevation[q] = x[j];
                rule.weight[q] = w[i] * w[j];
            }
        return rule;
    }

    double AngularDensity::operator()(double azimuth, double elevation) const
    {
        if (kind == DensityKind::isotropic)
            return std::cos(elevation) / (2.0 * pi);

        const double za = (azimuth - mean_azimuth) / std_azimuth;
        const double ze = (elevation - mean_elevation) / std_elevation;
        return norm_constant / (2.0 * pi * std_azimuth * std_elevation) *
               std::exp(-0.5 * za * za) * std::exp(-0.5 * ze * ze) * std::cos(elevation);
    }

    arma::vec AngularDensity::at_nodes(const QuadratureRule &rule) const
    {
        arma::vec f(rule.size());
        for (std::size_t q = 0; q < rule.size(); ++q)
            f[q] = (*this)(rule.azimuth[q], rule.elevation[q]);
        return f;
    }

    std::string AngularDensity::key() const
    {
        std::ostringstream os;
        os.precision(17);
        if (kind == DensityKind::isotropic)
            os << "isotropic";
        else
            os << "gaussian(" << mean_azimuth << "," << mean_elevation << "," << std_azimuth << "," << std_elevation << ")";
        return os.str();
    }

    AngularDensity isotropic_density()
    {
        return AngularDensity{};
    }

    AngularDensity gaussian_density(double mean_azimuth, double mean_elevation,
                                    double std_azimuth, double std_elevation,
                                    const QuadratureRule &rule)
    {
        if (!(std_azimuth > 0.0) || !(std_elevation > 0.0))
            throw std::invalid_argument("Angular standard deviations must be positive.");
        auto inside = [](double x)
        { return std::isfinite(x) && x >= -pi / 2.0 && x < pi / 2.0; };
        if (!inside(mean_azimuth) || !inside(mean_elevation))
            throw std::invalid_argument("Mean angles must lie in [-pi/2, pi/2).");
        if (rule.size() == 0)
            throw std::invalid_argument("Empty quadrature rule.");

        AngularDensity f;
        f.kind = DensityKind::gaussian;
        f.mean_azimuth = mean_azimuth;
        f.mean_elevation = mean_elevation;
        f.std_azimuth = std_azimuth;
        f.std_elevation = std_elevation;
        f.norm_constant = 1.0;

        const double mass = arma::dot(rule.weight, f.at_nodes(rule));
        f.norm_constant = 1.0 / mass;
        if (!std::isfinite(f.norm_constant) || !(mass > 0.0))
            throw IntegrationError("Could not normalize Gaussian angular density " + f.key() +
                                   ": quadrature mass " + std::to_string(mass));
        return f;
    }

    cx integrate(const AngularDensity &density,
                 const std::function<cx(double, double)> &g,
                 const QuadratureRule &rule)
    {
        if (rule.size() == 0)
            throw std::invalid_argument("Empty quadrature rule.");
        cx sum(0.0, 0.0);
        for (std::size_t q = 0; q < rule.size(); ++q)
        {
            const double az = rule.azimuth[q], el = rule.elevation[q];
            const cx term = g(az, el) * density(az, el);
            if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
            {
                std::ostringstream os;
                os << "Non-finite integrand at node " << q << " (azimuth " << az << ", elevation " << el << ")";
                throw IntegrationError(os.str());
            }
            sum += rule.weight[q] * term;
        }
        return sum;
    }

} // namespace risemi
