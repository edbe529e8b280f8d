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

#include "risemi/geometry.hpp"

#include <cmath>
#include <string>

namespace risemi
{
    void ArrivalAngle::validate() const
    {
        auto in_range = [](double x)
        { return std::isfinite(x) && x >= -pi / 2.0 && x < pi / 2.0; };
        if (!in_range(azimuth))
            throw std::invalid_argument("Azimuth must lie in [-pi/2, pi/2), got " + std::to_string(azimuth));
        if (!in_range(elevation))
            throw std::invalid_argument("Elevation must lie in [-pi/2, pi/2), got " + std::to_string(elevation));
    }

    std::size_t RisGeometry::side() const { return grid_side(n_elements); }

    std::size_t grid_side(std::size_t n_elements)
    {
        if (n_elements == 0)
            throw std::invalid_argument("Number of RIS elements must be positive.");
        auto s = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n_elements))));
        while (s * s > n_elements)
            --s;
        while ((s + 1) * (s + 1) <= n_elements)
            ++s;
        if (s * s != n_elements)
            throw std::invalid_argument("Number of RIS elements must be a perfect square, got " + std::to_string(n_elements));
        return s;
    }

    RisGeometry element_positions(std::size_t n_elements, double element_area, double wavelength)
    {
        const std::size_t side = grid_side(n_elements);
        if (!(element_area > 0.0) || !std::isfinite(element_area))
            throw std::invalid_argument("Element area must be positive.");
        if (!(wavelength > 0.0) || !std::isfinite(wavelength))
            throw std::invalid_argument("Wavelength must be positive.");

        RisGeometry geo;
        geo.n_elements = n_elements;
        geo.element_area = element_area;
        geo.wavelength = wavelength;
        geo.positions.zeros(3, n_elements);

        const double d = std::sqrt(element_area);
        const double center = 0.5 * static_cast<double>(side - 1);
        for (std::size_t n = 0; n < n_elements; ++n)
        {
            // Half-integer offsets are exact, so mirrored elements get exactly negated coordinates.
            const double col = static_cast<double>(n % side) - center;
            const double row = static_cast<double>(n / side) - center;
            geo.positions(0, n) = d * col;
            geo.positions(1, n) = -d * row;
        }
        return geo;
    }

    arma::vec3 wave_vector(const ArrivalAngle &angle, double wavelength)
    {
        angle.validate();
        if (!(wavelength > 0.0))
            throw std::invalid_argument("Wavelength must be positive.");
        const double k = 2.0 * pi / wavelength;
        const double ce = std::cos(angle.elevation);
        return arma::vec3{k * ce * std::cos(angle.azimuth), k * ce * std::sin(angle.azimuth), k * std::sin(angle.elevation)};
    }

} // namespace risemi
