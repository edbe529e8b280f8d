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

#ifndef RISEMI_GEOMETRY_H
#define RISEMI_GEOMETRY_H

#include "risemi/common.hpp"

#include <cstddef>

namespace risemi
{
    // Azimuth / elevation of an incoming plane wave, radians, each in [-pi/2, pi/2).
    struct ArrivalAngle
    {
        double azimuth = 0.0;
        double elevation = 0.0;

        void validate() const;
    };

    // Square RIS of N = side^2 elements deployed edge-to-edge in the z = 0 plane, centered at the origin.
    // Elements are numbered row by row starting at the top-left corner; position column n (0-based) is
    // element n+1 in 1-based numbering.
    struct RisGeometry
    {
        std::size_t n_elements = 0;
        double element_area = 0.0; // m^2
        double wavelength = 0.0;   // m
        arma::mat positions;       // 3 x N, meters

        std::size_t side() const;
        double spacing() const { return std::sqrt(element_area); }
    };

    // Returns sqrt(n) if n is a positive perfect square, throws std::invalid_argument otherwise.
    std::size_t grid_side(std::size_t n_elements);

    RisGeometry element_positions(std::size_t n_elements, double element_area, double wavelength);

    // (2 pi / lambda) [cos(el) cos(az), cos(el) sin(az), sin(el)]
    arma::vec3 wave_vector(const ArrivalAngle &angle, double wavelength);

    // Phase k^T d accumulated by a plane wave with wave vector k across the in-surface offset d (z = 0).
    // The surface normal is the x axis of the angular frame, so the surface x/y axes map onto the
    // y/z components of k.
    inline double surface_phase(const arma::vec3 &k, double dx, double dy)
    {
        return k[1] * dx + k[2] * dy;
    }

} // namespace risemi

#endif
