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

#ifndef RISEMI_COMMON_H
#define RISEMI_COMMON_H

#include <armadillo>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risemi
{
    using cx = std::complex<double>;

    inline constexpr double pi = std::numbers::pi;

    // Quadrature produced something non-finite, or a density could not be normalized.
    class IntegrationError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A matrix handed in as a spatial correlation matrix has a significantly negative eigenvalue.
    class NotCorrelationError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Division by zero or an empty problem (e.g. no noise and no EMI, or an all-zero channel).
    class DegenerateError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Malformed scenario document or CLI input.
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

    // Argument of a complex number with arg(0) := 0.
    inline double safe_arg(cx z) { return (z == cx(0.0, 0.0)) ? 0.0 : std::arg(z); }

} // namespace risemi

#endif
