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

#ifndef RISEMI_CORRELATION_H
#define RISEMI_CORRELATION_H

#include "risemi/angular_density.hpp"
#include "risemi/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>

namespace risemi
{
    struct LinkScenario; // channels.hpp

    // Relative eigenvalue tolerance for PSD repair: eigenvalues in [-tol * lambda_max, 0) are clipped to zero,
    // anything more negative means the input is not a correlation matrix.
    inline constexpr double psd_clip_tolerance = 1e-10;

    struct HermitianEigen
    {
        arma::vec values;     // ascending
        arma::cx_mat vectors; // columns
    };

    HermitianEigen hermitian_eigen(const arma::cx_mat &m);

    // F with F F^H = R after clipping negligible negative eigenvalues. Throws NotCorrelationError.
    arma::cx_mat sqrt_factor(const arma::cx_mat &r);
    arma::cx_mat sqrt_factor(const HermitianEigen &eig);

    enum class CorrelationSource
    {
        sinc_isotropic,
        quadrature,
        estimate
    };

    // N x N Hermitian spatial correlation matrix with unit diagonal.
    // The eigendecomposition and square-root factor are computed on first use, once, and are safe to
    // request from several threads. Copies share that cache.
    class CorrelationMatrix
    {
    public:
        CorrelationMatrix() = default;
        CorrelationMatrix(arma::cx_mat entries, CorrelationSource source, std::string description, std::string warning = {});

        std::size_t dim() const { return entries_.n_rows; }
        const arma::cx_mat &entries() const { return entries_; }
        CorrelationSource source() const { return source_; }
        const std::string &description() const { return description_; }

        // Non-empty when quadrature self-convergence failed.
        const std::string &warning() const { return warning_; }

        const HermitianEigen &eigen() const;
        const arma::cx_mat &sqrt_factor() const;

        // Largest eigenvalue (finite-N proxy for the spectral-norm assumption).
        double spectral_norm() const;
        double trace_over_n() const;

    private:
        struct Cache
        {
            std::once_flag eig_once, factor_once;
            HermitianEigen eig;
            arma::cx_mat factor;
        };

        arma::cx_mat entries_;
        CorrelationSource source_ = CorrelationSource::sinc_isotropic;
        std::string description_;
        std::string warning_;
        std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
    };

    // Normalized sinc, sin(pi x) / (pi x), sinc(0) = 1
    double sinc(double x);

    // [R]_{n,m} = sinc(2 ||u_n - u_m|| / lambda): isotropic scattering over the half-space.
    CorrelationMatrix sinc_correlation(const RisGeometry &geometry);

    struct QuadratureOptions
    {
        // Self-convergence check: the first row is recomputed with twice the nodes per axis and compared.
        bool check_convergence = true;
        double convergence_tolerance = 1e-6;
    };

    // [R]_{n,m} = integral of exp(j k(az,el)^T (u_n - u_m)) f(az,el), evaluated on the rule.
    CorrelationMatrix quadrature_correlation(const RisGeometry &geometry, const AngularDensity &density,
                                             const QuadratureRule &rule, const QuadratureOptions &options = {});

    // Monte Carlo estimate of Rbar, where E{g2 g2^H} = A beta2 Rbar and g2 = Theta h2 with the
    // thermal-noise-optimal configuration.
    struct EffectiveCorrelationEstimate
    {
        arma::cx_mat entries;
        std::size_t n_samples = 0;
        double trace_over_n = 0.0;
    };

    EffectiveCorrelationEstimate estimate_effective_correlation(const LinkScenario &scenario, const RisGeometry &geometry,
                                                                const CorrelationMatrix &r1, const CorrelationMatrix &r2,
                                                                std::size_t n_trials, std::uint64_t seed);

    // Row-major dump: a comment line, then "row,col,re,im" with 1-based indices.
    void write_correlation_csv(const CorrelationMatrix &r, std::ostream &os);

} // namespace risemi

#endif
