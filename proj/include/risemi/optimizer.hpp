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

#ifndef RISEMI_OPTIMIZER_H
#define RISEMI_OPTIMIZER_H

#include "risemi/correlation.hpp"
#include "risemi/snr.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace risemi
{
    // EMI-aware configuration problem without direct link. With unit-modulus phasors phi,
    //
    //   SNR = scale |phi^H a|^2 / (phi^H B phi + 1) = scale (phi^H a a^H phi) / (phi^H C phi),
    //
    //   a = Gamma^H H2^H h1,  B = (A sigma^2 / sigma_w^2) Gamma^H H2^H R H2 Gamma,  C = B + I / N,
    //   scale = P / sigma_w^2.
    class OptimizerProblem
    {
    public:
        arma::cx_vec a;
        arma::cx_mat b;
        arma::cx_mat c;
        double scale = 0.0;
        arma::vec amplitudes;
        std::string warning;

        std::size_t dim() const { return a.n_elem; }

        // Unit-modulus SNR: scale |phi^H a|^2 / (phi^H B phi + 1)
        double snr(const arma::cx_vec &phasors) const;

        // Generalized Rayleigh quotient scale |phi^H a|^2 / (phi^H C phi), valid for any phi != 0
        double rayleigh_quotient(const arma::cx_vec &phi) const;

        // C^{-1} a by Cholesky solve (cached)
        const arma::cx_vec &c_inv_a() const;

        // Principal square roots of C from its Hermitian eigendecomposition (cached)
        const arma::cx_mat &c_sqrt() const;
        const arma::cx_mat &c_inv_sqrt() const;

        // D = C^{-1/2,H} a a^H C^{-1/2}
        arma::cx_mat d_matrix() const;

    private:
        struct Cache
        {
            std::once_flag solve_once, sqrt_once;
            arma::cx_vec c_inv_a;
            arma::cx_mat c_sqrt, c_inv_sqrt;
        };
        std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
    };

    // Builds the problem for one draw. A non-zero direct path is ignored (noted in `warning`).
    // Throws DegenerateError if h2 is identically zero or sigma_w^2 = 0.
    OptimizerProblem build_problem(const LinkScenario &scenario, const ChannelDraw &draw,
                                   const CorrelationMatrix &r, const arma::vec &amplitudes);

    struct OptimizerOptions
    {
        double step = 0.5; // beta in [0, 1]; the step is beta / lambda_max(D^H D)
        std::size_t max_iterations = 1000;
        double tolerance = 1e-6; // relative SNR change
        std::size_t window = 5;  // consecutive iterations below tolerance
    };

    struct OptimizerResult
    {
        PhaseConfig phases;
        double snr = 0.0;
        std::size_t iterations = 0;
        bool converged = false;
        std::vector<double> trajectory; // SNR of the initial point, then of every iterate
    };

    // Projected gradient ascent on the unit-modulus torus:
    //   phibar <- phibar + alpha D phibar,  phi <- exp(j arg(C^{-1/2} phibar)),  phibar <- C^{1/2} phi,
    // with alpha = beta / lambda_max(D^H D). Since D is rank one the update is evaluated as
    // phi <- exp(j arg(phi + alpha C^{-1} a (a^H phi))) and lambda_max(D^H D) = (a^H C^{-1} a)^2.
    // Returns the best iterate visited.
    OptimizerResult projected_gradient(const OptimizerProblem &problem, const PhaseConfig &init,
                                       const OptimizerOptions &options = {});

    // Same iteration carried out literally with C^{1/2}, C^{-1/2}, D and a power-iteration step size.
    // O(N^3) per problem; used to cross-check projected_gradient.
    OptimizerResult projected_gradient_reference(const OptimizerProblem &problem, const PhaseConfig &init,
                                                 const OptimizerOptions &options = {});

    // Dominant eigenvalue of a Hermitian PSD matrix by power iteration.
    double power_iteration_lambda_max(const arma::cx_mat &m, double tolerance = 1e-8, std::size_t max_iterations = 10000);

    struct RelaxedBound
    {
        double value = 0.0;            // +inf when a leaves the numerical range of M
        double restricted_value = 0.0; // supremum over the retained eigenspace
        double residual = 0.0;         // ||a - P_range a|| / ||a||
        bool bounded = true;
        std::size_t retained_rank = 0;
    };

    inline constexpr double relaxed_bound_residual_tolerance = 1e-6;

    // sup over phi != 0 of P |phi^H a|^2 / (A sigma^2 phi^H M phi) = (P / (A sigma^2)) a^H M^+ a,
    // with M^+ the pseudo-inverse at relative eigenvalue cutoff 1e-10.
    RelaxedBound relaxed_upper_bound(const arma::cx_vec &a, const arma::cx_mat &m, const LinkScenario &scenario);

    // The same supremum for a = Gamma^H H2^H h1 and M = Gamma^H H2^H R H2 Gamma with invertible Gamma H2:
    // a^H M^{-1} a = h1^H R^{-1} h1, so the bound only needs the (shared) eigendecomposition of R.
    RelaxedBound relaxed_upper_bound_whitened(const arma::cx_vec &h1, const HermitianEigen &r_eigen,
                                              const LinkScenario &scenario);

} // namespace risemi

#endif
