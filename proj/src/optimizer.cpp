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

#include "risemi/optimizer.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace risemi
{
    double OptimizerProblem::snr(const arma::cx_vec &phasors) const
    {
        const double num = std::norm(arma::cdot(phasors, a));
        const double den = std::real(arma::cdot(phasors, b * phasors)) + 1.0;
        return scale * num / den;
    }

    double OptimizerProblem::rayleigh_quotient(const arma::cx_vec &phi) const
    {
        const double num = std::norm(arma::cdot(phi, a));
        const double den = std::real(arma::cdot(phi, c * phi));
        return scale * num / den;
    }

    const arma::cx_vec &OptimizerProblem::c_inv_a() const
    {
        std::call_once(cache_->solve_once, [this]
                       {
            arma::cx_mat l;
            if (!arma::chol(l, c, "lower"))
                throw DegenerateError("C = B + I/N is not positive definite.");
            const arma::cx_vec y = arma::solve(arma::trimatl(l), a);
            cache_->c_inv_a = arma::solve(arma::trimatu(l.t()), y); });
        return cache_->c_inv_a;
    }

    namespace
    {
        void compute_c_roots(const arma::cx_mat &c, arma::cx_mat &root, arma::cx_mat &inv_root)
        {
            const HermitianEigen e = hermitian_eigen(c);
            if (e.values.is_empty() || !(e.values.min() > 0.0))
                throw DegenerateError("C = B + I/N is not positive definite.");
            const arma::vec s = arma::sqrt(e.values);
            arma::cx_mat vs = e.vectors;
            vs.each_row() %= arma::conv_to<arma::cx_rowvec>::from(s.t());
            root = vs * e.vectors.t();
            arma::cx_mat vi = e.vectors;
            vi.each_row() %= arma::conv_to<arma::cx_rowvec>::from((1.0 / s).t());
            inv_root = vi * e.vectors.t();
        }
    } // namespace

    const arma::cx_mat &OptimizerProblem::c_sqrt() const
    {
        std::call_once(cache_->sqrt_once, [this]
                       { compute_c_roots(c, cache_->c_sqrt, cache_->c_inv_sqrt); });
        return cache_->c_sqrt;
    }

    const arma::cx_mat &OptimizerProblem::c_inv_sqrt() const
    {
        c_sqrt();
        return cache_->c_inv_sqrt;
    }

    arma::cx_mat OptimizerProblem::d_matrix() const
    {
        const arma::cx_mat &ci = c_inv_sqrt();
        const arma::cx_vec v = ci.t() * a;
        return v * v.t();
    }

    OptimizerProblem build_problem(const LinkScenario &scenario, const ChannelDraw &draw,
                                   const CorrelationMatrix &r, const arma::vec &amplitudes)
    {
        const std::size_t n = draw.h1.n_elem;
        if (draw.h2.n_elem != n || amplitudes.n_elem != n || r.dim() != n)
            throw std::invalid_argument("Dimension mismatch while building the optimizer problem.");
        if (n == 0)
            throw std::invalid_argument("Empty optimizer problem.");
        if (arma::all(draw.h2 == cx(0.0, 0.0)))
            throw DegenerateError("Degenerate optimizer problem: h2 is identically zero.");
        if (!(scenario.noise_power > 0.0))
            throw DegenerateError("The EMI-aware formulation needs sigma_w^2 > 0.");

        OptimizerProblem p;
        p.amplitudes = amplitudes;
        p.scale = scenario.tx_power / scenario.noise_power;
        if (draw.h_d != cx(0.0, 0.0) || scenario.beta_d > 0.0)
            p.warning = "direct link ignored by the EMI-aware formulation (beta_d forced to 0)";

        const arma::cx_vec w = amplitudes % draw.h2; // H2 Gamma as a vector
        p.a = arma::conj(w) % draw.h1;

        const double emi = scenario.element_area * scenario.emi_intensity / scenario.noise_power;
        p.b = r.entries();
        p.b.each_col() %= arma::conj(w);
        p.b.each_row() %= w.st();
        p.b *= emi;
        p.b = 0.5 * (p.b + p.b.t());
        p.c = p.b;
        p.c.diag() += 1.0 / static_cast<double>(n);
        return p;
    }

    namespace
    {
        arma::cx_vec project_unit_modulus(const arma::cx_vec &v)
        {
            arma::cx_vec out(v.n_elem);
            for (std::size_t k = 0; k < v.n_elem; ++k)
                out[k] = std::polar(1.0, safe_arg(v[k]));
            return out;
        }

        void check_step(const OptimizerOptions &options)
        {
            if (!(options.step >= 0.0 && options.step <= 1.0))
                throw std::invalid_argument("Step parameter beta must lie in [0, 1].");
            if (options.window == 0)
                throw std::invalid_argument("Convergence window must be positive.");
        }

        // Runs the iteration phi <- next(phi) with best-iterate tracking and the windowed stopping rule.
        template <class Step>
        OptimizerResult iterate(const OptimizerProblem &problem, const arma::cx_vec &start,
                                const OptimizerOptions &options, Step &&next)
        {
            OptimizerResult res;
            arma::cx_vec phi = start;
            double current = problem.snr(phi);
            res.trajectory.push_back(current);
            arma::cx_vec best = phi;
            double best_snr = current;
            std::size_t quiet = 0;

            for (std::size_t it = 1; it <= options.max_iterations; ++it)
            {
                phi = next(phi);
                if (!phi.is_finite())
                {
                    std::ostringstream os;
                    os << "Projected gradient produced a non-finite iterate at iteration " << it;
                    throw DegenerateError(os.str());
                }
                const double s = problem.snr(phi);
                if (!std::isfinite(s))
                {
                    std::ostringstream os;
                    os << "Projected gradient produced a non-finite SNR at iteration " << it;
                    throw DegenerateError(os.str());
                }
                res.trajectory.push_back(s);
                res.iterations = it;
                if (s > best_snr)
                {
                    best_snr = s;
                    best = phi;
                }
                const double ref = std::max(std::abs(current), std::numeric_limits<double>::min());
                quiet = (std::abs(s - current) / ref < options.tolerance) ? quiet + 1 : 0;
                current = s;
                if (quiet >= options.window)
                {
                    res.converged = true;
                    break;
                }
            }
            res.phases = PhaseConfig::from_phasors(best, problem.amplitudes);
            res.snr = best_snr;
            return res;
        }
    } // namespace

    OptimizerResult projected_gradient(const OptimizerProblem &problem, const PhaseConfig &init,
                                       const OptimizerOptions &options)
    {
        check_step(options);
        if (init.size() != problem.dim())
            throw std::invalid_argument("Initial configuration has the wrong dimension.");

        const arma::cx_vec &w = problem.c_inv_a();
        const double t = std::real(arma::cdot(problem.a, w)); // a^H C^{-1} a = lambda_max(D)
        if (!(t > 0.0))
        {
            // a = 0: every configuration has zero SNR.
            OptimizerResult res;
            res.phases = init;
            res.phases.amplitudes = problem.amplitudes;
            res.snr = problem.snr(init.phasors());
            res.trajectory = {res.snr};
            res.converged = true;
            return res;
        }
        const double alpha = options.step / (t * t);
        return iterate(problem, init.phasors(), options, [&](const arma::cx_vec &phi)
                       { return project_unit_modulus(phi + (alpha * arma::cdot(problem.a, phi)) * w); });
    }

    OptimizerResult projected_gradient_reference(const OptimizerProblem &problem, const PhaseConfig &init,
                                                 const OptimizerOptions &options)
    {
        check_step(options);
        if (init.size() != problem.dim())
            throw std::invalid_argument("Initial configuration has the wrong dimension.");

        const arma::cx_mat &root = problem.c_sqrt();
        const arma::cx_mat &inv_root = problem.c_inv_sqrt();
        const arma::cx_mat d = problem.d_matrix();
        const double lmax = power_iteration_lambda_max(d.t() * d);
        if (!(lmax > 0.0))
        {
            OptimizerResult res;
            res.phases = init;
            res.phases.amplitudes = problem.amplitudes;
            res.snr = problem.snr(init.phasors());
            res.trajectory = {res.snr};
            res.converged = true;
            return res;
        }
        const double alpha = options.step / lmax;
        return iterate(problem, init.phasors(), options, [&](const arma::cx_vec &phi)
                       {
            const arma::cx_vec bar = root * phi;
            const arma::cx_vec stepped = bar + alpha * (d * bar);
            return project_unit_modulus(inv_root * stepped); });
    }

    double power_iteration_lambda_max(const arma::cx_mat &m, double tolerance, std::size_t max_iterations)
    {
        const std::size_t n = m.n_rows;
        if (n == 0 || m.n_cols != n)
            throw std::invalid_argument("Power iteration needs a non-empty square matrix.");
        arma::cx_vec v(n);
        for (std::size_t k = 0; k < n; ++k)
            v[k] = cx(1.0, 0.25 * std::sin(static_cast<double>(k) + 1.0));
        v /= arma::norm(v);

        double lambda = 0.0;
        for (std::size_t it = 0; it < max_iterations; ++it)
        {
            arma::cx_vec mv = m * v;
            const double nrm = arma::norm(mv);
            if (nrm == 0.0)
                return 0.0;
            const double next = std::real(arma::cdot(v, mv));
            v = mv / nrm;
            if (it > 0 && std::abs(next - lambda) <= tolerance * std::abs(next))
                return next;
            lambda = next;
        }
        return lambda;
    }

    namespace
    {
        RelaxedBound bound_from_eigen(const arma::cx_vec &x, const HermitianEigen &e, double factor)
        {
            RelaxedBound out;
            const double xnorm = arma::norm(x);
            if (xnorm == 0.0 || e.values.is_empty())
                return out;
            const double lmax = e.values.max();
            if (!(lmax > 0.0))
            {
                out.bounded = false;
                out.value = std::numeric_limits<double>::infinity();
                out.residual = 1.0;
                return out;
            }
            const arma::cx_vec coef = e.vectors.t() * x;
            double sum = 0.0, dropped = 0.0;
            for (std::size_t k = 0; k < e.values.n_elem; ++k)
            {
                if (e.values[k] > psd_clip_tolerance * lmax)
                {
                    sum += std::norm(coef[k]) / e.values[k];
                    ++out.retained_rank;
                }
                else
                    dropped += std::norm(coef[k]);
            }
            out.restricted_value = factor * sum;
            out.residual = std::sqrt(dropped) / xnorm;
            out.bounded = out.residual <= relaxed_bound_residual_tolerance;
            out.value = out.bounded ? out.restricted_value : std::numeric_limits<double>::infinity();
            return out;
        }

        double bound_factor(const LinkScenario &scenario)
        {
            const double emi = scenario.element_area * scenario.emi_intensity;
            if (!(emi > 0.0))
                throw std::invalid_argument("Relaxed upper bound needs A sigma^2 > 0.");
            return scenario.tx_power / emi;
        }
    } // namespace

    RelaxedBound relaxed_upper_bound(const arma::cx_vec &a, const arma::cx_mat &m, const LinkScenario &scenario)
    {
        if (m.n_rows != a.n_elem || m.n_cols != a.n_elem)
            throw std::invalid_argument("Dimension mismatch in relaxed upper bound.");
        const double factor = bound_factor(scenario);
        return bound_from_eigen(a, hermitian_eigen(0.5 * (m + m.t())), factor);
    }

    RelaxedBound relaxed_upper_bound_whitened(const arma::cx_vec &h1, const HermitianEigen &r_eigen,
                                              const LinkScenario &scenario)
    {
        if (r_eigen.vectors.n_rows != h1.n_elem)
            throw std::invalid_argument("Dimension mismatch in relaxed upper bound.");
        return bound_from_eigen(h1, r_eigen, bound_factor(scenario));
    }

} // namespace risemi
