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

#include "risemi/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace risemi
{
    namespace
    {
        constexpr std::uint64_t validation_seed = 20260101;

        LinkScenario reference_scenario(std::optional<double> rho_db)
        {
            LinkParameters p;
            p.rho_db = rho_db;
            return make_scenario(p);
        }

        const SweepRow *find_row(const RunResult &r, const std::string &strategy, std::size_t n)
        {
            for (const auto &row : r.rows)
                if (row.strategy == strategy && row.n == n)
                {
                    if (row.error)
                        throw std::runtime_error(strategy + " at N=" + std::to_string(n) + " failed: " +
                                                 (r.errors.empty() ? std::string("see meta") : r.errors.front()));
                    return &row;
                }
            throw std::runtime_error("missing row " + strategy + " at N=" + std::to_string(n));
        }

        std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
        {
            char buf[256];
            std::snprintf(buf, sizeof buf, f, a, b, c, d);
            return buf;
        }

        // Sample covariance of `count` vectors drawn by `draw`, divided by `scale`, against `target`.
        template <class Draw>
        double max_covariance_error(const arma::cx_mat &target, double scale, std::size_t count, Draw &&draw)
        {
            const std::size_t n = target.n_rows;
            arma::cx_mat samples(n, count);
            for (std::size_t t = 0; t < count; ++t)
                samples.col(t) = draw(t);
            const arma::cx_mat cov = samples * samples.t() / (scale * static_cast<double>(count));
            return arma::abs(cov - target).max();
        }

        CheckResult check_covariance(bool quick)
        {
            CheckResult c;
            c.name = "emi-covariance";
            c.threshold = 0.05;
            c.underpowered = quick;
            const std::size_t count = quick ? 10000 : 100000;
            const LinkScenario sc = reference_scenario(20.0);
            const RisGeometry geo = element_positions(16, sc.element_area, 0.1);
            const CorrelationMatrix r = sinc_correlation(geo);
            const double scale = sc.element_area * sc.emi_intensity;
            c.measured = max_covariance_error(r.entries(), scale, count, [&](std::size_t t)
                                              {
                RngStream rng(validation_seed, t, StreamTag::emi, 16);
                return sample_emi(sc, r.sqrt_factor(), rng); });
            c.passed = c.measured <= c.threshold;
            c.detail = "max |cov/(A sigma^2) - R_iso| over " + std::to_string(count) + " EMI samples, N=16";
            return c;
        }

        CheckResult check_channel_moments(bool quick)
        {
            CheckResult c;
            c.name = "channel-covariance";
            c.threshold = 0.05;
            c.underpowered = quick;
            const std::size_t count = quick ? 4000 : 20000;
            const LinkScenario sc = reference_scenario(std::nullopt);
            const RisGeometry geo = element_positions(16, sc.element_area, 0.1);
            const CorrelationMatrix r = sinc_correlation(geo);
            const ChannelBatch b = draw_channel_batch(sc, r.sqrt_factor(), r.sqrt_factor(), validation_seed, 0, count);
            const double scale = sc.element_area * sc.beta1;
            c.measured = max_covariance_error(r.entries(), scale, count, [&](std::size_t t)
                                              { return arma::cx_vec(b.h1.col(t)); });
            c.passed = c.measured <= c.threshold;
            c.detail = "max |cov(h1)/(A beta1) - R1| over " + std::to_string(count) + " draws, N=16";
            return c;
        }

        CheckResult check_quadrature(const ValidationOptions &o)
        {
            CheckResult c;
            c.name = "quadrature-vs-sinc";
            c.threshold = 1e-6;
            const QuadratureRule rule = QuadratureRule::gauss_legendre(96);
            const std::size_t sizes[] = {4, 16, 64};
            for (std::size_t n : sizes)
            {
                const RisGeometry geo = element_positions(n, 6.25e-4, 0.1);
                const CorrelationMatrix q = quadrature_correlation(geo, isotropic_density(), rule);
                const CorrelationMatrix s = o.closed_form ? o.closed_form(geo) : sinc_correlation(geo);
                c.measured = std::max(c.measured, static_cast<double>(arma::abs(q.entries() - s.entries()).max()));
            }
            c.passed = c.measured <= c.threshold;
            c.detail = "max entrywise |R_quad - R_sinc| for N in {4, 16, 64}, 96x96 nodes";
            return c;
        }

        CheckResult check_prop1(const ValidationOptions &o)
        {
            CheckResult c;
            c.name = "prop1-convergence";
            c.threshold = 0.10;
            c.underpowered = o.quick;
            ScenarioSpec spec = builtin_scenario("prop1");
            const std::size_t small = o.quick ? 16 : 64, large = o.quick ? 64 : 1024;
            spec.n_sweep = {small, large};
            spec.n_trials = o.quick ? 50 : 200;
            spec.master_seed = validation_seed;
            RunOptions ro;
            ro.threads = o.threads;
            const RunResult r = run_scenario(spec, ro);
            const double ls = find_row(r, "no-emi", small)->mean_linear / find_row(r, "prop1-limit", small)->mean_linear;
            const double ll = find_row(r, "no-emi", large)->mean_linear / find_row(r, "prop1-limit", large)->mean_linear;
            c.measured = std::abs(ll - 1.0);
            c.passed = c.measured <= c.threshold && std::abs(ll - 1.0) < std::abs(ls - 1.0);
            c.detail = fmt("mean(SNRbar)/N^2 / limit = %.4f at N=%g, %.4f at N=%g", ls, double(small), ll, double(large)) +
                       ", " + std::to_string(spec.n_trials) + " trials";
            return c;
        }

        CheckResult check_prop2(const ValidationOptions &o)
        {
            CheckResult c;
            c.name = "prop2-convergence";
            c.threshold = 0.10;
            c.underpowered = o.quick;
            ScenarioSpec spec = builtin_scenario("fig4");
            const std::size_t n = o.quick ? 64 : 1024;
            spec.n_sweep = {n};
            spec.n_trials = o.quick ? 100 : 1000;
            spec.master_seed = validation_seed;
            RunOptions ro;
            ro.threads = o.threads;
            const RunResult r = run_scenario(spec, ro);
            std::ostringstream detail;
            detail << "SNR/N / limit at N=" << n << ":";
            c.passed = true;
            for (const char *label : {"bd-inf", "bd-100"})
            {
                const double ratio = find_row(r, std::string("noise-optimal-with-emi@") + label, n)->mean_linear /
                                     find_row(r, std::string("prop2-limit@") + label, n)->mean_linear;
                c.measured = std::max(c.measured, std::abs(ratio - 1.0));
                c.passed = c.passed && std::abs(ratio - 1.0) <= c.threshold;
                detail << ' ' << label << '=' << fmt("%.4f", ratio);
            }
            c.detail = detail.str();
            return c;
        }

        CheckResult check_optimizer_oracle(bool quick)
        {
            CheckResult c;
            c.name = "optimizer-closed-form";
            c.threshold = 1e-6;
            c.underpowered = quick;
            const std::size_t instances = quick ? 20 : 100;
            LinkParameters lp;
            lp.emi_intensity = 0.0;
            const LinkScenario sc = make_scenario(lp);
            for (std::size_t n : {4, 16})
            {
                const RisGeometry geo = element_positions(n, sc.element_area, 0.1);
                const CorrelationMatrix r = sinc_correlation(geo);
                const arma::vec gamma = sc.amplitudes_for(n);
                for (std::size_t t = 0; t < instances; ++t)
                {
                    const ChannelDraw d = draw_channels(sc, r.sqrt_factor(), r.sqrt_factor(), validation_seed, t);
                    RngStream rng(validation_seed, t, StreamTag::emi, n);
                    arma::cx_vec init(n);
                    rng.fill_standard_complex_normal(init.memptr(), n);
                    const OptimizerResult res = projected_gradient(build_problem(sc, d, r, gamma),
                                                                   PhaseConfig::from_phasors(init, gamma));
                    const double ref = snr_no_emi(sc, d, gamma);
                    c.measured = std::max(c.measured, std::abs(res.snr - ref) / ref);
                }
            }
            c.passed = c.measured <= c.threshold;
            c.detail = "max relative gap to SNRbar with sigma^2 = 0, random starts, " + std::to_string(instances) +
                       " instances at N in {4, 16}";
            return c;
        }

        CheckResult check_optimizer_sandwich(const ValidationOptions &o)
        {
            CheckResult c;
            c.name = "optimizer-sandwich";
            c.underpowered = o.quick;
            ScenarioSpec spec = builtin_scenario("fig6");
            spec.n_sweep = o.quick ? std::vector<std::size_t>{16} : std::vector<std::size_t>{16, 64};
            spec.n_trials = o.quick ? 50 : 200;
            spec.master_seed = validation_seed;
            RunOptions ro;
            ro.threads = o.threads;
            const RunResult r = run_scenario(spec, ro);
            c.passed = true;
            std::ostringstream detail;
            for (std::size_t n : spec.n_sweep)
            {
                const double lo = find_row(r, "noise-optimal-with-emi", n)->mean_linear;
                const double mid = find_row(r, "emi-aware", n)->mean_linear;
                const double hi = find_row(r, "relaxed-bound", n)->mean_linear;
                c.passed = c.passed && lo <= mid && mid <= hi;
                c.measured = mid / lo;
                detail << "N=" << n << ": " << fmt("%.4g <= %.4g <= %.4g", lo, mid, hi) << "; ";
            }
            c.threshold = 1.0;
            c.detail = detail.str() + std::to_string(spec.n_trials) + " trials";
            return c;
        }

        template <class F>
        CheckResult guarded(const std::string &name, F &&f)
        {
            try
            {
                return f();
            }
            catch (const std::exception &e)
            {
                CheckResult c;
                c.name = name;
                c.passed = false;
                c.measured = std::numeric_limits<double>::quiet_NaN();
                c.detail = std::string("exception: ") + e.what();
                return c;
            }
        }
    } // namespace

    std::vector<CheckResult> run_validation(const ValidationOptions &o)
    {
        std::vector<CheckResult> out;
        out.push_back(guarded("emi-covariance", [&] { return check_covariance(o.quick); }));
        out.push_back(guarded("channel-covariance", [&] { return check_channel_moments(o.quick); }));
        out.push_back(guarded("quadrature-vs-sinc", [&] { return check_quadrature(o); }));
        out.push_back(guarded("optimizer-closed-form", [&] { return check_optimizer_oracle(o.quick); }));
        out.push_back(guarded("optimizer-sandwich", [&] { return check_optimizer_sandwich(o); }));
        out.push_back(guarded("prop1-convergence", [&] { return check_prop1(o); }));
        out.push_back(guarded("prop2-convergence", [&] { return check_prop2(o); }));
        return out;
    }

    std::string format_check(const CheckResult &c)
    {
        std::ostringstream os;
        os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": measured=" << fmt("%.6g", c.measured)
           << " threshold=" << fmt("%.6g", c.threshold) << " (" << c.detail << ")";
        if (c.underpowered)
            os << " [underpowered]";
        return os.str();
    }

} // namespace risemi
