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

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#ifndef RISEMI_VERSION
#define RISEMI_VERSION "unknown"
#endif

namespace risemi
{
    using json = nlohmann::json;

    namespace
    {
        constexpr std::size_t trial_block = 64;
        constexpr std::uint64_t rbar_seed_offset = 0x9E3779B97F4A7C15ull;
        const double nan = std::numeric_limits<double>::quiet_NaN();

        using steady = std::chrono::steady_clock;

        double seconds_since(steady::time_point t0)
        {
            return std::chrono::duration<double>(steady::now() - t0).count();
        }

        // Correlation matrices keyed by (N, area, wavelength, density, nodes); built once per run.
        class CorrelationCache
        {
        public:
            CorrelationCache(const ScenarioSpec &spec) : spec_(spec) {}

            CorrelationMatrix get(const RisGeometry &geo, const DensitySpec &d)
            {
                const AngularDensity density = make_density(d);
                char buf[128];
                std::snprintf(buf, sizeof buf, "N=%zu;nodes=%zu;", geo.n_elements, spec_.quadrature_nodes);
                const std::string key = buf + density.key();
                std::lock_guard lock(mutex_);
                auto it = cache_.find(key);
                if (it != cache_.end())
                    return it->second;
                CorrelationMatrix r = (d.kind == DensityKind::isotropic)
                                          ? sinc_correlation(geo)
                                          : quadrature_correlation(geo, density, rule());
                cache_.emplace(key, r);
                return r;
            }

        private:
            const QuadratureRule &rule()
            {
                if (rule_.size() == 0)
                    rule_ = QuadratureRule::gauss_legendre(spec_.quadrature_nodes);
                return rule_;
            }

            AngularDensity make_density(const DensitySpec &d)
            {
                if (d.kind == DensityKind::isotropic)
                    return isotropic_density();
                std::lock_guard lock(mutex_);
                return gaussian_density(d.mean_azimuth, d.mean_elevation, d.std_azimuth, d.std_elevation, rule());
            }

            const ScenarioSpec &spec_;
            std::mutex mutex_;
            QuadratureRule rule_;
            std::map<std::string, CorrelationMatrix> cache_;
        };

        bool is_sampled(StrategyKind s)
        {
            return s != StrategyKind::prop1_limit && s != StrategyKind::prop2_limit;
        }

        double normalizer(Normalization n, std::size_t elements)
        {
            const double x = static_cast<double>(elements);
            switch (n)
            {
            case Normalization::per_n:
                return x;
            case Normalization::per_n2:
                return x * x;
            default:
                return 1.0;
            }
        }

        std::string row_label(StrategyKind s, const CaseSpec &c)
        {
            return c.label.empty() ? std::string(to_string(s)) : std::string(to_string(s)) + "@" + c.label;
        }

        // Per-trial values for every sampled strategy of one (case, N) pair.
        struct TrialTable
        {
            std::vector<StrategyKind> strategies;
            std::vector<std::vector<double>> values; // [strategy][trial]
            std::vector<std::size_t> iterations;     // emi-aware
            std::vector<unsigned char> converged;    // emi-aware
            std::vector<unsigned char> unbounded;    // relaxed bound
            std::vector<std::string> error;          // per strategy, first failing trial
            std::vector<std::size_t> error_trial;
            std::mutex mutex;

            std::size_t index(StrategyKind s) const
            {
                return static_cast<std::size_t>(std::find(strategies.begin(), strategies.end(), s) - strategies.begin());
            }
            bool has(StrategyKind s) const { return index(s) < strategies.size(); }

            void record_error(std::size_t strategy, std::size_t trial, const std::string &msg)
            {
                std::lock_guard lock(mutex);
                if (error[strategy].empty() || trial < error_trial[strategy])
                {
                    error[strategy] = msg;
                    error_trial[strategy] = trial;
                }
            }
        };

        struct Workload
        {
            const ScenarioSpec &spec;
            const LinkScenario &scenario;
            const CorrelationMatrix &r1, &r2;
            const CorrelationMatrix *r; // nullptr without EMI
            arma::vec gamma;
            TrialTable &table;
        };

        void run_block(const Workload &w, std::size_t first, std::size_t count)
        {
            TrialTable &t = w.table;
            const std::uint64_t seed = w.spec.master_seed;
            const ChannelBatch batch = draw_channel_batch(w.scenario, w.r1.sqrt_factor(), w.r2.sqrt_factor(), seed, first, count);
            const std::size_t n = batch.h1.n_rows;

            const bool need_g = t.has(StrategyKind::noise_optimal) || t.has(StrategyKind::emi_aware);
            std::vector<PhaseConfig> configs(need_g ? count : 0);
            arma::cx_mat g(need_g ? n : 0, need_g ? count : 0);

            for (std::size_t k = 0; k < count; ++k)
            {
                const std::size_t trial = first + k;
                const ChannelDraw d = batch.trial(k, seed);
                if (t.has(StrategyKind::no_emi))
                    t.values[t.index(StrategyKind::no_emi)][trial] = snr_no_emi(w.scenario, d, w.gamma);
                if (t.has(StrategyKind::no_ris))
                    t.values[t.index(StrategyKind::no_ris)][trial] = snr_no_ris(w.scenario, d.h_d);
                if (need_g)
                {
                    configs[k] = noise_optimal_phases(d, w.gamma);
                    g.col(k) = effective_channel(configs[k], d.h2);
                }
                if (t.has(StrategyKind::relaxed_bound))
                {
                    const std::size_t s = t.index(StrategyKind::relaxed_bound);
                    try
                    {
                        const RelaxedBound b = relaxed_upper_bound_whitened(d.h1, w.r->eigen(), w.scenario);
                        t.values[s][trial] = b.restricted_value;
                        t.unbounded[trial] = b.bounded ? 0 : 1;
                    }
                    catch (const std::exception &e)
                    {
                        t.values[s][trial] = nan;
                        t.record_error(s, trial, e.what());
                    }
                }
            }

            if (t.has(StrategyKind::noise_optimal))
            {
                const std::size_t s = t.index(StrategyKind::noise_optimal);
                const arma::cx_mat rg = (w.r != nullptr) ? arma::cx_mat(w.r->entries() * g) : arma::cx_mat();
                for (std::size_t k = 0; k < count; ++k)
                {
                    const std::size_t trial = first + k;
                    const cx coherent = arma::cdot(g.col(k), batch.h1.col(k)) + batch.h_d[k];
                    const double quad = (w.r != nullptr) ? std::real(arma::cdot(g.col(k), rg.col(k))) : 0.0;
                    try
                    {
                        t.values[s][trial] = snr_from_terms(w.scenario, std::norm(coherent), quad, Strategy::noise_optimal).snr_linear;
                    }
                    catch (const std::exception &e)
                    {
                        t.values[s][trial] = nan;
                        t.record_error(s, trial, e.what());
                    }
                }
            }

            if (t.has(StrategyKind::emi_aware))
            {
                const std::size_t s = t.index(StrategyKind::emi_aware);
                for (std::size_t k = 0; k < count; ++k)
                {
                    const std::size_t trial = first + k;
                    try
                    {
                        const ChannelDraw d = batch.trial(k, seed);
                        const OptimizerProblem p = build_problem(w.scenario, d, *w.r, w.gamma);
                        const OptimizerResult res = projected_gradient(p, configs[k], w.spec.optimizer);
                        t.values[s][trial] = snr_with_emi(w.scenario, res.phases, d, *w.r, Strategy::emi_aware).snr_linear;
                        t.iterations[trial] = res.iterations;
                        t.converged[trial] = res.converged ? 1 : 0;
                    }
                    catch (const std::exception &e)
                    {
                        t.values[s][trial] = nan;
                        t.record_error(s, trial, e.what());
                    }
                }
            }
        }

        void run_trials(const Workload &w, std::size_t n_trials, std::size_t threads)
        {
            const std::size_t n_blocks = (n_trials + trial_block - 1) / trial_block;
            std::atomic<std::size_t> next{0};
            std::mutex fatal_mutex;
            std::exception_ptr fatal;
            auto worker = [&]
            {
                for (;;)
                {
                    const std::size_t b = next.fetch_add(1);
                    if (b >= n_blocks)
                        return;
                    const std::size_t first = b * trial_block;
                    try
                    {
                        run_block(w, first, std::min(trial_block, n_trials - first));
                    }
                    catch (...)
                    {
                        std::lock_guard lock(fatal_mutex);
                        if (!fatal)
                            fatal = std::current_exception();
                    }
                }
            };
            const std::size_t k = std::max<std::size_t>(1, std::min(threads, n_blocks));
            if (k == 1)
                worker();
            else
            {
                std::vector<std::thread> pool;
                for (std::size_t i = 0; i < k; ++i)
                    pool.emplace_back(worker);
                for (auto &th : pool)
                    th.join();
            }
            if (fatal)
                std::rethrow_exception(fatal);
        }

        // Mean and standard error, summed in trial order.
        void mean_stderr(const std::vector<double> &v, double &mean, double &se)
        {
            const double n = static_cast<double>(v.size());
            double sum = 0.0;
            for (double x : v)
                sum += x;
            mean = sum / n;
            if (v.size() < 2 || !std::isfinite(mean))
            {
                se = v.size() < 2 ? 0.0 : nan;
                return;
            }
            double ss = 0.0;
            for (double x : v)
                ss += (x - mean) * (x - mean);
            se = std::sqrt(ss / (n - 1.0) / n);
        }

        // Aggregates normalized per-trial values. With dB averaging the standard error is carried to
        // linear units by the delta method.
        void aggregate(std::vector<double> v, double norm, Averaging average, double &mean, double &se)
        {
            for (double &x : v)
                x /= norm;
            if (average == Averaging::linear)
            {
                mean_stderr(v, mean, se);
                return;
            }
            for (double &x : v)
                x = linear_to_db(x);
            double mean_db = 0.0, se_db = 0.0;
            mean_stderr(v, mean_db, se_db);
            mean = db_to_linear(mean_db);
            se = se_db * std::log(10.0) / 10.0 * mean;
        }

        void push_unique(std::vector<std::string> &list, const std::string &msg)
        {
            if (std::find(list.begin(), list.end(), msg) == list.end())
                list.push_back(msg);
        }
    } // namespace

    RunResult run_scenario(const ScenarioSpec &input, const RunOptions &options)
    {
        RunResult out;
        out.spec = input;
        ScenarioSpec &spec = out.spec;
        if (options.seed)
            spec.master_seed = *options.seed;
        if (options.trials)
            spec.n_trials = *options.trials;
        spec.validate();

        const auto t_run = steady::now();
        CorrelationCache cache(spec);

        struct Keyed
        {
            std::size_t case_index, strategy_index, n_index;
            SweepRow row;
        };
        std::vector<Keyed> keyed;

        json asymptotes = json::array();
        json diagnostics = json::array();
        json timings = json::array();

        for (std::size_t ci = 0; ci < spec.cases.size(); ++ci)
        {
            const CaseSpec &c = spec.cases[ci];
            const LinkScenario scenario = make_scenario(spec.link_parameters(c));

            for (std::size_t ni = 0; ni < spec.n_sweep.size(); ++ni)
            {
                const std::size_t n = spec.n_sweep[ni];
                const auto t0 = steady::now();
                const double norm = normalizer(spec.normalize, n);
                const std::string where = "case '" + c.label + "', N=" + std::to_string(n);

                auto emit = [&](std::size_t si, double mean, double se, std::size_t trials, double wall, bool error)
                {
                    SweepRow row;
                    row.scenario = spec.name;
                    row.strategy = row_label(c.strategies[si], c);
                    row.n = n;
                    row.mean_linear = error ? nan : mean;
                    row.stderr_linear = error ? nan : se;
                    row.mean_db = error ? nan : linear_to_db(row.mean_linear);
                    row.n_trials = trials;
                    row.seed = spec.master_seed;
                    row.walltime_s = options.record_walltime ? wall : 0.0;
                    row.error = error;
                    keyed.push_back({ci, si, ni, row});
                };

                json diag;
                diag["case"] = c.label;
                diag["N"] = n;

                // Geometry and correlation matrices. A failure here flags every row of this (case, N).
                RisGeometry geo;
                CorrelationMatrix r1, r2, r;
                bool have_r = false;
                std::string setup_error;
                try
                {
                    geo = element_positions(n, spec.element_area, spec.wavelength);
                    r1 = cache.get(geo, spec.h1_density);
                    r2 = cache.get(geo, spec.h2_density);
                    if (c.rho_db)
                    {
                        r = cache.get(geo, c.emi_density);
                        have_r = true;
                    }
                    for (const CorrelationMatrix *m : {&r1, &r2, have_r ? &r : nullptr})
                        if (m != nullptr && !m->warning().empty())
                            setup_error = m->description() + ": " + m->warning();
                }
                catch (const std::exception &e)
                {
                    setup_error = e.what();
                }
                if (!setup_error.empty())
                {
                    push_unique(out.errors, where + ": " + setup_error);
                    for (std::size_t si = 0; si < c.strategies.size(); ++si)
                        emit(si, nan, nan, 0, seconds_since(t0), true);
                    diag["error"] = setup_error;
                    diagnostics.push_back(diag);
                    continue;
                }

                // Monte Carlo strategies
                TrialTable table;
                for (auto s : c.strategies)
                    if (is_sampled(s))
                        table.strategies.push_back(s);
                if (!table.strategies.empty())
                {
                    const std::size_t trials = spec.n_trials;
                    table.values.assign(table.strategies.size(), std::vector<double>(trials, nan));
                    table.error.assign(table.strategies.size(), std::string());
                    table.error_trial.assign(table.strategies.size(), 0);
                    if (table.has(StrategyKind::emi_aware))
                    {
                        table.iterations.assign(trials, 0);
                        table.converged.assign(trials, 0);
                        if (scenario.beta_d > 0.0)
                            push_unique(out.warnings, where + ": emi-aware ignores the direct path while optimizing");
                    }
                    if (table.has(StrategyKind::relaxed_bound))
                    {
                        table.unbounded.assign(trials, 0);
                        r.eigen();
                    }

                    const Workload w{spec, scenario, r1, r2, have_r ? &r : nullptr, scenario.amplitudes_for(n), table};
                    try
                    {
                        run_trials(w, trials, options.threads);
                    }
                    catch (const std::exception &e)
                    {
                        for (std::size_t s = 0; s < table.strategies.size(); ++s)
                            if (table.error[s].empty())
                                table.record_error(s, 0, e.what());
                    }
                    const double wall = seconds_since(t0);

                    for (std::size_t si = 0; si < c.strategies.size(); ++si)
                    {
                        if (!is_sampled(c.strategies[si]))
                            continue;
                        const std::size_t s = table.index(c.strategies[si]);
                        if (!table.error[s].empty())
                        {
                            push_unique(out.errors, where + ", " + to_string(c.strategies[si]) + ", trial " +
                                                        std::to_string(table.error_trial[s]) + ": " + table.error[s]);
                            emit(si, nan, nan, trials, wall, true);
                            continue;
                        }
                        double mean = 0.0, se = 0.0;
                        aggregate(table.values[s], norm, spec.average, mean, se);
                        emit(si, mean, se, trials, wall, false);
                    }

                    if (table.has(StrategyKind::emi_aware))
                    {
                        std::size_t it_sum = 0, conv = 0;
                        for (std::size_t k = 0; k < trials; ++k)
                        {
                            it_sum += table.iterations[k];
                            conv += table.converged[k];
                        }
                        diag["optimizer_mean_iterations"] = static_cast<double>(it_sum) / static_cast<double>(trials);
                        diag["optimizer_converged_trials"] = conv;
                    }
                    if (table.has(StrategyKind::relaxed_bound))
                    {
                        std::size_t unb = 0;
                        for (auto u : table.unbounded)
                            unb += u;
                        diag["relaxed_bound_unbounded_trials"] = unb;
                        diag["relaxed_bound_residual_tolerance"] = relaxed_bound_residual_tolerance;
                        if (unb > 0)
                            push_unique(out.warnings, where + ": relaxed bound unbounded in " + std::to_string(unb) +
                                                          " trials (h1 leaves the numerical range of R); restricted values averaged");
                    }
                }

                // Asymptotic rows
                for (std::size_t si = 0; si < c.strategies.size(); ++si)
                {
                    const StrategyKind s = c.strategies[si];
                    if (is_sampled(s))
                        continue;
                    const auto ta = steady::now();
                    try
                    {
                        if (s == StrategyKind::prop1_limit)
                        {
                            const double lim = prop1_limit(scenario, geo);
                            emit(si, lim * static_cast<double>(n) * static_cast<double>(n) / norm, 0.0, 0, seconds_since(ta), false);
                            asymptotes.push_back({{"case", c.label}, {"N", n}, {"kind", "prop1"},
                                                  {"snr_over_n2", lim}, {"snr_over_n2_db", linear_to_db(lim)}});
                        }
                        else
                        {
                            const std::size_t samples = std::max(spec.rbar_min_trials, 10 * n);
                            const EffectiveCorrelationEstimate rbar = estimate_effective_correlation(
                                scenario, geo, r1, r2, samples, spec.master_seed + rbar_seed_offset);
                            const AlphaEstimate a = estimate_alpha(r, rbar);
                            const double lim = prop2_limit(scenario, a.alpha);
                            emit(si, lim * static_cast<double>(n) / norm, 0.0, samples, seconds_since(ta), false);
                            asymptotes.push_back({{"case", c.label}, {"N", n}, {"kind", "prop2"}, {"alpha", a.alpha},
                                                  {"alpha_imag_residual", a.imag_residual}, {"rbar_samples", samples},
                                                  {"snr_over_n", lim}, {"snr_over_n_db", linear_to_db(lim)}});
                        }
                    }
                    catch (const std::exception &e)
                    {
                        push_unique(out.errors, where + ", " + to_string(s) + ": " + e.what());
                        emit(si, nan, nan, 0, seconds_since(ta), true);
                    }
                }

                diagnostics.push_back(diag);
                timings.push_back({{"case", c.label}, {"N", n}, {"seconds", seconds_since(t0)}});
            }
        }

        std::sort(keyed.begin(), keyed.end(), [](const Keyed &a, const Keyed &b)
                  { return std::tie(a.case_index, a.strategy_index, a.n_index) <
                           std::tie(b.case_index, b.strategy_index, b.n_index); });
        for (auto &k : keyed)
            out.rows.push_back(std::move(k.row));

        json meta;
        meta["scenario"] = spec.name;
        meta["version"] = RISEMI_VERSION;
        meta["spec"] = json::parse(scenario_to_json(spec));
        meta["run"] = {{"master_seed", spec.master_seed}, {"n_trials", spec.n_trials},
                       {"threads", options.threads}, {"record_walltime", options.record_walltime},
                       {"trial_block", trial_block}};
        meta["csv_header"] = csv_header;
        meta["asymptotes"] = asymptotes;
        meta["diagnostics"] = diagnostics;
        meta["warnings"] = out.warnings;
        meta["errors"] = out.errors;
        meta["timings"] = timings;
        meta["total_seconds"] = seconds_since(t_run);
        out.meta_json = meta.dump(2);
        return out;
    }

    void write_csv(const std::vector<SweepRow> &rows, std::ostream &os)
    {
        os << csv_header << '\n';
        char buf[512];
        for (const auto &r : rows)
        {
            std::snprintf(buf, sizeof buf, "%s,%s,%zu,%.17g,%.17g,%.17g,%zu,%llu,%.17g\n",
                          r.scenario.c_str(), r.strategy.c_str(), r.n, r.mean_linear, r.mean_db, r.stderr_linear,
                          r.n_trials, static_cast<unsigned long long>(r.seed), r.walltime_s);
            os << buf;
        }
    }

} // namespace risemi
