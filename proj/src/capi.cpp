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

#include "risemi/risemi.h"
#include "risemi/experiments.hpp"

#include <fstream>
#include <sstream>

struct risemi_scenario
{
    risemi::ScenarioSpec spec;
    std::string json;
};

struct risemi_result
{
    risemi::RunResult result;
    std::string csv;
};

struct risemi_validation
{
    std::vector<risemi::CheckResult> checks;
    std::vector<std::string> lines;
};

struct risemi_geometry
{
    risemi::RisGeometry geometry;
};

struct risemi_correlation
{
    risemi::CorrelationMatrix matrix;
};

namespace
{
    thread_local std::string last_error;

    risemi_status set_error(risemi_status s, const std::string &msg)
    {
        last_error = msg;
        return s;
    }

    // Runs f, mapping exceptions to status codes.
    template <class F>
    risemi_status guard(F &&f)
    {
        try
        {
            last_error.clear();
            f();
            return RISEMI_OK;
        }
        catch (const risemi::ConfigError &e)
        {
            return set_error(RISEMI_ERR_CONFIG, e.what());
        }
        catch (const risemi::IntegrationError &e)
        {
            return set_error(RISEMI_ERR_NUMERIC, e.what());
        }
        catch (const risemi::NotCorrelationError &e)
        {
            return set_error(RISEMI_ERR_NUMERIC, e.what());
        }
        catch (const risemi::DegenerateError &e)
        {
            return set_error(RISEMI_ERR_NUMERIC, e.what());
        }
        catch (const std::invalid_argument &e)
        {
            return set_error(RISEMI_ERR_INVALID_ARGUMENT, e.what());
        }
        catch (const std::ios_base::failure &e)
        {
            return set_error(RISEMI_ERR_IO, e.what());
        }
        catch (const std::exception &e)
        {
            return set_error(RISEMI_ERR_INTERNAL, e.what());
        }
        catch (...)
        {
            return set_error(RISEMI_ERR_INTERNAL, "unknown error");
        }
    }

    risemi_status null_argument(const char *what)
    {
        return set_error(RISEMI_ERR_INVALID_ARGUMENT, std::string("null argument: ") + what);
    }

    void write_file(const char *path, const std::string &content)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw std::ios_base::failure(std::string("cannot open '") + path + "' for writing");
        f << content;
        f.close();
        if (!f)
            throw std::ios_base::failure(std::string("failed writing '") + path + "'");
    }
} // namespace

extern "C"
{
    const char *risemi_version(void) { return RISEMI_VERSION; }

    const char *risemi_last_error(void) { return last_error.c_str(); }

    const char *risemi_status_string(risemi_status status)
    {
        switch (status)
        {
        case RISEMI_OK:
            return "ok";
        case RISEMI_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case RISEMI_ERR_CONFIG:
            return "configuration error";
        case RISEMI_ERR_IO:
            return "I/O error";
        case RISEMI_ERR_NUMERIC:
            return "numerical error";
        case RISEMI_ERR_INTERNAL:
            return "internal error";
        }
        return "unknown status";
    }

    size_t risemi_builtin_count(void) { return risemi::builtin_scenario_names().size(); }

    const char *risemi_builtin_name(size_t index)
    {
        static const std::vector<std::string> names = risemi::builtin_scenario_names();
        return index < names.size() ? names[index].c_str() : nullptr;
    }

    const char *risemi_builtin_summary(size_t index)
    {
        static const std::vector<std::string> summaries = []
        {
            std::vector<std::string> s;
            for (const auto &n : risemi::builtin_scenario_names())
                s.push_back(risemi::builtin_scenario_summary(n));
            return s;
        }();
        return index < summaries.size() ? summaries[index].c_str() : nullptr;
    }

    risemi_status risemi_scenario_load(const char *name_or_path, risemi_scenario **out)
    {
        if (!name_or_path || !out)
            return null_argument("name_or_path/out");
        *out = nullptr;
        return guard([&]
                     {
            auto s = std::make_unique<risemi_scenario>();
            s->spec = risemi::resolve_scenario(name_or_path);
            s->json = risemi::scenario_to_json(s->spec);
            *out = s.release(); });
    }

    risemi_status risemi_scenario_parse(const char *json_text, risemi_scenario **out)
    {
        if (!json_text || !out)
            return null_argument("json_text/out");
        *out = nullptr;
        return guard([&]
                     {
            auto s = std::make_unique<risemi_scenario>();
            s->spec = risemi::parse_scenario(json_text);
            s->json = risemi::scenario_to_json(s->spec);
            *out = s.release(); });
    }

    const char *risemi_scenario_name(const risemi_scenario *scenario)
    {
        return scenario ? scenario->spec.name.c_str() : nullptr;
    }

    const char *risemi_scenario_json(const risemi_scenario *scenario)
    {
        return scenario ? scenario->json.c_str() : nullptr;
    }

    void risemi_scenario_free(risemi_scenario *scenario) { delete scenario; }

    void risemi_run_options_init(risemi_run_options *options)
    {
        if (options)
            *options = risemi_run_options{0, 0, 0, 0, 1, 0};
    }

    risemi_status risemi_run(const risemi_scenario *scenario, const risemi_run_options *options, risemi_result **out)
    {
        if (!scenario || !out)
            return null_argument("scenario/out");
        *out = nullptr;
        return guard([&]
                     {
            risemi::RunOptions ro;
            if (options)
            {
                if (options->has_seed)
                    ro.seed = options->seed;
                if (options->has_trials)
                {
                    if (options->trials == 0)
                        throw risemi::ConfigError("trials: must be at least 1");
                    ro.trials = static_cast<std::size_t>(options->trials);
                }
                ro.threads = options->threads == 0 ? 1 : options->threads;
                ro.record_walltime = options->record_walltime != 0;
            }
            auto r = std::make_unique<risemi_result>();
            r->result = risemi::run_scenario(scenario->spec, ro);
            std::ostringstream os;
            risemi::write_csv(r->result.rows, os);
            r->csv = os.str();
            *out = r.release(); });
    }

    size_t risemi_result_row_count(const risemi_result *result) { return result ? result->result.rows.size() : 0; }

    risemi_status risemi_result_row(const risemi_result *result, size_t index, risemi_row *out)
    {
        if (!result || !out)
            return null_argument("result/out");
        if (index >= result->result.rows.size())
            return set_error(RISEMI_ERR_INVALID_ARGUMENT, "row index out of range");
        const risemi::SweepRow &r = result->result.rows[index];
        *out = risemi_row{r.scenario.c_str(), r.strategy.c_str(), r.n, r.mean_linear, r.mean_db, r.stderr_linear,
                          r.n_trials, r.seed, r.walltime_s, r.error ? 1 : 0};
        return RISEMI_OK;
    }

    size_t risemi_result_error_count(const risemi_result *result) { return result ? result->result.errors.size() : 0; }

    const char *risemi_result_error(const risemi_result *result, size_t index)
    {
        return (result && index < result->result.errors.size()) ? result->result.errors[index].c_str() : nullptr;
    }

    size_t risemi_result_warning_count(const risemi_result *result) { return result ? result->result.warnings.size() : 0; }

    const char *risemi_result_warning(const risemi_result *result, size_t index)
    {
        return (result && index < result->result.warnings.size()) ? result->result.warnings[index].c_str() : nullptr;
    }

    const char *risemi_result_csv(const risemi_result *result) { return result ? result->csv.c_str() : nullptr; }

    const char *risemi_result_meta_json(const risemi_result *result)
    {
        return result ? result->result.meta_json.c_str() : nullptr;
    }

    risemi_status risemi_result_write_csv(const risemi_result *result, const char *path)
    {
        if (!result || !path)
            return null_argument("result/path");
        return guard([&]
                     { write_file(path, result->csv); });
    }

    risemi_status risemi_result_write_meta(const risemi_result *result, const char *path)
    {
        if (!result || !path)
            return null_argument("result/path");
        return guard([&]
                     { write_file(path, result->result.meta_json + "\n"); });
    }

    void risemi_result_free(risemi_result *result) { delete result; }

    risemi_status risemi_validate(int quick, uint32_t threads, risemi_validation **out)
    {
        if (!out)
            return null_argument("out");
        *out = nullptr;
        return guard([&]
                     {
            risemi::ValidationOptions o;
            o.quick = quick != 0;
            o.threads = threads == 0 ? 1 : threads;
            auto v = std::make_unique<risemi_validation>();
            v->checks = risemi::run_validation(o);
            for (const auto &c : v->checks)
                v->lines.push_back(risemi::format_check(c));
            *out = v.release(); });
    }

    size_t risemi_validation_count(const risemi_validation *v) { return v ? v->checks.size() : 0; }

    const char *risemi_validation_line(const risemi_validation *v, size_t index)
    {
        return (v && index < v->lines.size()) ? v->lines[index].c_str() : nullptr;
    }

    int risemi_validation_check_passed(const risemi_validation *v, size_t index)
    {
        return (v && index < v->checks.size() && v->checks[index].passed) ? 1 : 0;
    }

    int risemi_validation_all_passed(const risemi_validation *v)
    {
        if (!v)
            return 0;
        for (const auto &c : v->checks)
            if (!c.passed)
                return 0;
        return 1;
    }

    void risemi_validation_free(risemi_validation *v) { delete v; }

    risemi_status risemi_geometry_create(uint64_t n_elements, double element_area, double wavelength,
                                         risemi_geometry **out)
    {
        if (!out)
            return null_argument("out");
        *out = nullptr;
        return guard([&]
                     {
            auto g = std::make_unique<risemi_geometry>();
            g->geometry = risemi::element_positions(static_cast<std::size_t>(n_elements), element_area, wavelength);
            *out = g.release(); });
    }

    uint64_t risemi_geometry_size(const risemi_geometry *geometry) { return geometry ? geometry->geometry.n_elements : 0; }

    risemi_status risemi_geometry_position(const risemi_geometry *geometry, uint64_t index, double xyz[3])
    {
        if (!geometry || !xyz)
            return null_argument("geometry/xyz");
        if (index >= geometry->geometry.n_elements)
            return set_error(RISEMI_ERR_INVALID_ARGUMENT, "element index out of range");
        for (int k = 0; k < 3; ++k)
            xyz[k] = geometry->geometry.positions(k, index);
        return RISEMI_OK;
    }

    void risemi_geometry_free(risemi_geometry *geometry) { delete geometry; }

    risemi_status risemi_correlation_sinc(const risemi_geometry *geometry, risemi_correlation **out)
    {
        if (!geometry || !out)
            return null_argument("geometry/out");
        *out = nullptr;
        return guard([&]
                     {
            auto r = std::make_unique<risemi_correlation>();
            r->matrix = risemi::sinc_correlation(geometry->geometry);
            *out = r.release(); });
    }

    risemi_status risemi_correlation_quadrature(const risemi_geometry *geometry, int gaussian,
                                                double mean_azimuth, double mean_elevation,
                                                double std_azimuth, double std_elevation,
                                                uint64_t nodes_per_axis, risemi_correlation **out)
    {
        if (!geometry || !out)
            return null_argument("geometry/out");
        *out = nullptr;
        return guard([&]
                     {
            if (nodes_per_axis < 2)
                throw std::invalid_argument("nodes_per_axis must be at least 2");
            const auto rule = risemi::QuadratureRule::gauss_legendre(static_cast<std::size_t>(nodes_per_axis));
            const risemi::AngularDensity d = gaussian
                ? risemi::gaussian_density(mean_azimuth, mean_elevation, std_azimuth, std_elevation, rule)
                : risemi::isotropic_density();
            auto r = std::make_unique<risemi_correlation>();
            r->matrix = risemi::quadrature_correlation(geometry->geometry, d, rule);
            *out = r.release(); });
    }

    uint64_t risemi_correlation_dim(const risemi_correlation *r) { return r ? r->matrix.dim() : 0; }

    risemi_status risemi_correlation_entry(const risemi_correlation *r, uint64_t row, uint64_t col, double *re, double *im)
    {
        if (!r || !re || !im)
            return null_argument("r/re/im");
        if (row >= r->matrix.dim() || col >= r->matrix.dim())
            return set_error(RISEMI_ERR_INVALID_ARGUMENT, "matrix index out of range");
        const risemi::cx v = r->matrix.entries()(row, col);
        *re = v.real();
        *im = v.imag();
        return RISEMI_OK;
    }

    const char *risemi_correlation_warning(const risemi_correlation *r) { return r ? r->matrix.warning().c_str() : nullptr; }

    risemi_status risemi_correlation_write_csv(const risemi_correlation *r, const char *path)
    {
        if (!r || !path)
            return null_argument("r/path");
        return guard([&]
                     {
            std::ostringstream os;
            risemi::write_correlation_csv(r->matrix, os);
            write_file(path, os.str()); });
    }

    void risemi_correlation_free(risemi_correlation *r) { delete r; }

} // extern "C"
