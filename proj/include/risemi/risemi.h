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

#ifndef RISEMI_H
#define RISEMI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RISEMI_BUILDING_LIBRARY)
#define RISEMI_API __declspec(dllexport)
#else
#define RISEMI_API __declspec(dllimport)
#endif
#else
#define RISEMI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C"
{
#endif

    typedef enum risemi_status
    {
        RISEMI_OK = 0,
        RISEMI_ERR_INVALID_ARGUMENT = 1, /* null handle, bad dimension, out-of-range value */
        RISEMI_ERR_CONFIG = 2,           /* malformed or inconsistent scenario */
        RISEMI_ERR_IO = 3,               /* file could not be read or written */
        RISEMI_ERR_NUMERIC = 4,          /* integration failure, not a correlation matrix, degenerate problem */
        RISEMI_ERR_INTERNAL = 5
    } risemi_status;

    typedef struct risemi_scenario risemi_scenario;
    typedef struct risemi_result risemi_result;
    typedef struct risemi_validation risemi_validation;
    typedef struct risemi_geometry risemi_geometry;
    typedef struct risemi_correlation risemi_correlation;

    /* Library version, e.g. "0.1.0". */
    RISEMI_API const char *risemi_version(void);

    /* Message of the last failed call on this thread ("" if none). */
    RISEMI_API const char *risemi_last_error(void);

    RISEMI_API const char *risemi_status_string(risemi_status status);

    /* Built-in scenarios */
    RISEMI_API size_t risemi_builtin_count(void);
    RISEMI_API const char *risemi_builtin_name(size_t index);    /* NULL if out of range */
    RISEMI_API const char *risemi_builtin_summary(size_t index); /* NULL if out of range */

    /* Scenarios: a built-in name or a path to a JSON document. */
    RISEMI_API risemi_status risemi_scenario_load(const char *name_or_path, risemi_scenario **out);
    RISEMI_API risemi_status risemi_scenario_parse(const char *json_text, risemi_scenario **out);
    RISEMI_API const char *risemi_scenario_name(const risemi_scenario *scenario);
    /* Resolved JSON form; owned by the handle. */
    RISEMI_API const char *risemi_scenario_json(const risemi_scenario *scenario);
    RISEMI_API void risemi_scenario_free(risemi_scenario *scenario);

    typedef struct risemi_run_options
    {
        int has_seed;
        uint64_t seed;
        int has_trials;
        uint64_t trials;
        uint32_t threads;    /* 0 or 1: single worker */
        int record_walltime; /* non-zero: fill walltime_s (CSV no longer byte-reproducible) */
    } risemi_run_options;

    RISEMI_API void risemi_run_options_init(risemi_run_options *options);

    RISEMI_API risemi_status risemi_run(const risemi_scenario *scenario, const risemi_run_options *options,
                                        risemi_result **out);

    typedef struct risemi_row
    {
        const char *scenario; /* owned by the result handle */
        const char *strategy;
        uint64_t n;
        double mean_snr_linear;
        double mean_snr_db;
        double stderr_linear;
        uint64_t n_trials;
        uint64_t seed;
        double walltime_s;
        int error;
    } risemi_row;

    RISEMI_API size_t risemi_result_row_count(const risemi_result *result);
    RISEMI_API risemi_status risemi_result_row(const risemi_result *result, size_t index, risemi_row *out);
    RISEMI_API size_t risemi_result_error_count(const risemi_result *result);
    RISEMI_API const char *risemi_result_error(const risemi_result *result, size_t index);
    RISEMI_API size_t risemi_result_warning_count(const risemi_result *result);
    RISEMI_API const char *risemi_result_warning(const risemi_result *result, size_t index);
    RISEMI_API const char *risemi_result_csv(const risemi_result *result);
    RISEMI_API const char *risemi_result_meta_json(const risemi_result *result);
    RISEMI_API risemi_status risemi_result_write_csv(const risemi_result *result, const char *path);
    RISEMI_API risemi_status risemi_result_write_meta(const risemi_result *result, const char *path);
    RISEMI_API void risemi_result_free(risemi_result *result);

    /* Validation suite */
    RISEMI_API risemi_status risemi_validate(int quick, uint32_t threads, risemi_validation **out);
    RISEMI_API size_t risemi_validation_count(const risemi_validation *v);
    /* One formatted line per check; NULL if out of range. */
    RISEMI_API const char *risemi_validation_line(const risemi_validation *v, size_t index);
    RISEMI_API int risemi_validation_check_passed(const risemi_validation *v, size_t index);
    RISEMI_API int risemi_validation_all_passed(const risemi_validation *v);
    RISEMI_API void risemi_validation_free(risemi_validation *v);

    /* Geometry and correlation matrices */
    RISEMI_API risemi_status risemi_geometry_create(uint64_t n_elements, double element_area, double wavelength,
                                                    risemi_geometry **out);
    RISEMI_API uint64_t risemi_geometry_size(const risemi_geometry *geometry);
    /* Position of element index (0-based), meters. */
    RISEMI_API risemi_status risemi_geometry_position(const risemi_geometry *geometry, uint64_t index, double xyz[3]);
    RISEMI_API void risemi_geometry_free(risemi_geometry *geometry);

    RISEMI_API risemi_status risemi_correlation_sinc(const risemi_geometry *geometry, risemi_correlation **out);
    /* Isotropic (gaussian == 0) or truncated Gaussian density, angles in radians. */
    RISEMI_API risemi_status risemi_correlation_quadrature(const risemi_geometry *geometry, int gaussian,
                                                           double mean_azimuth, double mean_elevation,
                                                           double std_azimuth, double std_elevation,
                                                           uint64_t nodes_per_axis, risemi_correlation **out);
    RISEMI_API uint64_t risemi_correlation_dim(const risemi_correlation *r);
    RISEMI_API risemi_status risemi_correlation_entry(const risemi_correlation *r, uint64_t row, uint64_t col,
                                                      double *re, double *im);
    /* Non-empty when the quadrature self-convergence check failed. */
    RISEMI_API const char *risemi_correlation_warning(const risemi_correlation *r);
    RISEMI_API risemi_status risemi_correlation_write_csv(const risemi_correlation *r, const char *path);
    RISEMI_API void risemi_correlation_free(risemi_correlation *r);

#ifdef __cplusplus
}
#endif

#endif
