/*
 *  Copyright 2026 The genlaw Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#ifndef GENLAW_H
#define GENLAW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GENLAW_BUILDING)
#define GENLAW_API __declspec(dllexport)
#else
#define GENLAW_API __declspec(dllimport)
#endif
#else
#define GENLAW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes of the command-line tool. */
typedef enum genlaw_status {
    GENLAW_OK = 0,
    GENLAW_ERR_INTERNAL = 1,
    GENLAW_ERR_CONFIG = 2,
    GENLAW_ERR_DATA = 3,
    GENLAW_ERR_NUMERICAL = 4
} genlaw_status;

/* Filters for evaluation; GENLAW_ANY disables the filter. */
enum { GENLAW_ANY = -1, GENLAW_CLEAR = 0, GENLAW_CAMO = 1, GENLAW_TRAIN = 0, GENLAW_TEST = 1 };

typedef struct genlaw_dataset genlaw_dataset;
typedef struct genlaw_classifier genlaw_classifier;
typedef struct genlaw_activations genlaw_activations;

GENLAW_API const char* genlaw_version(void);

/* Message of the last failed call on this thread; empty after success. */
GENLAW_API const char* genlaw_last_error(void);

/* config_json is a pipeline config document (may be NULL for defaults). */
GENLAW_API genlaw_status genlaw_dataset_generate(const char* config_json, genlaw_dataset** out);
GENLAW_API genlaw_status genlaw_dataset_load(const char* path, genlaw_dataset** out);
GENLAW_API genlaw_status genlaw_dataset_save(const genlaw_dataset* ds, const char* path);
GENLAW_API genlaw_status genlaw_dataset_shape(const genlaw_dataset* ds, size_t* num_samples, int* num_classes,
                                              int* feature_dim);
GENLAW_API void genlaw_dataset_free(genlaw_dataset* ds);

/* regime: "clearnet", "camonet", "expclearnet" or "expcamonet". */
GENLAW_API genlaw_status genlaw_classifier_train(const genlaw_dataset* ds, const char* regime, const char* config_json,
                                                 genlaw_classifier** out);
GENLAW_API genlaw_status genlaw_classifier_load(const char* path, genlaw_classifier** out);
GENLAW_API genlaw_status genlaw_classifier_save(const genlaw_classifier* clf, const char* path);
GENLAW_API genlaw_status genlaw_classifier_evaluate(const genlaw_classifier* clf, const genlaw_dataset* ds,
                                                    int image_type, int split, double* accuracy);
GENLAW_API void genlaw_classifier_free(genlaw_classifier* clf);

GENLAW_API genlaw_status genlaw_activations_extract(const genlaw_classifier* clf, const genlaw_dataset* ds,
                                                    genlaw_activations** out);
GENLAW_API genlaw_status genlaw_activations_load(const char* path, genlaw_activations** out);
GENLAW_API genlaw_status genlaw_activations_save(const genlaw_activations* acts, const char* path);
GENLAW_API genlaw_status genlaw_activations_shape(const genlaw_activations* acts, size_t* rows, int* cols);
/* Copies rows * cols values, row-major. */
GENLAW_API genlaw_status genlaw_activations_copy(const genlaw_activations* acts, double* out, size_t capacity);
GENLAW_API void genlaw_activations_free(genlaw_activations* acts);

/* counts: k*k row-major confusion counts (rows true, columns predicted).
   g_out receives k*k values. */
GENLAW_API genlaw_status genlaw_shepard_g(const int64_t* counts, int k, double alpha, double* g_out);

typedef struct genlaw_run_options {
    const char* config_path;
    const char* out_dir;
    int has_seed;
    uint64_t seed;
    int threads;
    int quiet;
    const char* dataset_dir;
    const char* regime;
    const char* model_dir;
    const char* activations_path;
    const char* method;
    const char* center;
    const char* metric;
    const char* classes; /* "0,1,7,8" */
    int export_surfaces; /* -1 keeps the config value */
    const char* analysis_dir;
} genlaw_run_options;

GENLAW_API void genlaw_run_options_init(genlaw_run_options* opts);
GENLAW_API genlaw_status genlaw_run_synth(const genlaw_run_options* opts);
GENLAW_API genlaw_status genlaw_run_train(const genlaw_run_options* opts);
GENLAW_API genlaw_status genlaw_run_analyze(const genlaw_run_options* opts);
GENLAW_API genlaw_status genlaw_run_plot(const genlaw_run_options* opts);
GENLAW_API genlaw_status genlaw_run_all(const genlaw_run_options* opts);

#ifdef __cplusplus
}
#endif

#endif /* GENLAW_H */
