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
#include "genlaw/genlaw.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "genlaw/pipeline.hpp"

struct genlaw_dataset {
    genlaw::Dataset ds;
};
struct genlaw_classifier {
    genlaw::Classifier clf;
};
struct genlaw_activations {
    genlaw::ActivationSet acts;
};

namespace {

thread_local std::string last_error;

template <typename F>
genlaw_status guarded(F&& f)
{
    last_error.clear();
    try {
        f();
        return GENLAW_OK;
    } catch (const genlaw::Error& e) {
        last_error = e.what();
        return static_cast<genlaw_status>(static_cast<int>(e.kind()));
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown error";
    }
    return GENLAW_ERR_INTERNAL;
}

void require(const void* p, const char* what)
{
    if (!p)
        genlaw::config_error(std::string(what) + " must not be NULL");
}

genlaw::PipelineConfig config_of(const char* json)
{
    if (!json || !*json)
        return {};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
        genlaw::config_error(std::string("config: ") + e.what());
    }
    return genlaw::parse_config(j);
}

std::optional<genlaw::ImageType> type_filter(int v)
{
    if (v == GENLAW_ANY)
        return std::nullopt;
    if (v == GENLAW_CLEAR)
        return genlaw::ImageType::Clear;
    if (v == GENLAW_CAMO)
        return genlaw::ImageType::Camo;
    genlaw::config_error("invalid image_type filter " + std::to_string(v));
}

std::optional<genlaw::Split> split_filter(int v)
{
    if (v == GENLAW_ANY)
        return std::nullopt;
    if (v == GENLAW_TRAIN)
        return genlaw::Split::Train;
    if (v == GENLAW_TEST)
        return genlaw::Split::Test;
    genlaw::config_error("invalid split filter " + std::to_string(v));
}

genlaw::RunOptions run_options(const genlaw_run_options* o)
{
    require(o, "options");
    genlaw::RunOptions r;
    if (o->config_path)
        r.config_path = o->config_path;
    if (o->out_dir)
        r.out_dir = o->out_dir;
    if (o->has_seed)
        r.seed = o->seed;
    r.threads = o->threads;
    r.quiet = o->quiet != 0;
    if (o->dataset_dir)
        r.dataset_dir = o->dataset_dir;
    if (o->regime)
        r.regime = o->regime;
    if (o->model_dir)
        r.model_dir = o->model_dir;
    if (o->activations_path)
        r.activations_path = o->activations_path;
    if (o->method)
        r.method = o->method;
    if (o->center)
        r.center = o->center;
    if (o->metric)
        r.metric = o->metric;
    if (o->classes)
        r.classes = genlaw::parse_class_list(o->classes);
    if (o->export_surfaces >= 0)
        r.export_surfaces = o->export_surfaces != 0;
    if (o->analysis_dir)
        r.analysis_dir = o->analysis_dir;
    return r;
}

}  // namespace

extern "C" {

const char* genlaw_version(void) { return genlaw::kToolVersion; }

const char* genlaw_last_error(void) { return last_error.c_str(); }

genlaw_status genlaw_dataset_generate(const char* config_json, genlaw_dataset** out)
{
    return guarded([&] {
        require(out, "out");
        *out = new genlaw_dataset{genlaw::generate_task(config_of(config_json).task)};
    });
}

genlaw_status genlaw_dataset_load(const char* path, genlaw_dataset** out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new genlaw_dataset{genlaw::read_dataset_csv(std::filesystem::path(path))};
    });
}

genlaw_status genlaw_dataset_save(const genlaw_dataset* ds, const char* path)
{
    return guarded([&] {
        require(ds, "dataset");
        require(path, "path");
        genlaw::write_dataset_csv(ds->ds, std::filesystem::path(path));
    });
}

genlaw_status genlaw_dataset_shape(const genlaw_dataset* ds, size_t* num_samples, int* num_classes, int* feature_dim)
{
    return guarded([&] {
        require(ds, "dataset");
        if (num_samples)
            *num_samples = ds->ds.samples.size();
        if (num_classes)
            *num_classes = ds->ds.num_classes();
        if (feature_dim)
            *feature_dim = ds->ds.feature_dim();
    });
}

void genlaw_dataset_free(genlaw_dataset* ds) { delete ds; }

genlaw_status genlaw_classifier_train(const genlaw_dataset* ds, const char* regime, const char* config_json,
                                      genlaw_classifier** out)
{
    return guarded([&] {
        require(ds, "dataset");
        require(regime, "regime");
        require(out, "out");
        const auto cfg = config_of(config_json);
        *out = new genlaw_classifier{genlaw::train(ds->ds, genlaw::parse_regime(regime), cfg.train)};
    });
}

genlaw_status genlaw_classifier_load(const char* path, genlaw_classifier** out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        std::ifstream in(path, std::ios::binary);
        if (!in)
            genlaw::data_error(std::string("cannot open ") + path);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            genlaw::data_error(std::string(path) + ": " + e.what());
        }
        *out = new genlaw_classifier{genlaw::classifier_from_json(j)};
    });
}

genlaw_status genlaw_classifier_save(const genlaw_classifier* clf, const char* path)
{
    return guarded([&] {
        require(clf, "classifier");
        require(path, "path");
        std::ofstream out(path, std::ios::binary);
        if (!out)
            genlaw::data_error(std::string("cannot write ") + path);
        out << genlaw::classifier_to_json(clf->clf).dump(2) << '\n';
    });
}

genlaw_status genlaw_classifier_evaluate(const genlaw_classifier* clf, const genlaw_dataset* ds, int image_type,
                                         int split, double* accuracy)
{
    return guarded([&] {
        require(clf, "classifier");
        require(ds, "dataset");
        require(accuracy, "accuracy");
        *accuracy = genlaw::evaluate(clf->clf, ds->ds, {type_filter(image_type), split_filter(split)}).accuracy;
    });
}

void genlaw_classifier_free(genlaw_classifier* clf) { delete clf; }

genlaw_status genlaw_activations_extract(const genlaw_classifier* clf, const genlaw_dataset* ds,
                                         genlaw_activations** out)
{
    return guarded([&] {
        require(clf, "classifier");
        require(ds, "dataset");
        require(out, "out");
        if (clf->clf.input_dim() != ds->ds.feature_dim())
            genlaw::data_error("classifier expects " + std::to_string(clf->clf.input_dim()) + " features, dataset has " +
                               std::to_string(ds->ds.feature_dim()));
        *out = new genlaw_activations{genlaw::extract_activations(clf->clf, ds->ds)};
    });
}

genlaw_status genlaw_activations_load(const char* path, genlaw_activations** out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new genlaw_activations{genlaw::ingest_activations(std::filesystem::path(path))};
    });
}

genlaw_status genlaw_activations_save(const genlaw_activations* acts, const char* path)
{
    return guarded([&] {
        require(acts, "activations");
        require(path, "path");
        genlaw::export_activations(acts->acts, std::filesystem::path(path));
    });
}

genlaw_status genlaw_activations_shape(const genlaw_activations* acts, size_t* rows, int* cols)
{
    return guarded([&] {
        require(acts, "activations");
        if (rows)
            *rows = acts->acts.size();
        if (cols)
            *cols = acts->acts.num_classes();
    });
}

genlaw_status genlaw_activations_copy(const genlaw_activations* acts, double* out, size_t capacity)
{
    return guarded([&] {
        require(acts, "activations");
        require(out, "out");
        const auto& m = acts->acts.activations;
        if (capacity < static_cast<size_t>(m.size()))
            genlaw::config_error("buffer holds " + std::to_string(capacity) + " values, need " + std::to_string(m.size()));
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(out, m.rows(), m.cols()) = m;
    });
}

void genlaw_activations_free(genlaw_activations* acts) { delete acts; }

genlaw_status genlaw_shepard_g(const int64_t* counts, int k, double alpha, double* g_out)
{
    return guarded([&] {
        require(counts, "counts");
        require(g_out, "g_out");
        if (k < 1)
            genlaw::config_error("k must be positive");
        Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> c(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                c(i, j) = counts[i * k + j];
        const auto g = genlaw::shepard_g(genlaw::ConfusionMatrix::from_counts(c), alpha);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                g_out[i * k + j] = g.g(i, j);
    });
}

void genlaw_run_options_init(genlaw_run_options* opts)
{
    if (!opts)
        return;
    std::memset(opts, 0, sizeof(*opts));
    opts->threads = 1;
    opts->quiet = 1;
    opts->export_surfaces = -1;
}

genlaw_status genlaw_run_synth(const genlaw_run_options* opts)
{
    return guarded([&] { genlaw::run_synth(run_options(opts)); });
}

genlaw_status genlaw_run_train(const genlaw_run_options* opts)
{
    return guarded([&] { genlaw::run_train(run_options(opts)); });
}

genlaw_status genlaw_run_analyze(const genlaw_run_options* opts)
{
    return guarded([&] { genlaw::run_analyze(run_options(opts)); });
}

genlaw_status genlaw_run_plot(const genlaw_run_options* opts)
{
    return guarded([&] { genlaw::run_plot(run_options(opts)); });
}

genlaw_status genlaw_run_all(const genlaw_run_options* opts)
{
    return guarded([&] { genlaw::run_all(run_options(opts)); });
}

}  // extern "C"
