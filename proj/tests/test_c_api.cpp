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
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "genlaw/genlaw.h"

namespace {

const char* kConfig = R"({"task": {"num_classes": 4, "feature_dim": 8, "samples_per_class_clear": 20,
  "samples_per_class_camo": 20, "seed": 2}, "train": {"epochs": 10, "initial_lr": 0.01, "seed": 2}})";

std::string tmp(const char* name)
{
    return (std::filesystem::temp_directory_path() / ("genlaw-capi-" + std::to_string(::getpid()) + "-" + name)).string();
}

}  // namespace

TEST_CASE("version and status codes")
{
    CHECK(std::strcmp(genlaw_version(), "1.0.0") == 0);
    CHECK(GENLAW_ERR_CONFIG == 2);
    CHECK(GENLAW_ERR_DATA == 3);
    CHECK(GENLAW_ERR_NUMERICAL == 4);
}

TEST_CASE("dataset, classifier and activation handles")
{
    genlaw_dataset* ds = nullptr;
    REQUIRE(genlaw_dataset_generate(kConfig, &ds) == GENLAW_OK);
    size_t n = 0;
    int k = 0, dim = 0;
    REQUIRE(genlaw_dataset_shape(ds, &n, &k, &dim) == GENLAW_OK);
    CHECK(n == 160);
    CHECK(k == 4);
    CHECK(dim == 8);

    const std::string ds_path = tmp("dataset.csv");
    REQUIRE(genlaw_dataset_save(ds, ds_path.c_str()) == GENLAW_OK);
    genlaw_dataset* loaded = nullptr;
    REQUIRE(genlaw_dataset_load(ds_path.c_str(), &loaded) == GENLAW_OK);

    genlaw_classifier* clf = nullptr;
    REQUIRE(genlaw_classifier_train(ds, "clearnet", kConfig, &clf) == GENLAW_OK);
    double clear = 0.0, camo = 0.0, loaded_clear = 0.0;
    REQUIRE(genlaw_classifier_evaluate(clf, ds, GENLAW_CLEAR, GENLAW_TEST, &clear) == GENLAW_OK);
    REQUIRE(genlaw_classifier_evaluate(clf, ds, GENLAW_CAMO, GENLAW_TEST, &camo) == GENLAW_OK);
    REQUIRE(genlaw_classifier_evaluate(clf, loaded, GENLAW_CLEAR, GENLAW_TEST, &loaded_clear) == GENLAW_OK);
    CHECK(clear > camo);
    CHECK(clear == loaded_clear);
    CHECK(genlaw_classifier_evaluate(clf, ds, 7, GENLAW_ANY, &clear) == GENLAW_ERR_CONFIG);

    const std::string model_path = tmp("model.json");
    REQUIRE(genlaw_classifier_save(clf, model_path.c_str()) == GENLAW_OK);
    genlaw_classifier* clf2 = nullptr;
    REQUIRE(genlaw_classifier_load(model_path.c_str(), &clf2) == GENLAW_OK);

    genlaw_activations* acts = nullptr;
    REQUIRE(genlaw_activations_extract(clf2, ds, &acts) == GENLAW_OK);
    size_t rows = 0;
    int cols = 0;
    REQUIRE(genlaw_activations_shape(acts, &rows, &cols) == GENLAW_OK);
    CHECK(rows == 160);
    CHECK(cols == 4);
    std::vector<double> buf(rows * static_cast<size_t>(cols));
    CHECK(genlaw_activations_copy(acts, buf.data(), 3) == GENLAW_ERR_CONFIG);
    REQUIRE(genlaw_activations_copy(acts, buf.data(), buf.size()) == GENLAW_OK);
    for (double v : buf)
        CHECK(std::isfinite(v));

    const std::string acts_path = tmp("acts.csv");
    REQUIRE(genlaw_activations_save(acts, acts_path.c_str()) == GENLAW_OK);
    genlaw_activations* acts2 = nullptr;
    REQUIRE(genlaw_activations_load(acts_path.c_str(), &acts2) == GENLAW_OK);
    std::vector<double> buf2(buf.size());
    REQUIRE(genlaw_activations_copy(acts2, buf2.data(), buf2.size()) == GENLAW_OK);
    CHECK(buf == buf2);

    genlaw_activations_free(acts2);
    genlaw_activations_free(acts);
    genlaw_classifier_free(clf2);
    genlaw_classifier_free(clf);
    genlaw_dataset_free(loaded);
    genlaw_dataset_free(ds);
    std::remove(ds_path.c_str());
    std::remove(model_path.c_str());
    std::remove(acts_path.c_str());
}

TEST_CASE("errors carry a status and a thread-local message")
{
    genlaw_dataset* ds = nullptr;
    CHECK(genlaw_dataset_generate("{\"task\": [}", &ds) == GENLAW_ERR_CONFIG);
    CHECK(std::strlen(genlaw_last_error()) > 0);
    CHECK(ds == nullptr);
    CHECK(genlaw_dataset_load("/nonexistent/dataset.csv", &ds) == GENLAW_ERR_DATA);
    CHECK(genlaw_dataset_generate(nullptr, nullptr) == GENLAW_ERR_CONFIG);
    REQUIRE(genlaw_dataset_generate(kConfig, &ds) == GENLAW_OK);
    CHECK(std::strlen(genlaw_last_error()) == 0);
    genlaw_classifier* clf = nullptr;
    CHECK(genlaw_classifier_train(ds, "fastnet", nullptr, &clf) == GENLAW_ERR_CONFIG);
    CHECK(std::string(genlaw_last_error()).find("fastnet") != std::string::npos);
    genlaw_dataset_free(ds);
    genlaw_dataset_free(nullptr);
}

TEST_CASE("shepard g through the C interface")
{
    const int64_t counts[9] = {8, 1, 1, 2, 5, 3, 0, 0, 10};
    double g[9];
    REQUIRE(genlaw_shepard_g(counts, 3, 0.0, g) == GENLAW_OK);
    CHECK(std::abs(g[1] - std::sqrt(0.05)) < 1e-9);
    CHECK(g[1] == g[3]);
    CHECK(g[0] == doctest::Approx(1.0));
    CHECK(genlaw_shepard_g(counts, 0, 0.0, g) == GENLAW_ERR_CONFIG);
}

TEST_CASE("pipeline stages run through the C interface")
{
    const std::string dir = tmp("run");
    const std::string cfg_path = tmp("cfg.json");
    {
        FILE* f = std::fopen(cfg_path.c_str(), "w");
        REQUIRE(f);
        std::fputs(kConfig, f);
        std::fclose(f);
    }
    genlaw_run_options o;
    genlaw_run_options_init(&o);
    CHECK(o.threads == 1);
    CHECK(o.export_surfaces == -1);
    const std::string data = dir + "/data";
    o.config_path = cfg_path.c_str();
    o.out_dir = data.c_str();
    REQUIRE(genlaw_run_synth(&o) == GENLAW_OK);
    CHECK(std::filesystem::exists(data + "/manifest.json"));

    const std::string model = dir + "/model";
    o.out_dir = model.c_str();
    o.dataset_dir = data.c_str();
    o.regime = "expcamonet";
    REQUIRE(genlaw_run_train(&o) == GENLAW_OK);

    o.regime = "nonsense";
    CHECK(genlaw_run_train(&o) == GENLAW_ERR_CONFIG);

    genlaw_run_options none;
    genlaw_run_options_init(&none);
    CHECK(genlaw_run_plot(&none) == GENLAW_ERR_CONFIG);
    CHECK(genlaw_run_synth(nullptr) == GENLAW_ERR_CONFIG);
    std::filesystem::remove_all(dir);
    std::remove(cfg_path.c_str());
}
