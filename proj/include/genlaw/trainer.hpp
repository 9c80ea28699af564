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
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "genlaw/common.hpp"
#include "genlaw/synthdata.hpp"

namespace genlaw {

/// SGD-with-momentum schedule. The learning rate in epoch e of a phase is
/// initial_lr * lr_drop_factor^floor(e / lr_drop_period_epochs).
struct TrainConfig {
    std::vector<int> hidden_dims{64, 32};
    double initial_lr = 0.001;
    double lr_drop_factor = 0.05;
    int lr_drop_period_epochs = 10;
    double momentum = 0.9;
    int epochs = 100;
    int batch_size = 32;
    /// Validation accuracy on the phase's test split is logged every this many iterations.
    int validation_frequency = 10;
    bool shuffle_each_epoch = true;
    std::uint64_t seed = 1;

    void validate() const;
};

double learning_rate(const TrainConfig& config, int epoch);

enum class Regime { ClearNet, CamoNet, ExpClearNet, ExpCamoNet };

inline constexpr Regime kAllRegimes[] = {Regime::ClearNet, Regime::CamoNet, Regime::ExpClearNet, Regime::ExpCamoNet};

/// Ordered training phases: Clear; Camo; Camo then Clear; Clear then Camo.
std::vector<ImageType> regime_phases(Regime r);
std::string_view to_string(Regime r);
Regime parse_regime(std::string_view s);

/// Fully connected layer, y = W x + b.
struct Layer {
    Matrix weights;  // out x in
    Vector bias;
};

struct EpochRecord {
    int phase = 0;
    int epoch = 0;
    double learning_rate = 0.0;
    double mean_loss = 0.0;
    double train_accuracy = 0.0;
};

struct ValidationRecord {
    int phase = 0;
    int iteration = 0;
    double accuracy = 0.0;
};

/// Feed-forward ReLU network with a linear final layer (one unit per class).
struct Classifier {
    std::vector<Layer> layers;
    TrainConfig config;
    Regime regime = Regime::ClearNet;
    std::vector<EpochRecord> training_log;
    std::vector<ValidationRecord> validation_log;

    int input_dim() const { return static_cast<int>(layers.front().weights.cols()); }
    int num_classes() const { return static_cast<int>(layers.back().weights.rows()); }

    /// Pre-softmax outputs of the final layer, one column per input column.
    Matrix forward(const Matrix& inputs) const;
    Vector forward(const Vector& input) const;
};

/// Fan-in scaled uniform weights (bound sqrt(6 / fan_in)), zero biases.
Classifier init_classifier(int input_dim, int num_classes, const TrainConfig& config);

/// Runs every phase of the regime in order on that phase's Train split.
/// Weights carry over between phases; momentum buffers are reset.
Classifier train(const Dataset& dataset, Regime regime, const TrainConfig& config);

struct SampleFilter {
    std::optional<ImageType> image_type;
    std::optional<Split> split;

    bool accepts(ImageType t, Split s) const
    {
        return (!image_type || *image_type == t) && (!split || *split == s);
    }
};

/// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
    Matrix row_normalized;
    /// Rows without any samples; their row_normalized entries are zero.
    std::vector<int> empty_rows;

    static ConfusionMatrix from_counts(const Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>& counts);
    int size() const { return static_cast<int>(counts.rows()); }
};

struct Evaluation {
    double accuracy = 0.0;
    std::size_t num_samples = 0;
    ConfusionMatrix confusion;
};

/// Index of the largest entry; ties go to the lowest index.
int argmax_lowest(const Eigen::Ref<const Vector>& v);

Evaluation evaluate(const Classifier& classifier, const Dataset& dataset, SampleFilter filter = {});

/// Same statistics computed from already extracted activations.
Evaluation evaluate(const ActivationSet& activations);

ActivationSet extract_activations(const Classifier& classifier, const Dataset& dataset, SampleFilter filter = {});

/// JSON persistence: format_version, regime, config echo, layer dims, row-major weights.
nlohmann::json classifier_to_json(const Classifier& c);
Classifier classifier_from_json(const nlohmann::json& j);
nlohmann::json train_config_to_json(const TrainConfig& c);
TrainConfig train_config_from_json(const nlohmann::json& j);

}  // namespace genlaw
