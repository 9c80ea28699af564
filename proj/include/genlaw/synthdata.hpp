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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "genlaw/common.hpp"

namespace genlaw {

/// Fractions of camouflaged samples per strategy.
struct CamoMix {
    double background_matching = 0.75;
    double mimicry = 0.15;
    double other = 0.10;
};

/// Parameters of the synthetic clear/camouflage classification task.
///
/// Class prototypes and one background point are drawn uniformly in the
/// unit hypercube. Clear samples are isotropic Gaussian around their
/// prototype. Camouflaged samples move their generative center a fraction
/// `camo_shift` of the way toward the background point (background
/// matching) or toward another class prototype (mimicry), and use a wider
/// noise scale.
struct TaskConfig {
    int num_classes = 15;
    int feature_dim = 32;
    int samples_per_class_clear = 60;
    int samples_per_class_camo = 60;
    CamoMix camo_mix;
    double camo_shift = 0.55;
    double clear_spread = 0.06;
    double camo_spread_factor = 1.5;
    std::uint64_t seed = 1;

    /// Throws Error(Config) describing the first violated constraint.
    void validate() const;
};

enum class CamoStrategy { None, BackgroundMatching, Mimicry, Other };

struct LabeledSample {
    Vector features;
    int class_id = 0;
    ImageType image_type = ImageType::Clear;
    Split split = Split::Train;
    std::int64_t sample_id = 0;
    /// Generative bookkeeping; not part of the exported CSV.
    CamoStrategy strategy = CamoStrategy::None;
    int mimic_class = -1;
};

struct Dataset {
    std::vector<LabeledSample> samples;
    TaskConfig config;
    std::vector<std::string> class_names;
    /// num_classes x feature_dim; empty for datasets loaded from CSV.
    Matrix prototypes;
    Vector background;

    int num_classes() const { return static_cast<int>(class_names.size()); }
    int feature_dim() const;
};

/// Number of samples assigned to Train out of n (70%, rounded up).
constexpr int train_count(int n) { return (7 * n + 9) / 10; }

std::string default_class_name(int class_id);

Dataset generate_task(const TaskConfig& config);

/// Center of the Gaussian a sample was drawn from. Requires prototypes.
Vector generative_center(const Dataset& ds, const LabeledSample& s);

/// Dataset CSV: sample_id,class_id,class_name,image_type,split,f00..f{d-1}
void write_dataset_csv(const Dataset& ds, std::ostream& out);
void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path);
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);

/// Final-layer activations with per-row metadata.
struct ActivationSet {
    Matrix activations;  // n x k, pre-softmax
    std::vector<int> labels;
    std::vector<ImageType> image_types;
    std::vector<Split> splits;
    std::vector<std::int64_t> sample_ids;
    std::vector<std::string> class_names;  // per row

    std::size_t size() const { return labels.size(); }
    int num_classes() const { return static_cast<int>(activations.cols()); }

    /// Row indices matching the optional filters, in row order.
    std::vector<std::size_t> rows_where(std::optional<ImageType> type, std::optional<Split> split) const;
    ActivationSet subset(const std::vector<std::size_t>& rows) const;

    friend bool operator==(const ActivationSet&, const ActivationSet&);
};

/// Activation CSV: sample_id,class_id,class_name,image_type,split,a00..a{k-1}
void export_activations(const ActivationSet& set, std::ostream& out);
void export_activations(const ActivationSet& set, const std::filesystem::path& path);
ActivationSet ingest_activations(std::istream& in);
ActivationSet ingest_activations(const std::filesystem::path& path);

}  // namespace genlaw
